#pragma once

#include <cstddef>
#include <vector>

namespace fracspec {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Nodes and weights of the q-point rule, computed by Newton iteration on
/// the Legendre recurrence. Rules are cached per order; the returned
/// reference stays valid for the lifetime of the program.
const GaussLegendreRule& gauss_legendre(std::size_t q);

/// Composite rule on [a, b]: `panels` equal sub-intervals, q points each.
/// Node/weight pairs are appended to the output vectors.
void composite_gauss_legendre(double a, double b, std::size_t panels,
                              std::size_t q, std::vector<double>& nodes,
                              std::vector<double>& weights);

}  // namespace fracspec
