#pragma once

#include <cstddef>
#include <vector>

#include "fracspec/ifs.hpp"
#include "fracspec/linalg.hpp"

namespace fracspec {

/// Polygonal Jordan curve rescaled to perimeter 2 pi. Edge j joins vertex j
/// to vertex j+1 (cyclically) and corresponds to the unit-circle arc
/// [theta_j, theta_j + |L_j|].
class Polygon {
 public:
  const std::vector<Complex>& vertices() const { return vertices_; }
  const std::vector<double>& edge_lengths() const { return lengths_; }
  const std::vector<double>& angles() const { return angles_; }
  std::size_t size() const { return vertices_.size(); }

  /// Factor applied to the raw vertices during normalization.
  double scale() const { return scale_; }

  /// Arc start angle; angle(size()) == 2 pi.
  double arc_start(std::size_t j) const;
  double arc_end(std::size_t j) const { return arc_start(j) + lengths_[j]; }

 private:
  friend Polygon build_polygon(const std::vector<Complex>& raw_vertices);

  std::vector<Complex> vertices_;
  std::vector<double> lengths_;
  std::vector<double> angles_;
  double scale_ = 1.0;
};

/// Scales `raw_vertices` about the origin to perimeter 2 pi.
/// DomainError: fewer than three vertices.
/// GeometryError: repeated vertex, clockwise orientation, or an edge >= pi
/// after normalization.
Polygon build_polygon(const std::vector<Complex>& raw_vertices);

/// Per-arc data of a chart kappa_w on one arc A_wj.
struct ChartArc {
  Complex start;        // p_wj
  Complex inv_chord;    // delta_wj = (p_w,j+1 - p_wj)^{-1}
  double half_tangent;  // tau_j = tan(|L_j| / 2)
  double theta;         // theta_j
  double length;        // |L_j|
};

/// Piecewise Moebius homeomorphism from the circle of radius c^m onto the
/// polygon image F_w(E_0). Arc M wraps to vertex 1 with
/// tau_M = tan((2 pi - theta_M) / 2).
class MobiusChart {
 public:
  MobiusChart(std::vector<ChartArc> arcs, double radius, std::size_t level);

  const std::vector<ChartArc>& arcs() const { return arcs_; }
  std::size_t size() const { return arcs_.size(); }
  double radius() const { return radius_; }
  std::size_t level() const { return level_; }

  /// kappa on arc j (0-based) at relative position t in [0, 1]:
  /// p_wj + (p_w,j+1 - p_wj) tan(t |L_j| / 2) / tan(|L_j| / 2).
  Complex eval(std::size_t j, double t) const;

  /// Same map evaluated through the Moebius quotient at z = c^m e^{i(theta_j + t|L_j|)}.
  Complex eval_mobius(std::size_t j, Complex z) const;

  /// Evaluate at a point of the circle C_m; locates the arc from arg z.
  Complex eval_at(Complex z) const;

  /// Closed form of z d/dz kappa on the open arc j, t in (0, 1).
  Complex radial_derivative(std::size_t j, double t) const;

  /// Upper bound 2 |chord_j| / (tau_j k_j) for |R kappa| on arc j, with
  /// k_j = inf_t |1 + e^{i t |L_j|}|^2 = 4 cos^2(|L_j| / 2).
  double radial_derivative_bound(std::size_t j) const;

 private:
  std::vector<ChartArc> arcs_;
  double radius_;
  std::size_t level_;
};

/// Chart for the word w: p_wj = F_w(p_j).
/// GeometryError if two consecutive vertex images coincide.
MobiusChart mobius_chart(const Polygon& poly, const IfsSystem& ifs, const Word& word);

/// Chart of the bare polygon on the unit circle (empty word, any system).
MobiusChart mobius_chart(const Polygon& poly);

/// Free-function forms used by the verification tables.
Complex eval_kappa(const MobiusChart& chart, std::size_t j, double t);
Complex radial_derivative_kappa(const MobiusChart& chart, std::size_t j, double t);

/// max_j |kappa_j(1) - kappa_{j+1 mod M}(0)|.
double continuity_defect(const MobiusChart& chart);

}  // namespace fracspec
