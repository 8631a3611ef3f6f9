#include "fracspec/charts.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fracspec/errors.hpp"

namespace fracspec {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr Complex kI(0.0, 1.0);
}  // namespace

double Polygon::arc_start(std::size_t j) const {
  return j < angles_.size() ? angles_[j] : kTwoPi;
}

Polygon build_polygon(const std::vector<Complex>& raw_vertices) {
  const std::size_t m = raw_vertices.size();
  if (m <= 2) throw DomainError("build_polygon: need more than two vertices");
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (raw_vertices[i] == raw_vertices[j]) {
        throw GeometryError("build_polygon: vertices " + std::to_string(i + 1) + " and " +
                            std::to_string(j + 1) + " coincide");
      }
    }
  }
  double signed_area = 0.0;
  double perimeter = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const Complex& a = raw_vertices[i];
    const Complex& b = raw_vertices[(i + 1) % m];
    signed_area += 0.5 * (a.real() * b.imag() - b.real() * a.imag());
    perimeter += std::abs(b - a);
  }
  if (!(signed_area > 0.0)) {
    throw GeometryError("build_polygon: vertices must be listed counterclockwise");
  }

  Polygon poly;
  poly.scale_ = kTwoPi / perimeter;
  poly.vertices_.reserve(m);
  for (const Complex& v : raw_vertices) poly.vertices_.push_back(poly.scale_ * v);

  double theta = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double len = std::abs(poly.vertices_[(i + 1) % m] - poly.vertices_[i]);
    if (!(len < std::numbers::pi)) {
      throw GeometryError("build_polygon: edge " + std::to_string(i + 1) +
                          " has normalized length >= pi");
    }
    poly.lengths_.push_back(len);
    poly.angles_.push_back(theta);
    theta += len;
  }
  return poly;
}

MobiusChart::MobiusChart(std::vector<ChartArc> arcs, double radius, std::size_t level)
    : arcs_(std::move(arcs)), radius_(radius), level_(level) {
  if (arcs_.size() < 3) throw DomainError("MobiusChart: need at least three arcs");
  for (const ChartArc& arc : arcs_) {
    if (!(arc.half_tangent > 0.0) || !std::isfinite(arc.half_tangent)) {
      throw GeometryError("MobiusChart: arc half-angle tangent must be positive and finite");
    }
  }
}

Complex MobiusChart::eval(std::size_t j, double t) const {
  if (j >= arcs_.size()) throw DomainError("eval_kappa: arc index out of range");
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("eval_kappa: t must lie in [0, 1]");
  const ChartArc& arc = arcs_[j];
  return arc.start + std::tan(0.5 * t * arc.length) / arc.half_tangent / arc.inv_chord;
}

Complex MobiusChart::eval_mobius(std::size_t j, Complex z) const {
  if (j >= arcs_.size()) throw DomainError("eval_mobius: arc index out of range");
  const ChartArc& arc = arcs_[j];
  const Complex shift = kI / (arc.inv_chord * arc.half_tangent);
  const Complex anchor = radius_ * std::polar(1.0, arc.theta);
  return ((arc.start - shift) * z + anchor * (arc.start + shift)) / (z + anchor);
}

Complex MobiusChart::eval_at(Complex z) const {
  double theta = std::arg(z);
  if (theta < 0.0) theta += kTwoPi;
  std::size_t j = arcs_.size() - 1;
  for (std::size_t k = 0; k + 1 < arcs_.size(); ++k) {
    if (theta < arcs_[k + 1].theta) {
      j = k;
      break;
    }
  }
  const ChartArc& arc = arcs_[j];
  const double t = std::clamp((theta - arc.theta) / arc.length, 0.0, 1.0);
  return eval(j, t);
}

Complex MobiusChart::radial_derivative(std::size_t j, double t) const {
  if (j >= arcs_.size()) throw DomainError("radial_derivative_kappa: arc index out of range");
  if (!(t > 0.0 && t < 1.0)) {
    throw DomainError("radial_derivative_kappa: t must lie strictly inside (0, 1)");
  }
  const ChartArc& arc = arcs_[j];
  const Complex e = std::polar(1.0, t * arc.length);
  return (-2.0 * kI / (arc.inv_chord * arc.half_tangent)) * e / ((1.0 + e) * (1.0 + e));
}

double MobiusChart::radial_derivative_bound(std::size_t j) const {
  const ChartArc& arc = arcs_.at(j);
  const double c = std::cos(0.5 * arc.length);
  const double k = 4.0 * c * c;
  return 2.0 / (std::abs(arc.inv_chord) * arc.half_tangent * k);
}

MobiusChart mobius_chart(const Polygon& poly, const IfsSystem& ifs, const Word& word) {
  const Similarity f = compose_word(ifs, word);
  const std::size_t m = poly.size();
  std::vector<ChartArc> arcs;
  arcs.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    const Complex start = f(poly.vertices()[j]);
    const Complex end = f(poly.vertices()[(j + 1) % m]);
    if (end == start) throw GeometryError("mobius_chart: zero chord on arc " + std::to_string(j + 1));
    const double theta = poly.arc_start(j);
    // The wrap-around arc uses 2 pi - theta_M so every tau_j is tan(|L_j| / 2).
    const double width = poly.arc_start(j + 1) - theta;
    arcs.push_back({start, 1.0 / (end - start), std::tan(0.5 * width), theta, width});
  }
  return MobiusChart(std::move(arcs), std::pow(ifs.ratio(), static_cast<double>(word.level())),
                     word.level());
}

MobiusChart mobius_chart(const Polygon& poly) {
  const IfsSystem trivial({Similarity(0.5, 0.0)});
  return mobius_chart(poly, trivial, Word{});
}

Complex eval_kappa(const MobiusChart& chart, std::size_t j, double t) { return chart.eval(j, t); }

Complex radial_derivative_kappa(const MobiusChart& chart, std::size_t j, double t) {
  return chart.radial_derivative(j, t);
}

double continuity_defect(const MobiusChart& chart) {
  double defect = 0.0;
  const std::size_t m = chart.size();
  for (std::size_t j = 0; j < m; ++j) {
    defect = std::max(defect, std::abs(chart.eval(j, 1.0) - chart.eval((j + 1) % m, 0.0)));
  }
  return defect;
}

}  // namespace fracspec
