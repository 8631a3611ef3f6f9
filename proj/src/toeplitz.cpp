#include "fracspec/toeplitz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "fracspec/errors.hpp"
#include "fracspec/parallel.hpp"
#include "fracspec/quadrature.hpp"
#include "fracspec/summation.hpp"

namespace fracspec {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex ipow(Complex z, int k) {
  Complex r(1.0, 0.0);
  for (int i = 0; i < k; ++i) r *= z;
  return r;
}
}  // namespace

BoundaryCurve::BoundaryCurve(std::vector<double> starts, std::vector<double> lengths,
                             ArcFunction value, ArcFunction radial_derivative)
    : starts_(std::move(starts)),
      lengths_(std::move(lengths)),
      value_(std::move(value)),
      radial_(std::move(radial_derivative)) {
  if (starts_.empty() || starts_.size() != lengths_.size()) {
    throw DomainError("BoundaryCurve: arc starts and lengths must be non-empty and match");
  }
}

BoundaryCurve BoundaryCurve::from_chart(const MobiusChart& chart) {
  std::vector<double> starts;
  std::vector<double> lengths;
  for (const ChartArc& arc : chart.arcs()) {
    starts.push_back(arc.theta);
    lengths.push_back(arc.length);
  }
  return BoundaryCurve(
      std::move(starts), std::move(lengths),
      [chart](std::size_t j, double t) { return chart.eval(j, t); },
      [chart](std::size_t j, double t) { return chart.radial_derivative(j, t); });
}

BoundaryCurve BoundaryCurve::identity(double radius) {
  auto circle = [radius](std::size_t, double t) { return radius * std::polar(1.0, kTwoPi * t); };
  return BoundaryCurve({0.0}, {kTwoPi}, circle, circle);
}

Complex SymbolCoefficients::operator()(int n) const {
  if (n < -harmonics || n > harmonics) throw DomainError("SymbolCoefficients: harmonic out of range");
  return values[static_cast<std::size_t>(n + harmonics)];
}

SymbolCoefficients fourier_coefficients(const BoundaryCurve& curve,
                                        const BoundaryCurve::ArcFunction& symbol, int harmonics,
                                        const QuadratureOptions& options) {
  if (harmonics < 0) throw DomainError("fourier_coefficients: harmonics must be >= 0");
  if (static_cast<std::size_t>(harmonics) > options.max_harmonics) {
    throw ResourceError("fourier_coefficients: " + std::to_string(harmonics) +
                        " harmonics exceed budget " + std::to_string(options.max_harmonics));
  }
  if (options.order < 4) throw DomainError("fourier_coefficients: quadrature order must be >= 4");

  const std::size_t count = 2 * static_cast<std::size_t>(harmonics) + 1;
  std::vector<CompensatedSum<Complex>> acc(count);
  std::vector<double> nodes;
  std::vector<double> weights;
  for (std::size_t j = 0; j < curve.arc_count(); ++j) {
    const double length = curve.length(j);
    const auto panels =
        1 + static_cast<std::size_t>(std::floor(harmonics * length / (2.0 * kTwoPi)));
    nodes.clear();
    weights.clear();
    composite_gauss_legendre(0.0, 1.0, panels, options.order, nodes, weights);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const double theta = curve.start(j) + nodes[i] * length;
      const Complex u = symbol(j, nodes[i]) * (weights[i] * length / kTwoPi);
      // e^{-i n theta} from n = -H upwards by repeated multiplication.
      const Complex step = std::polar(1.0, -theta);
      Complex phase = std::polar(1.0, harmonics * theta);
      for (std::size_t k = 0; k < count; ++k) {
        acc[k] += u * phase;
        phase *= step;
      }
    }
  }
  SymbolCoefficients out;
  out.harmonics = harmonics;
  out.values.reserve(count);
  for (const auto& a : acc) out.values.push_back(a.value());
  return out;
}

SymbolCoefficients fourier_coefficients(const BoundaryCurve& curve, const HardyPolynomial& p,
                                        int harmonics, const QuadratureOptions& options) {
  auto symbol = [&curve, &p](std::size_t j, double t) {
    const Complex k = curve.value(j, t);
    const Complex kbar = std::conj(k);
    Complex v(0.0, 0.0);
    for (const HardyMonomial& term : p) v += term.coeff * ipow(k, term.a) * ipow(kbar, term.b);
    return v;
  };
  return fourier_coefficients(curve, symbol, harmonics, options);
}

SymbolCoefficients commutator_symbol(const BoundaryCurve& curve, int a, int b, int harmonics,
                                     const QuadratureOptions& options) {
  if (a < 0 || b < 0) throw DomainError("commutator_symbol: powers must be non-negative");
  if (a == 0 && b == 0) {
    SymbolCoefficients zero;
    zero.harmonics = harmonics;
    zero.values.assign(2 * static_cast<std::size_t>(harmonics) + 1, Complex(0.0, 0.0));
    zero.source = SymbolCoefficients::Source::ClosedForm;
    return zero;
  }
  auto symbol = [&curve, a, b](std::size_t j, double t) {
    const Complex k = curve.value(j, t);
    const Complex kbar = std::conj(k);
    const Complex rk = curve.radial_derivative(j, t);
    Complex v(0.0, 0.0);
    if (a > 0) v += static_cast<double>(a) * rk * ipow(k, a - 1) * ipow(kbar, b);
    if (b > 0) v -= static_cast<double>(b) * ipow(k, a) * std::conj(rk) * ipow(kbar, b - 1);
    return v;
  };
  return fourier_coefficients(curve, symbol, harmonics, options);
}

HardyTruncation::HardyTruncation(std::size_t level_, double radius_, std::size_t cutoff_)
    : level(level_), radius(radius_), cutoff(cutoff_) {
  if (cutoff < 1) throw DomainError("HardyTruncation: cutoff must be >= 1");
  if (!(radius > 0.0 && radius <= 1.0)) throw DomainError("HardyTruncation: radius must lie in (0, 1]");
}

Complex HardyTruncation::basis(std::size_t j, Complex z) const {
  return ipow(z / radius, static_cast<int>(j));
}

ToeplitzTruncation toeplitz_matrix(const SymbolCoefficients& coeffs, const HardyTruncation& trunc,
                                   std::string symbol_id) {
  const auto k_max = static_cast<int>(trunc.cutoff);
  if (coeffs.harmonics < k_max) {
    throw DomainError("toeplitz_matrix: need at least " + std::to_string(k_max) +
                      " harmonics, got " + std::to_string(coeffs.harmonics));
  }
  ToeplitzTruncation out;
  out.matrix.resize(k_max + 1, k_max + 1);
  for (int j = 0; j <= k_max; ++j) {
    for (int k = 0; k <= k_max; ++k) out.matrix(k, j) = coeffs(k - j);
  }
  out.symbol_id = std::move(symbol_id);
  out.level = trunc.level;
  out.cutoff = trunc.cutoff;
  return out;
}

Matrix DiracDiagonal::matrix() const {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(entries.size()),
                          static_cast<Eigen::Index>(entries.size()));
  for (std::size_t j = 0; j < entries.size(); ++j) {
    m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = entries[j];
  }
  return m;
}

DiracDiagonal dirac_diagonal(double alpha, double beta, std::size_t cutoff) {
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw DomainError("dirac_diagonal: alpha and beta must be positive");
  }
  DiracDiagonal d;
  d.alpha = alpha;
  d.beta = beta;
  d.cutoff = cutoff;
  d.entries.reserve(cutoff + 1);
  for (std::size_t j = 0; j <= cutoff; ++j) d.entries.push_back(alpha * static_cast<double>(j) + beta);
  return d;
}

Matrix number_operator(std::size_t cutoff) {
  Matrix r = Matrix::Zero(static_cast<Eigen::Index>(cutoff + 1), static_cast<Eigen::Index>(cutoff + 1));
  for (std::size_t j = 0; j <= cutoff; ++j) {
    r(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = static_cast<double>(j);
  }
  return r;
}

DiracWeights fractal_dirac_weights(double c, std::size_t n_maps, double ell, std::size_t level) {
  const double m = static_cast<double>(level);
  const double log_beta = -ell * m * std::log(c);
  const double log_alpha = log_beta - m * (ell - 1.0) * std::log(static_cast<double>(n_maps));
  return {std::exp(log_alpha), std::exp(log_beta)};
}

double verify_hardy_commutator(const BoundaryCurve& curve, int a, int b,
                               const HardyTruncation& trunc, std::size_t margin,
                               const QuadratureOptions& options) {
  if (a < 0 || b < 0) throw DomainError("verify_hardy_commutator: powers must be non-negative");
  if (margin < static_cast<std::size_t>(a + b)) {
    throw DomainError("verify_hardy_commutator: margin must be >= a + b");
  }
  if (2 * margin > trunc.cutoff) throw DomainError("verify_hardy_commutator: margin too large for K");

  const int harmonics = static_cast<int>(trunc.cutoff) + a + b;
  const SymbolCoefficients u = fourier_coefficients(curve, HardyPolynomial{{1.0, a, b}}, harmonics, options);
  const SymbolCoefficients pi = commutator_symbol(curve, a, b, harmonics, options);
  const Matrix t = toeplitz_matrix(u, trunc).matrix;
  const Matrix t_pi = toeplitz_matrix(pi, trunc).matrix;
  const Matrix lhs = commutator(number_operator(trunc.cutoff), t);
  const auto lo = static_cast<Eigen::Index>(margin);
  const auto hi = static_cast<Eigen::Index>(trunc.cutoff - margin);
  return max_entry_modulus(lhs - t_pi, lo, hi);
}

namespace {

int polynomial_degree(const HardyPolynomial& p) {
  int d = 0;
  for (const HardyMonomial& term : p) d = std::max(d, term.a + term.b);
  return d;
}

std::vector<Word> words_for_level(std::size_t n_maps, std::size_t level, std::uint64_t cap,
                                  Rng& rng, bool& sampled) {
  if (word_count(n_maps, level) <= cap) {
    sampled = false;
    return enumerate_words(n_maps, level, cap);
  }
  sampled = true;
  std::set<Word> picked;
  while (picked.size() < cap) {
    std::vector<int> letters(level);
    for (int& l : letters) l = 1 + static_cast<int>(rng.bits() % n_maps);
    picked.insert(Word(std::move(letters)));
  }
  return {picked.begin(), picked.end()};
}

}  // namespace

std::vector<CommutatorBoundRow> commutator_bound_table(const Polygon& poly, const IfsSystem& ifs,
                                                       const HardyPolynomial& p, double ell,
                                                       const std::vector<std::size_t>& levels,
                                                       const CommutatorBoundOptions& options) {
  const HardyTruncation trunc(0, 1.0, options.cutoff);
  const int harmonics = static_cast<int>(options.cutoff) + polynomial_degree(p);
  const Matrix number = number_operator(options.cutoff);
  Rng rng(options.seed);

  std::vector<CommutatorBoundRow> rows;
  for (std::size_t level : levels) {
    CommutatorBoundRow row;
    row.level = level;
    row.alpha = fractal_dirac_weights(ifs.ratio(), ifs.size(), ell, level).alpha;
    const std::vector<Word> words = words_for_level(ifs.size(), level, options.words_per_level, rng, row.sampled);
    row.words_used = words.size();

    std::vector<double> commutator_norms(words.size());
    std::vector<double> representation_norms(words.size());
    parallel_for(words.size(), options.threads, [&](std::size_t i) {
      const MobiusChart chart = mobius_chart(poly, ifs, words[i]);
      const BoundaryCurve curve = BoundaryCurve::from_chart(chart);
      const Matrix t = toeplitz_matrix(fourier_coefficients(curve, p, harmonics, options.quadrature), trunc).matrix;
      commutator_norms[i] = row.alpha * operator_norm(commutator(number, t), options.norm);
      representation_norms[i] = operator_norm(t, options.norm);
    });
    for (std::size_t i = 0; i < words.size(); ++i) {
      row.max_commutator_norm = std::max(row.max_commutator_norm, commutator_norms[i]);
      row.max_representation_norm = std::max(row.max_representation_norm, representation_norms[i]);
    }
    rows.push_back(row);
  }
  return rows;
}

bool commutator_table_bounded(const std::vector<CommutatorBoundRow>& rows) {
  if (rows.empty()) return true;
  for (const CommutatorBoundRow& row : rows) {
    if (!std::isfinite(row.max_commutator_norm)) return false;
  }
  return rows.back().max_commutator_norm <= 1.5 * rows.front().max_commutator_norm;
}

}  // namespace fracspec
