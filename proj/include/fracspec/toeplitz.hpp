#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fracspec/charts.hpp"
#include "fracspec/ifs.hpp"
#include "fracspec/linalg.hpp"

namespace fracspec {

/// Piecewise-smooth parametrization of a circle C_m by arcs. Arc j covers
/// angles [start(j), start(j) + length(j)] and is sampled at relative
/// positions t in (0, 1).
class BoundaryCurve {
 public:
  using ArcFunction = std::function<Complex(std::size_t, double)>;

  BoundaryCurve(std::vector<double> starts, std::vector<double> lengths, ArcFunction value,
                ArcFunction radial_derivative);

  /// The chart kappa_w with its closed-form radial derivative.
  static BoundaryCurve from_chart(const MobiusChart& chart);

  /// kappa(z) = z on the circle of the given radius, a single arc.
  static BoundaryCurve identity(double radius);

  std::size_t arc_count() const { return starts_.size(); }
  double start(std::size_t j) const { return starts_[j]; }
  double length(std::size_t j) const { return lengths_[j]; }
  Complex value(std::size_t j, double t) const { return value_(j, t); }
  Complex radial_derivative(std::size_t j, double t) const { return radial_(j, t); }

 private:
  std::vector<double> starts_;
  std::vector<double> lengths_;
  ArcFunction value_;
  ArcFunction radial_;
};

/// Term coeff * z^a zbar^b of a polynomial in one complex variable.
struct HardyMonomial {
  Complex coeff{1.0, 0.0};
  int a = 0;
  int b = 0;
};
using HardyPolynomial = std::vector<HardyMonomial>;

/// Fourier coefficients u_hat(n), n = -H..H, of t -> u(c^m e^{it}).
struct SymbolCoefficients {
  enum class Source { Quadrature, ClosedForm };

  std::vector<Complex> values;  // values[n + H]
  int harmonics = 0;
  Source source = Source::Quadrature;

  Complex operator()(int n) const;
};

struct QuadratureOptions {
  std::size_t order = 32;            // Gauss points per panel
  std::size_t max_harmonics = 4096;  // resource guard on H
};

/// u_hat(n) = sum_j int_{arc j} u e^{-int} dt / 2 pi with composite
/// Gauss-Legendre per arc; panels per arc grow with H |L_j| so every panel
/// spans about two periods of the highest harmonic.
SymbolCoefficients fourier_coefficients(const BoundaryCurve& curve,
                                        const BoundaryCurve::ArcFunction& symbol, int harmonics,
                                        const QuadratureOptions& options = {});

/// Coefficients of p(kappa, conj kappa).
SymbolCoefficients fourier_coefficients(const BoundaryCurve& curve, const HardyPolynomial& p,
                                        int harmonics, const QuadratureOptions& options = {});

/// Coefficients of pi_ab = (R - Rbar)(kappa^a conj(kappa)^b)
///   = a (R kappa) kappa^{a-1} conj(kappa)^b - b kappa^a conj(R kappa) conj(kappa)^{b-1}
/// evaluated arc by arc from the closed-form radial derivative.
SymbolCoefficients commutator_symbol(const BoundaryCurve& curve, int a, int b, int harmonics,
                                     const QuadratureOptions& options = {});

/// Hardy space H^2(C_m) cut off at degree K, orthonormal basis
/// e_j(z) = c^{-mj} z^j, j = 0..K.
struct HardyTruncation {
  std::size_t level = 0;
  double radius = 1.0;
  std::size_t cutoff = 1;

  HardyTruncation(std::size_t level, double radius, std::size_t cutoff);
  std::size_t dimension() const { return cutoff + 1; }

  /// e_j evaluated at z.
  Complex basis(std::size_t j, Complex z) const;
};

struct ToeplitzTruncation {
  Matrix matrix;  // M(k, j) = u_hat(k - j)
  std::string symbol_id;
  std::size_t level = 0;
  std::size_t cutoff = 0;
};

/// Throws DomainError when coeffs.harmonics < K.
ToeplitzTruncation toeplitz_matrix(const SymbolCoefficients& coeffs, const HardyTruncation& trunc,
                                   std::string symbol_id = {});

/// Diagonal alpha j + beta, j = 0..K.
struct DiracDiagonal {
  double alpha = 1.0;
  double beta = 1.0;
  std::size_t cutoff = 0;
  std::vector<double> entries;

  double min_entry() const { return beta; }
  double inverse_norm() const { return 1.0 / beta; }
  Matrix matrix() const;
};

/// Throws DomainError unless alpha > 0 and beta > 0.
DiracDiagonal dirac_diagonal(double alpha, double beta, std::size_t cutoff);

/// The number operator R = diag(0, 1, ..., K).
Matrix number_operator(std::size_t cutoff);

struct DiracWeights {
  double alpha = 1.0;
  double beta = 1.0;
};

/// alpha_m = c^{-l m} N^{-m (l - 1)}, beta_m = c^{-l m}.
DiracWeights fractal_dirac_weights(double c, std::size_t n_maps, double ell, std::size_t level);

/// max |([R, T_u] - T_pi)_{kj}| over k, j in [margin, K - margin], where u
/// is kappa^a conj(kappa)^b and both sides are assembled from separate
/// quadratures. DomainError when margin < a + b or 2 margin > K.
double verify_hardy_commutator(const BoundaryCurve& curve, int a, int b,
                               const HardyTruncation& trunc, std::size_t margin,
                               const QuadratureOptions& options = {});

struct CommutatorBoundRow {
  std::size_t level = 0;
  double alpha = 0.0;
  std::size_t words_used = 0;
  bool sampled = false;  // true when a random word subset replaced enumeration
  double max_commutator_norm = 0.0;      // max_w || [alpha_m R, T_{p o kappa_w}] ||
  double max_representation_norm = 0.0;  // max_w || T_{p o kappa_w} ||
};

struct CommutatorBoundOptions {
  std::size_t cutoff = 48;
  std::uint64_t words_per_level = 729;  // enumerate fully up to this many words
  std::uint64_t seed = 1;
  std::size_t threads = 1;
  QuadratureOptions quadrature{};
  NormOptions norm{.dense_fallback = true};
};

/// Per-level maxima of the commutator and representation norms for p,
/// with weights from fractal_dirac_weights(c, N, ell, m).
std::vector<CommutatorBoundRow> commutator_bound_table(const Polygon& poly, const IfsSystem& ifs,
                                                       const HardyPolynomial& p, double ell,
                                                       const std::vector<std::size_t>& levels,
                                                       const CommutatorBoundOptions& options = {});

/// Contract on a bound table: finite entries and last <= 1.5 x first.
bool commutator_table_bounded(const std::vector<CommutatorBoundRow>& rows);

}  // namespace fracspec
