#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fracspec/toeplitz.hpp"

namespace fracspec {

/// Spectral zeta function Tr|D|^{-s} of a direct sum, organized by level:
/// Tr|D|^{-s} = sum_m a_m(s). Terms are produced lazily in log space.
struct ZetaSeries {
  std::string family;
  std::map<std::string, double> parameters;
  std::function<double(std::size_t level, double s)> log_term;

  double term(std::size_t level, double s) const;
  /// a_{m+1}(s) / a_m(s).
  double ratio(std::size_t level, double s) const;
};

/// log N / log(cN). DomainError when cN <= 1.
double ell_lower_bound(double c, std::size_t n_maps);

/// Weights alpha_m = c^{-lm} N^{-m(l-1)}, beta_m = c^{-lm}, multiplicity N^m.
/// DomainError naming the bound when ell <= ell_lower_bound(c, N).
ZetaSeries fractal_zeta_series(double c, std::size_t n_maps, double ell);

/// Disk-fractal family: N^m copies of disk_fractal_dirac(c, N, m).
ZetaSeries disk_fractal_zeta_series(double c, std::size_t n_maps);

/// Unit-ball family with alpha_m = m + 1: level m contributes
/// sum_k C(k + n - 1, n - 1) (k + m + n + 1)^{-s}.
ZetaSeries bergman_zeta_series(int n);

struct LevelTerm {
  std::size_t level = 0;
  double log_term = 0.0;
  double term = 0.0;        // exp(log_term); may under/overflow
  double cumulative = 0.0;  // compensated running sum of term
};

/// Per-level values N^m alpha_m^{-s} sum_j (j + beta_m/alpha_m)^{-s} for m = 0..levels,
/// with the inner sum taken exactly for j <= inner_cutoff and completed by
/// the Hurwitz tail (integral term plus Euler-Maclaurin corrections).
std::vector<LevelTerm> fractal_zeta_terms(double c, std::size_t n_maps, double ell, double s,
                                          std::size_t levels, std::size_t inner_cutoff = 64);

/// Same layout for any series.
std::vector<LevelTerm> zeta_terms(const ZetaSeries& series, double s, std::size_t levels);

struct BergmanZetaSum {
  double partial = 0.0;    // sum over m <= M, k <= K
  double tail = 0.0;       // analytic completion of the remaining pairs
  double completed = 0.0;  // partial + tail; +inf when s <= n + 1
  bool converged = false;
};

/// sum_{m <= M} sum_{k <= K} C(k + n - 1, n - 1) (k + m + n + 1)^{-s}, plus the
/// completion of the omitted pairs. DomainError unless s > 0.
BergmanZetaSum bergman_zeta_partial(int n, double s, std::size_t max_level, std::size_t max_grade);

struct DimensionEstimate {
  enum class Method { RatioRoot, CountingFit };

  double value = 0.0;
  double low = 0.0;
  double high = 0.0;
  Method method = Method::RatioRoot;
  std::size_t levels_used = 0;
  double residual = 0.0;
  std::size_t samples = 0;
};

std::string to_string(DimensionEstimate::Method method);

struct AbscissaOptions {
  double tol = 1e-8;
  std::size_t level = 20;  // late level at which the term ratio is measured
  int max_iterations = 200;
};

/// Root of log(a_{M+1}(s) / a_M(s)) = 0 by bisection inside `bracket`.
/// DomainError (with the measured ratios) when the bracket does not straddle
/// the root.
DimensionEstimate estimate_abscissa(const ZetaSeries& series, std::pair<double, double> bracket,
                                    const AbscissaOptions& options = {});

/// Unbounded (or truncated) arithmetic spectrum alpha j + beta, j >= 0, repeated
/// `multiplicity` times; with grade_dimension n the value at j has extra
/// degeneracy C(j + n - 1, n - 1).
struct SpectralBlock {
  double alpha = 1.0;
  double beta = 1.0;
  double multiplicity = 1.0;
  int grade_dimension = 1;
  std::size_t cutoff = std::numeric_limits<std::size_t>::max();

  /// Number of eigenvalues <= lambda, with multiplicity.
  long double count(double lambda) const;
};

SpectralBlock block_from_diagonal(const DiracDiagonal& d, double multiplicity = 1.0);

std::vector<SpectralBlock> fractal_spectrum(double c, std::size_t n_maps, double ell, std::size_t max_level);
std::vector<SpectralBlock> disk_fractal_spectrum(double c, std::size_t n_maps, std::size_t max_level);
std::vector<SpectralBlock> bergman_spectrum(int n, std::size_t max_level);

/// Eigenvalue counting function over a direct sum.
long double counting_function(const std::vector<SpectralBlock>& blocks, double lambda);

/// Largest lambda for which levels 0..max_level capture the whole spectrum
/// below lambda, shrunk by 1 %.
double complete_spectrum_limit(const std::vector<SpectralBlock>& next_level_blocks);

struct CountingFitOptions {
  double window_ratio = 100.0;  // fit on [lambda_max / window_ratio, lambda_max]
  std::size_t bins = 200;
  long double min_count = 1000.0L;
};

/// Least-squares slope of log N(lambda) against log lambda on log-spaced
/// points; bracket = slope +- 2 standard errors.
/// ResourceError when N(lambda_max) < min_count.
DimensionEstimate counting_function_dimension(const std::vector<SpectralBlock>& blocks, double lambda_max,
                                              const CountingFitOptions& options = {});
DimensionEstimate counting_function_dimension(const std::vector<DiracDiagonal>& spectra, double lambda_max,
                                              const CountingFitOptions& options = {});

struct ResolventInput {
  double weight = 1.0;          // alpha_m
  double min_eigenvalue = 1.0;  // smallest eigenvalue of D_m
};

struct ResolventDecay {
  std::vector<double> values;  // (1 + alpha^2 lambda_min^2)^{-1/2}
  bool strictly_decreasing = false;
  bool below_threshold = false;
  bool passed = false;
};

/// Verdict: strictly decreasing with the last value below `threshold`.
ResolventDecay resolvent_decay_check(const std::vector<ResolventInput>& family, double threshold = 0.1);
ResolventDecay resolvent_decay_check(const std::vector<std::pair<double, DiracDiagonal>>& family,
                                     double threshold = 0.1);

struct UniformBound {
  double sup = 0.0;
  bool finite = true;
  bool increasing_trend = false;  // strictly increasing from first to last level
  bool passed = false;
};

/// Finite sup, no strictly increasing run across all levels, and last <= 1.5 x first.
UniformBound uniform_bound_check(const std::vector<double>& per_level_norms);

}  // namespace fracspec
