#include "fracspec/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fracspec/errors.hpp"
#include "fracspec/special.hpp"
#include "fracspec/summation.hpp"

namespace fracspec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log_add(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log(std::exp(a - hi) + std::exp(b - hi));
}

// log zeta(s, x) with x given as log x, valid far beyond the double range of x.
double log_hurwitz_from_log(double s, double log_x) {
  if (log_x < 600.0) return log_hurwitz_zeta(s, std::exp(log_x));
  return (1.0 - s) * log_x - std::log(s - 1.0);
}

// log sum_j (j + x)^{-s}, exact for j <= inner_cutoff, Hurwitz tail beyond.
double log_inner_sum(double s, double log_x, std::size_t inner_cutoff) {
  if (log_x >= 600.0 || inner_cutoff == 0) return log_hurwitz_from_log(s, log_x);
  const double x = std::exp(log_x);
  CompensatedSum<double> head;
  for (std::size_t j = 0; j <= inner_cutoff; ++j) head += std::pow(1.0 + static_cast<double>(j) / x, -s);
  const double log_head = -s * log_x + std::log(head.value());
  const double log_tail = log_hurwitz_zeta(s, x + static_cast<double>(inner_cutoff) + 1.0);
  return log_add(log_head, log_tail);
}

// log of multiplicity * sum_j (alpha j + beta)^{-s}.
double log_arithmetic_block(double log_multiplicity, double log_alpha, double log_beta, double s,
                            std::size_t inner_cutoff) {
  if (!(s > 1.0)) return kInf;
  return log_multiplicity - s * log_alpha + log_inner_sum(s, log_beta - log_alpha, inner_cutoff);
}

// Coefficients in x of C(x - shift, r) = prod_{i<r} (x - shift - i) / r!.
std::vector<double> binomial_polynomial(double shift, int r) {
  std::vector<double> coeffs{1.0};
  for (int i = 0; i < r; ++i) {
    const double root = shift + i;
    std::vector<double> next(coeffs.size() + 1, 0.0);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      next[k + 1] += coeffs[k];
      next[k] -= root * coeffs[k];
    }
    coeffs = std::move(next);
  }
  double factorial = 1.0;
  for (int i = 2; i <= r; ++i) factorial *= i;
  for (double& c : coeffs) c /= factorial;
  return coeffs;
}

double binomial(double top, int r) {
  double v = 1.0;
  for (int i = 1; i <= r; ++i) v = v * (top - r + i) / i;
  return v;
}

}  // namespace

double ZetaSeries::term(std::size_t level, double s) const { return std::exp(log_term(level, s)); }

double ZetaSeries::ratio(std::size_t level, double s) const {
  return std::exp(log_term(level + 1, s) - log_term(level, s));
}

double ell_lower_bound(double c, std::size_t n_maps) {
  const double cn = c * static_cast<double>(n_maps);
  if (!(cn > 1.0)) {
    std::ostringstream msg;
    msg << "ell_lower_bound: requires cN > 1, got c = " << c << ", N = " << n_maps;
    throw DomainError(msg.str());
  }
  return std::log(static_cast<double>(n_maps)) / std::log(cn);
}

ZetaSeries fractal_zeta_series(double c, std::size_t n_maps, double ell) {
  if (!(c > 0.0 && c < 1.0)) throw DomainError("fractal_zeta_series: ratio must lie in (0, 1)");
  const double bound = ell_lower_bound(c, n_maps);
  if (!(ell > bound)) {
    std::ostringstream msg;
    msg << "fractal_zeta_series: ell = " << ell << " must exceed log N / log(cN) = " << bound;
    throw DomainError(msg.str());
  }
  const double log_n = std::log(static_cast<double>(n_maps));
  const double log_c = std::log(c);
  ZetaSeries series;
  series.family = "fractal";
  series.parameters = {{"c", c}, {"N", static_cast<double>(n_maps)}, {"ell", ell}};
  series.log_term = [=](std::size_t level, double s) {
    const double m = static_cast<double>(level);
    const double log_beta = -ell * m * log_c;
    const double log_alpha = log_beta - m * (ell - 1.0) * log_n;
    return log_arithmetic_block(m * log_n, log_alpha, log_beta, s, 0);
  };
  return series;
}

ZetaSeries disk_fractal_zeta_series(double c, std::size_t n_maps) {
  if (!(c > 0.0 && c < 1.0)) throw DomainError("disk_fractal_zeta_series: ratio must lie in (0, 1)");
  const double log_n = std::log(static_cast<double>(n_maps));
  const double log_c = std::log(c);
  ZetaSeries series;
  series.family = "disk-fractal";
  series.parameters = {{"c", c}, {"N", static_cast<double>(n_maps)}};
  series.log_term = [=](std::size_t level, double s) {
    const double m = static_cast<double>(level);
    const double log_nm = m * log_n;
    // log(N^m + 1) and log(N^m + 2) without overflow.
    const double log_nm1 = log_nm + std::log1p(std::exp(-log_nm));
    const double log_nm2 = log_nm + std::log1p(2.0 * std::exp(-log_nm));
    const double log_alpha = -2.0 * m * log_c - log_nm1;
    const double log_beta = -2.0 * m * log_c + log_nm2 - log_nm1;
    return log_arithmetic_block(log_nm, log_alpha, log_beta, s, 0);
  };
  return series;
}

ZetaSeries bergman_zeta_series(int n) {
  if (n < 1) throw DomainError("bergman_zeta_series: need n >= 1");
  ZetaSeries series;
  series.family = "bergman";
  series.parameters = {{"n", static_cast<double>(n)}};
  series.log_term = [n](std::size_t level, double s) {
    const double m = static_cast<double>(level);
    const std::vector<double> q = binomial_polynomial(m + 2.0, n - 1);
    const double value = polynomial_dirichlet_tail(q, s, m + n + 1.0);
    return std::isfinite(value) ? std::log(value) : kInf;
  };
  return series;
}

std::vector<LevelTerm> fractal_zeta_terms(double c, std::size_t n_maps, double ell, double s,
                                          std::size_t levels, std::size_t inner_cutoff) {
  // Validates the parameters and the admissibility of ell.
  (void)fractal_zeta_series(c, n_maps, ell);
  if (!(s > 1.0)) throw DomainError("fractal_zeta_terms: need s > 1");
  const double log_n = std::log(static_cast<double>(n_maps));
  const double log_c = std::log(c);
  std::vector<LevelTerm> out;
  CompensatedSum<double> cumulative;
  for (std::size_t level = 0; level <= levels; ++level) {
    const double m = static_cast<double>(level);
    const double log_beta = -ell * m * log_c;
    const double log_alpha = log_beta - m * (ell - 1.0) * log_n;
    LevelTerm t;
    t.level = level;
    t.log_term = log_arithmetic_block(m * log_n, log_alpha, log_beta, s, inner_cutoff);
    t.term = std::exp(t.log_term);
    cumulative += t.term;
    t.cumulative = cumulative.value();
    out.push_back(t);
  }
  return out;
}

std::vector<LevelTerm> zeta_terms(const ZetaSeries& series, double s, std::size_t levels) {
  std::vector<LevelTerm> out;
  CompensatedSum<double> cumulative;
  for (std::size_t level = 0; level <= levels; ++level) {
    LevelTerm t;
    t.level = level;
    t.log_term = series.log_term(level, s);
    t.term = std::exp(t.log_term);
    cumulative += t.term;
    t.cumulative = cumulative.value();
    out.push_back(t);
  }
  return out;
}

BergmanZetaSum bergman_zeta_partial(int n, double s, std::size_t max_level, std::size_t max_grade) {
  if (n < 1) throw DomainError("bergman_zeta_partial: need n >= 1");
  if (!(s > 0.0)) throw DomainError("bergman_zeta_partial: need s > 0");
  const double dn = n;

  BergmanZetaSum out;
  CompensatedSum<double> partial;
  for (std::size_t k = 0; k <= max_grade; ++k) {
    const double kk = static_cast<double>(k);
    const double degeneracy = binomial(kk + dn - 1.0, n - 1);
    CompensatedSum<double> row;
    for (std::size_t m = 0; m <= max_level; ++m) row += std::pow(kk + static_cast<double>(m) + dn + 1.0, -s);
    partial += degeneracy * row.value();
  }
  out.partial = partial.value();

  if (!(s > dn + 1.0)) {
    out.tail = kInf;
    out.completed = kInf;
    return out;
  }
  // Pairs with k <= K, m > M: one Hurwitz tail per grade.
  CompensatedSum<double> tail;
  for (std::size_t k = 0; k <= max_grade; ++k) {
    const double kk = static_cast<double>(k);
    tail += binomial(kk + dn - 1.0, n - 1) *
            std::exp(log_hurwitz_zeta(s, kk + static_cast<double>(max_level) + dn + 2.0));
  }
  // Pairs with k > K, grouped by t = k + m + n + 1: weight C(t - 1, n) - C(K + n, n).
  std::vector<double> q = binomial_polynomial(1.0, n);
  q[0] -= binomial(static_cast<double>(max_grade) + dn, n);
  tail += polynomial_dirichlet_tail(q, s, static_cast<double>(max_grade) + dn + 2.0);

  out.tail = tail.value();
  out.completed = out.partial + out.tail;
  out.converged = true;
  return out;
}

std::string to_string(DimensionEstimate::Method method) {
  return method == DimensionEstimate::Method::RatioRoot ? "ratio-root" : "counting-fit";
}

DimensionEstimate estimate_abscissa(const ZetaSeries& series, std::pair<double, double> bracket,
                                    const AbscissaOptions& options) {
  const std::size_t level = options.level;
  auto log_ratio = [&](double s) {
    if (!(s > 1.0)) return kInf;
    return series.log_term(level + 1, s) - series.log_term(level, s);
  };
  double lo = bracket.first;
  double hi = bracket.second;
  if (!(lo < hi)) throw DomainError("estimate_abscissa: bracket must satisfy low < high");
  const double f_lo = log_ratio(lo);
  const double f_hi = log_ratio(hi);
  if (!(f_lo > 0.0 && f_hi < 0.0)) {
    std::ostringstream msg;
    msg << "estimate_abscissa: bracket [" << lo << ", " << hi
        << "] does not straddle the abscissa; term ratios " << std::exp(f_lo) << " and " << std::exp(f_hi);
    throw DomainError(msg.str());
  }
  int it = 0;
  while (hi - lo > options.tol && it++ < options.max_iterations) {
    const double mid = 0.5 * (lo + hi);
    if (log_ratio(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  DimensionEstimate est;
  est.value = 0.5 * (lo + hi);
  est.low = lo;
  est.high = hi;
  est.method = DimensionEstimate::Method::RatioRoot;
  est.levels_used = level + 2;
  est.residual = log_ratio(est.value);
  return est;
}

long double SpectralBlock::count(double lambda) const {
  if (lambda < beta) return 0.0L;
  long double top = std::floor((static_cast<long double>(lambda) - beta) / alpha);
  if (cutoff != std::numeric_limits<std::size_t>::max()) {
    top = std::min(top, static_cast<long double>(cutoff));
  }
  // sum_{j <= J} C(j + n - 1, n - 1) = C(J + n, n)
  long double c = 1.0L;
  for (int i = 1; i <= grade_dimension; ++i) c = c * (top + i) / i;
  return static_cast<long double>(multiplicity) * c;
}

SpectralBlock block_from_diagonal(const DiracDiagonal& d, double multiplicity) {
  SpectralBlock b;
  b.alpha = d.alpha;
  b.beta = d.beta;
  b.multiplicity = multiplicity;
  b.cutoff = d.cutoff;
  return b;
}

std::vector<SpectralBlock> fractal_spectrum(double c, std::size_t n_maps, double ell, std::size_t max_level) {
  std::vector<SpectralBlock> blocks;
  for (std::size_t m = 0; m <= max_level; ++m) {
    const DiracWeights w = fractal_dirac_weights(c, n_maps, ell, m);
    blocks.push_back({w.alpha, w.beta, std::pow(static_cast<double>(n_maps), static_cast<double>(m)), 1});
  }
  return blocks;
}

std::vector<SpectralBlock> disk_fractal_spectrum(double c, std::size_t n_maps, std::size_t max_level) {
  std::vector<SpectralBlock> blocks;
  for (std::size_t m = 0; m <= max_level; ++m) {
    const double nm = std::pow(static_cast<double>(n_maps), static_cast<double>(m));
    const double scale = std::pow(c, -2.0 * static_cast<double>(m));
    blocks.push_back({scale / (nm + 1.0), scale * (nm + 2.0) / (nm + 1.0), nm, 1});
  }
  return blocks;
}

std::vector<SpectralBlock> bergman_spectrum(int n, std::size_t max_level) {
  std::vector<SpectralBlock> blocks;
  for (std::size_t m = 0; m <= max_level; ++m) {
    blocks.push_back({1.0, static_cast<double>(m) + n + 1.0, 1.0, n});
  }
  return blocks;
}

long double counting_function(const std::vector<SpectralBlock>& blocks, double lambda) {
  long double total = 0.0L;
  for (const SpectralBlock& b : blocks) total += b.count(lambda);
  return total;
}

double complete_spectrum_limit(const std::vector<SpectralBlock>& next_level_blocks) {
  double lowest = kInf;
  for (const SpectralBlock& b : next_level_blocks) lowest = std::min(lowest, b.beta);
  return 0.99 * lowest;
}

DimensionEstimate counting_function_dimension(const std::vector<SpectralBlock>& blocks, double lambda_max,
                                              const CountingFitOptions& options) {
  if (options.bins < 3) throw DomainError("counting_function_dimension: need at least 3 bins");
  const long double total = counting_function(blocks, lambda_max);
  if (total < options.min_count) {
    std::ostringstream msg;
    msg << "counting_function_dimension: only " << static_cast<double>(total)
        << " eigenvalues below lambda_max = " << lambda_max;
    throw ResourceError(msg.str());
  }
  const double log_hi = std::log(lambda_max);
  const double log_lo = log_hi - std::log(options.window_ratio);
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < options.bins; ++i) {
    const double x = log_lo + (log_hi - log_lo) * static_cast<double>(i) / static_cast<double>(options.bins - 1);
    const long double count = counting_function(blocks, std::exp(x));
    if (count <= 0.0L) continue;
    xs.push_back(x);
    ys.push_back(static_cast<double>(std::log(count)));
  }
  if (xs.size() < 3) throw ResourceError("counting_function_dimension: too few populated bins");

  const double n = static_cast<double>(xs.size());
  CompensatedSum<double> sx, sy;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx.value() / n;
  const double my = sy.value() / n;
  CompensatedSum<double> sxx, sxy;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  const double slope = sxy.value() / sxx.value();
  const double intercept = my - slope * mx;
  CompensatedSum<double> sse;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (intercept + slope * xs[i]);
    sse += r * r;
  }
  const double se = std::sqrt(sse.value() / (n - 2.0) / sxx.value());

  DimensionEstimate est;
  est.value = slope;
  est.low = slope - 2.0 * se;
  est.high = slope + 2.0 * se;
  est.method = DimensionEstimate::Method::CountingFit;
  est.levels_used = blocks.size();
  est.residual = std::sqrt(sse.value() / n);
  est.samples = xs.size();
  return est;
}

DimensionEstimate counting_function_dimension(const std::vector<DiracDiagonal>& spectra, double lambda_max,
                                              const CountingFitOptions& options) {
  std::vector<SpectralBlock> blocks;
  blocks.reserve(spectra.size());
  for (const DiracDiagonal& d : spectra) blocks.push_back(block_from_diagonal(d));
  return counting_function_dimension(blocks, lambda_max, options);
}

ResolventDecay resolvent_decay_check(const std::vector<ResolventInput>& family, double threshold) {
  ResolventDecay out;
  for (const ResolventInput& in : family) {
    if (!(in.min_eigenvalue > 0.0)) throw DomainError("resolvent_decay_check: spectra must be positive");
    const double x = in.weight * in.min_eigenvalue;
    out.values.push_back(1.0 / std::sqrt(1.0 + x * x));
  }
  out.strictly_decreasing = out.values.size() >= 2;
  for (std::size_t i = 1; i < out.values.size(); ++i) {
    if (!(out.values[i] < out.values[i - 1])) out.strictly_decreasing = false;
  }
  out.below_threshold = !out.values.empty() && out.values.back() < threshold;
  out.passed = out.strictly_decreasing && out.below_threshold;
  return out;
}

ResolventDecay resolvent_decay_check(const std::vector<std::pair<double, DiracDiagonal>>& family,
                                     double threshold) {
  std::vector<ResolventInput> inputs;
  for (const auto& [weight, d] : family) inputs.push_back({weight, d.min_entry()});
  return resolvent_decay_check(inputs, threshold);
}

UniformBound uniform_bound_check(const std::vector<double>& norms) {
  UniformBound out;
  for (double v : norms) {
    if (!std::isfinite(v)) out.finite = false;
    out.sup = std::max(out.sup, v);
  }
  out.increasing_trend = norms.size() >= 2;
  for (std::size_t i = 1; i < norms.size(); ++i) {
    if (!(norms[i] > norms[i - 1])) out.increasing_trend = false;
  }
  const bool last_ok = norms.empty() || norms.back() <= 1.5 * norms.front();
  out.passed = out.finite && !out.increasing_trend && last_ok;
  return out;
}

}  // namespace fracspec
