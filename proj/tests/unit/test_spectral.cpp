#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fracspec/bergman.hpp"
#include "fracspec/errors.hpp"
#include "fracspec/spectral.hpp"

using namespace fracspec;

namespace {

constexpr double kZeta2 = std::numbers::pi * std::numbers::pi / 6.0;
constexpr double kZeta3 = 1.2020569031595942;
constexpr double kZeta4 = std::numbers::pi * std::numbers::pi * std::numbers::pi * std::numbers::pi / 90.0;
// zeta(3/2) - zeta(5/2)
constexpr double kBergmanOneAt2p5 = 2.6123753486854883 - 1.3414872572509172;

// Brute-force sum over pairs (k, m) with k + m + 2 = t <= T of t^{-s}.
double brute_pairs(double s, int t_max) {
  double total = 0.0;
  for (int t = t_max; t >= 2; --t) total += (t - 1) * std::pow(double(t), -s);
  return total;
}

}  // namespace

TEST_CASE("bergman zeta partial sums") {
  CHECK(bergman_zeta_partial(1, 3.0, 0, 0).partial == 0.125);

  const BergmanZetaSum big = bergman_zeta_partial(1, 3.0, 400, 400);
  CHECK(big.converged);
  CHECK(std::abs(big.completed - (kZeta2 - kZeta3)) <= 1e-6);
  CHECK(std::abs(big.completed - 0.4428771636886322) <= 1e-12);
  CHECK(std::abs(bergman_zeta_partial(1, 3.0, 3, 7).completed - (kZeta2 - kZeta3)) <= 1e-12);

  // Square partial sums against a direct pair count (t <= K + 2 lies inside the square).
  const BergmanZetaSum small = bergman_zeta_partial(1, 3.0, 50, 50);
  CHECK(small.partial >= brute_pairs(3.0, 52));
  CHECK(small.partial <= brute_pairs(3.0, 102));

  // n = 2: sum_{t >= 3} t^{-s} (t - 1)(t - 2) / 2.
  const double n2_oracle = 0.5 * (kZeta2 - 3.0 * kZeta3 + 2.0 * kZeta4);
  CHECK(std::abs(bergman_zeta_partial(2, 4.0, 60, 60).completed - n2_oracle) <= 1e-12);

  CHECK(std::abs(bergman_zeta_partial(1, 2.5, 100, 100).completed - kBergmanOneAt2p5) <= 1e-10);
  CHECK_THROWS_AS(bergman_zeta_partial(1, 0.0, 1, 1), DomainError);
}

TEST_CASE("bergman zeta monotonicity, convergence and divergence") {
  double previous = 0.0;
  for (std::size_t cut : {1u, 2u, 5u, 10u, 40u, 160u}) {
    const double p = bergman_zeta_partial(1, 2.5, cut, cut).partial;
    CHECK(p > previous);
    CHECK(p < kBergmanOneAt2p5);
    previous = p;
  }
  // Cauchy increments of the completed sums at s = n + 1.5.
  for (int n : {1, 2}) {
    const double s = n + 1.5;
    const double a = bergman_zeta_partial(n, s, 200, 200).completed;
    const double b = bergman_zeta_partial(n, s, 400, 400).completed;
    CHECK(std::abs(a - b) <= 1e-8);
  }
  // Divergence witness at s = n + 1 - 0.2.
  const BergmanZetaSum div = bergman_zeta_partial(1, 1.8, 3000, 3000);
  CHECK_FALSE(div.converged);
  CHECK(std::isinf(div.completed));
  CHECK(div.partial > 10.0 * kBergmanOneAt2p5);
  // At the critical exponent the partial sums keep growing like a logarithm.
  const double g1 = bergman_zeta_partial(1, 2.0, 100, 100).partial;
  const double g2 = bergman_zeta_partial(1, 2.0, 1000, 1000).partial;
  CHECK(g2 - g1 == doctest::Approx(std::log(10.0)).epsilon(0.05));
}

TEST_CASE("ell lower bound") {
  CHECK(ell_lower_bound(0.5, 3) == doctest::Approx(std::log(3.0) / std::log(1.5)).epsilon(1e-14));
  CHECK(ell_lower_bound(0.5, 3) == doctest::Approx(2.7095).epsilon(1e-4));
  CHECK(ell_lower_bound(0.9, 3) == doctest::Approx(1.1062).epsilon(1e-4));
  double previous = 0.0;
  for (double eps : {1e-1, 1e-2, 1e-3, 1e-4}) {
    const double b = ell_lower_bound(1.0 / 3.0 + eps, 3);
    CHECK(b > previous);
    previous = b;
  }
  CHECK_THROWS_AS(ell_lower_bound(1.0 / 3.0, 3), DomainError);
  CHECK_THROWS_AS(ell_lower_bound(0.2, 3), DomainError);
}

TEST_CASE("fractal zeta series") {
  CHECK_THROWS_AS(fractal_zeta_series(0.5, 3, 2.5), DomainError);
  try {
    fractal_zeta_series(0.5, 3, 2.5);
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("2.7095") != std::string::npos);
  }
  CHECK_THROWS_AS(fractal_zeta_series(1.0 / 3.0, 3, 10.0), DomainError);

  // beta_m / alpha_m = N^{m (l - 1)}
  for (std::size_t m = 0; m < 6; ++m) {
    const DiracWeights w = fractal_dirac_weights(0.5, 3, 3.0, m);
    CHECK(w.beta / w.alpha == doctest::Approx(std::pow(3.0, 2.0 * m)).epsilon(1e-12));
  }

  // Level 0 has alpha = beta = 1: sum_j (j + 1)^{-s} = zeta(s).
  const auto terms = fractal_zeta_terms(0.5, 3, 3.0, 3.0, 12);
  CHECK(terms[0].term == doctest::Approx(kZeta3).epsilon(1e-13));
  CHECK(fractal_zeta_series(0.5, 3, 3.0).term(0, 3.0) == doctest::Approx(kZeta3).epsilon(1e-13));
  for (std::size_t i = 1; i < terms.size(); ++i) CHECK(terms[i].cumulative > terms[i - 1].cumulative);

  // Level 1 against a brute-force inner sum with a large explicit cutoff.
  {
    const DiracWeights w = fractal_dirac_weights(0.5, 3, 3.0, 1);
    double direct = 0.0;
    for (int j = 2000000; j >= 0; --j) direct += std::pow(w.alpha * j + w.beta, -3.0);
    direct += std::pow(w.alpha, -3.0) * 0.5 * std::pow(2000000.5 + w.beta / w.alpha, -2.0);
    CHECK(terms[1].term == doctest::Approx(3.0 * direct).epsilon(1e-10));
  }

  // Asymptotic ratio c^{l s} N^l.
  for (double ell : {3.0, 4.0}) {
    for (double s : {1.5, 2.0, 3.0}) {
      const auto t = fractal_zeta_terms(0.5, 3, ell, s, 14);
      const double limit = std::pow(0.5, ell * s) * std::pow(3.0, ell);
      for (std::size_t m = 6; m < 14; ++m) CHECK(std::abs(t[m + 1].term / t[m].term - limit) <= 1e-4 * limit);
    }
  }
  CHECK(std::pow(0.5, 6.0) * 27.0 == doctest::Approx(27.0 / 64.0));
  const ZetaSeries sierpinski = fractal_zeta_series(0.5, 3, 3.0);
  CHECK(sierpinski.ratio(20, 2.0) == doctest::Approx(27.0 / 64.0).epsilon(1e-6));
}

TEST_CASE("abscissa estimation") {
  const double dim = std::log(3.0) / std::log(2.0);
  for (double ell : {3.0, 4.0}) {
    const DimensionEstimate est = estimate_abscissa(fractal_zeta_series(0.5, 3, ell), {1.01, 10.0});
    CHECK(std::abs(est.value - dim) <= 1e-6);
    CHECK(est.low <= est.value);
    CHECK(est.value <= est.high);
    CHECK(est.high - est.low <= 1e-8);
    CHECK(est.method == DimensionEstimate::Method::RatioRoot);
  }

  struct Params {
    double c;
    std::size_t n;
  };
  for (const Params& p : {Params{0.5, 3}, Params{1.0 / 3.0, 4}, Params{0.6, 2}}) {
    const double bound = ell_lower_bound(p.c, p.n);
    const double target = std::log(double(p.n)) / std::log(1.0 / p.c);
    for (double extra : {0.5, 2.0}) {
      const DimensionEstimate est = estimate_abscissa(fractal_zeta_series(p.c, p.n, bound + extra), {1.001, 20.0});
      CHECK(std::abs(est.value - target) <= 1e-4);
    }
  }

  CHECK_THROWS_AS(estimate_abscissa(fractal_zeta_series(0.5, 3, 3.0), {1.7, 10.0}), DomainError);
  CHECK_THROWS_AS(estimate_abscissa(fractal_zeta_series(0.5, 3, 3.0), {3.0, 2.0}), DomainError);

  // Disk family: same abscissa as the l = 2 weights.
  const DimensionEstimate disk = estimate_abscissa(disk_fractal_zeta_series(0.7, 3), {1.01, 10.0});
  CHECK(std::abs(disk.value - std::log(3.0) / std::log(1.0 / 0.7)) <= 0.05);
  CHECK(to_string(DimensionEstimate::Method::CountingFit) == "counting-fit");
}

TEST_CASE("counting function") {
  SpectralBlock line;
  CHECK(line.count(0.5) == 0.0L);
  CHECK(line.count(1.0) == 1.0L);
  CHECK(line.count(10.5) == 10.0L);
  SpectralBlock truncated{1.0, 1.0, 3.0, 1, 4};
  CHECK(truncated.count(100.0) == 15.0L);
  SpectralBlock graded{1.0, 3.0, 1.0, 2};
  // Values k + 3 with degeneracy k + 1: up to k = 2 gives 1 + 2 + 3.
  CHECK(graded.count(5.0) == 6.0L);

  // Brute-force count for the Bergman n = 1 family.
  const auto blocks = bergman_spectrum(1, 60);
  for (double lambda : {2.0, 7.5, 30.0, 61.0}) {
    long double brute = 0;
    for (int m = 0; m <= 60; ++m) {
      for (int k = 0; k + m + 2 <= lambda; ++k) brute += 1;
    }
    CHECK(counting_function(blocks, lambda) == brute);
  }

  const DiracDiagonal d = disk_fractal_dirac(0.7, 3, 2, 10);
  const SpectralBlock b = block_from_diagonal(d, 9.0);
  CHECK(b.count(d.entries[4] * (1 + 1e-12)) == 45.0L);
}

TEST_CASE("counting-function dimension fits") {
  SUBCASE("single diagonal") {
    const DimensionEstimate est = counting_function_dimension({dirac_diagonal(1.0, 1.0, 200000)}, 1e5);
    CHECK(est.value == doctest::Approx(1.0).epsilon(0.01));
    CHECK(est.method == DimensionEstimate::Method::CountingFit);
    CHECK(est.low <= est.value);
    CHECK(est.value <= est.high);
  }
  SUBCASE("bergman n = 1") {
    const double lambda_max = 1e4;
    const auto blocks = bergman_spectrum(1, static_cast<std::size_t>(lambda_max));
    const DimensionEstimate est = counting_function_dimension(blocks, lambda_max);
    CHECK(std::abs(est.value - 2.0) <= 0.05);
  }
  SUBCASE("bergman n = 2") {
    const DimensionEstimate est = counting_function_dimension(bergman_spectrum(2, 2000), 2000.0);
    CHECK(std::abs(est.value - 3.0) <= 0.1);
  }
  SUBCASE("sierpinski, levels up to 8") {
    const auto blocks = fractal_spectrum(0.5, 3, 3.0, 8);
    const double lambda_max = complete_spectrum_limit({fractal_spectrum(0.5, 3, 3.0, 9).back()});
    const DimensionEstimate est = counting_function_dimension(blocks, lambda_max);
    CHECK(std::abs(est.value - std::log(3.0) / std::log(2.0)) <= 0.05);
  }
  SUBCASE("too few eigenvalues") {
    CHECK_THROWS_AS(counting_function_dimension({dirac_diagonal(1.0, 1.0, 50)}, 40.0), ResourceError);
  }
}

TEST_CASE("resolvent decay") {
  std::vector<ResolventInput> bergman;
  for (int m = 0; m <= 12; ++m) bergman.push_back({double(m + 1), double(m + 2) / double(m + 1)});
  const ResolventDecay r = resolvent_decay_check(bergman);
  CHECK(r.values[0] == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-15));
  for (int m = 0; m <= 12; ++m) CHECK(std::abs(r.values[m] - 1.0 / std::sqrt(1.0 + (m + 2.0) * (m + 2.0))) <= 1e-15);
  CHECK(r.strictly_decreasing);
  CHECK(r.below_threshold);
  CHECK(r.passed);

  // Diagonal form: lambda_min = beta; values exactly (1 + alpha^2 beta^2)^{-1/2}.
  std::vector<std::pair<double, DiracDiagonal>> fractal;
  for (std::size_t m = 0; m <= 6; ++m) {
    const DiracWeights w = fractal_dirac_weights(0.5, 3, 3.0, m);
    const DiracDiagonal d = dirac_diagonal(w.alpha, w.beta, 16);
    CHECK(d.inverse_norm() == doctest::Approx(std::pow(0.5, 3.0 * m)).epsilon(1e-14));
    fractal.emplace_back(1.0, d);
  }
  const ResolventDecay f = resolvent_decay_check(fractal);
  for (std::size_t m = 0; m < fractal.size(); ++m) {
    const double beta = fractal[m].second.beta;
    CHECK(std::abs(f.values[m] - 1.0 / std::sqrt(1.0 + beta * beta)) <= 1e-15);
  }
  CHECK(f.passed);

  const ResolventDecay flat = resolvent_decay_check(std::vector<ResolventInput>(5, ResolventInput{1.0, 1.0}));
  CHECK(flat.values[0] == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK_FALSE(flat.strictly_decreasing);
  CHECK_FALSE(flat.passed);
  CHECK_THROWS_AS(resolvent_decay_check(std::vector<ResolventInput>{{1.0, 0.0}}), DomainError);
}

TEST_CASE("uniform bound check") {
  CHECK(uniform_bound_check({0.0, 0.0, 0.0}).passed);
  CHECK(uniform_bound_check({0.0, 0.0, 0.0}).sup == 0.0);
  const UniformBound flat = uniform_bound_check({1.0, 0.9, 0.95, 0.97});
  CHECK(flat.passed);
  CHECK(flat.sup == 1.0);
  const UniformBound rising = uniform_bound_check({1.0, 1.1, 1.2, 1.3});
  CHECK(rising.increasing_trend);
  CHECK_FALSE(rising.passed);
  CHECK_FALSE(uniform_bound_check({1.0, 0.5, 2.0}).passed);
  const UniformBound inf = uniform_bound_check({1.0, std::numeric_limits<double>::infinity()});
  CHECK_FALSE(inf.finite);
  CHECK_FALSE(inf.passed);
}

TEST_CASE("zeta term tables") {
  const auto terms = zeta_terms(bergman_zeta_series(1), 3.0, 30);
  // Level m of the n = 1 family: sum_k (k + m + 2)^{-s} = zeta(s, m + 2).
  CHECK(terms[0].term == doctest::Approx(kZeta3 - 1.0).epsilon(1e-13));
  CHECK(terms.back().cumulative < kZeta2 - kZeta3);
  CHECK(std::isinf(bergman_zeta_series(1).log_term(0, 1.0)));
  CHECK_THROWS_AS(bergman_zeta_series(0), DomainError);
}
