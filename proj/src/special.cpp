#include "fracspec/special.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "fracspec/errors.hpp"
#include "fracspec/summation.hpp"

namespace fracspec {
namespace {

// B_{2k} / (2k)! for k = 1..5.
constexpr std::array<double, 5> kBernoulliOverFactorial = {
    1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0, -1.0 / 1209600.0, 1.0 / 47900160.0};

// Falling factorial p (p-1) ... (p-r+1).
double falling(double p, int r) {
  double value = 1.0;
  for (int i = 0; i < r; ++i) value *= p - i;
  return value;
}

}  // namespace

double log_factorial(double n) {
  if (n < 0) throw DomainError("log_factorial: negative argument");
  return std::lgamma(n + 1.0);
}

double log_binomial(double n, double k) {
  if (k < 0 || k > n) throw DomainError("log_binomial: need 0 <= k <= n");
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

double log_hurwitz_zeta(double s, double x) {
  if (!(s > 1.0)) throw DomainError("log_hurwitz_zeta: need s > 1");
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("log_hurwitz_zeta: need finite x > 0");

  const double switch_point = 16.0 + 2.0 * s;
  CompensatedSum<double> direct;
  double big_x = x;
  while (big_x < switch_point) {
    direct += std::pow(big_x, -s);
    big_x += 1.0;
  }

  // zeta(s, X) = X^{1-s} * bracket, bracket = 1/(s-1) + 1/(2X) + ...
  const double inv = 1.0 / big_x;
  double bracket = 1.0 / (s - 1.0) + 0.5 * inv;
  double rising = s;       // s (s+1) ... (s+2k-2)
  double inv_power = inv;  // X^{-(2k-1)} relative to X^{-s}, times X^{-1}
  for (std::size_t k = 0; k < kBernoulliOverFactorial.size(); ++k) {
    bracket += kBernoulliOverFactorial[k] * rising * inv_power * inv;
    const double a = s + 2.0 * static_cast<double>(k) + 1.0;
    rising *= a * (a + 1.0);
    inv_power *= inv * inv;
  }
  const double log_tail = (1.0 - s) * std::log(big_x) + std::log(bracket);
  const double head = direct.value();
  if (head == 0.0) return log_tail;
  const double log_head = std::log(head);
  const double hi = std::max(log_head, log_tail);
  return hi + std::log(std::exp(log_head - hi) + std::exp(log_tail - hi));
}

double polynomial_dirichlet_tail(std::span<const double> coeffs, double s, double t0) {
  if (t0 < 1.0) throw DomainError("polynomial_dirichlet_tail: need t0 >= 1");
  int degree = -1;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] != 0.0) degree = static_cast<int>(i);
  }
  if (degree < 0) return 0.0;
  if (!(s > degree + 1.0)) return std::numeric_limits<double>::infinity();

  auto h = [&](double t) {
    double v = 0.0;
    for (int i = degree; i >= 0; --i) v = v * t + coeffs[static_cast<std::size_t>(i)];
    return v * std::pow(t, -s);
  };

  CompensatedSum<double> total;
  constexpr int kDirect = 256;
  double t = t0;
  for (int i = 0; i < kDirect; ++i, t += 1.0) total += h(t);

  // Euler-Maclaurin on h(t) = sum_i c_i t^{i-s} from t onwards.
  for (int i = 0; i <= degree; ++i) {
    const double c = coeffs[static_cast<std::size_t>(i)];
    if (c == 0.0) continue;
    const double p = i - s;
    double part = -std::pow(t, p + 1.0) / (p + 1.0) + 0.5 * std::pow(t, p);
    for (std::size_t k = 0; k < kBernoulliOverFactorial.size(); ++k) {
      const int r = 2 * static_cast<int>(k) + 1;
      part -= kBernoulliOverFactorial[k] * falling(p, r) * std::pow(t, p - r);
    }
    total += c * part;
  }
  return total.value();
}

}  // namespace fracspec
