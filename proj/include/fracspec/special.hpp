#pragma once

#include <span>

namespace fracspec {

/// log(n!) via lgamma; exact for the small integers used in tests.
double log_factorial(double n);

/// log C(n, k) for real n >= k >= 0.
double log_binomial(double n, double k);

/// log of the Hurwitz zeta function sum_{j>=0} (j + x)^{-s}, s > 1, x > 0.
/// Direct terms until j + x >= 16, then Euler-Maclaurin with the integral
/// term and four Bernoulli corrections. The result is assembled in log
/// space, so x may be as large as the double range allows.
double log_hurwitz_zeta(double s, double x);

/// sum_{t >= t0} q(t) t^{-s} for the polynomial q(t) = sum_i coeffs[i] t^i.
/// Requires s > deg(q) + 1 and t0 >= 1; returns +inf when the series
/// diverges. Direct terms up to t0 + 256 then Euler-Maclaurin.
double polynomial_dirichlet_tail(std::span<const double> coeffs, double s, double t0);

}  // namespace fracspec
