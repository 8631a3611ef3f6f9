#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace fracspec {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Deterministic source of uniform doubles. Bits come straight from the
/// standardized mt19937_64 engine so sequences are identical across
/// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// AB - BA. Throws DomainError on shape mismatch.
Matrix commutator(const Matrix& a, const Matrix& b);

/// Largest modulus over the entries of `m` restricted to rows and columns
/// in [lo, hi].
double max_entry_modulus(const Matrix& m, Eigen::Index lo, Eigen::Index hi);
double max_entry_modulus(const Matrix& m);

struct NormOptions {
  double tol = 1e-10;
  int max_iterations = 10000;
  std::uint64_t seed = 0x5eed;
  /// On non-convergence, take the top eigenvalue of M*M from a dense
  /// Hermitian solve instead of throwing.
  bool dense_fallback = false;
};

/// Largest singular value by power iteration on M*M. Starts from the
/// normalized all-ones vector and performs one restart from a seeded random
/// vector; the larger of the two Rayleigh quotients wins.
/// Throws NumericError (carrying the best estimate) when neither run meets
/// the tolerance within the iteration cap, unless dense_fallback is set.
double operator_norm(const Matrix& m, const NormOptions& options = {});

}  // namespace fracspec
