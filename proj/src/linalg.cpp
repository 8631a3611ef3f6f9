#include "fracspec/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "fracspec/errors.hpp"

namespace fracspec {

Matrix commutator(const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw DomainError("commutator: operands must be square of equal size");
  }
  return a * b - b * a;
}

double max_entry_modulus(const Matrix& m, Eigen::Index lo, Eigen::Index hi) {
  double best = 0.0;
  for (Eigen::Index j = lo; j <= hi; ++j) {
    for (Eigen::Index i = lo; i <= hi; ++i) {
      best = std::max(best, std::abs(m(i, j)));
    }
  }
  return best;
}

double max_entry_modulus(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

namespace {

struct PowerResult {
  double lambda = 0.0;  // eigenvalue estimate of M*M
  bool converged = false;
};

PowerResult power_iterate(const Matrix& gram, Vector v, const NormOptions& options) {
  PowerResult result;
  double previous = -1.0;
  for (int it = 0; it < options.max_iterations; ++it) {
    const double norm = v.norm();
    if (norm == 0.0) {
      result.converged = true;
      result.lambda = 0.0;
      return result;
    }
    v /= norm;
    Vector w = gram * v;
    const double lambda = v.dot(w).real();
    result.lambda = std::max(result.lambda, lambda);
    const double residual = (w - lambda * v).norm();
    const double scale = std::max(lambda, 1e-300);
    if (previous >= 0.0 && std::abs(lambda - previous) <= options.tol * 1e-2 * scale &&
        residual <= std::sqrt(options.tol) * scale) {
      result.converged = true;
      return result;
    }
    if (residual <= 1e-14 * scale) {
      result.converged = true;
      return result;
    }
    previous = lambda;
    v = std::move(w);
  }
  return result;
}

}  // namespace

double operator_norm(const Matrix& m, const NormOptions& options) {
  if (m.size() == 0) return 0.0;
  if (!m.allFinite()) throw DomainError("operator_norm: non-finite entries");
  if (m.cwiseAbs().maxCoeff() == 0.0) return 0.0;

  const Matrix gram = m.adjoint() * m;
  const Eigen::Index n = gram.rows();

  Vector ones = Vector::Ones(n) / std::sqrt(static_cast<double>(n));
  const PowerResult first = power_iterate(gram, ones, options);

  Rng rng(options.seed);
  Vector random(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    random(i) = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  }
  const PowerResult second = power_iterate(gram, random, options);

  const double lambda = std::max(first.lambda, second.lambda);
  const double estimate = std::sqrt(std::max(lambda, 0.0));
  if (!first.converged && !second.converged) {
    if (options.dense_fallback) {
      Eigen::SelfAdjointEigenSolver<Matrix> solver(gram, Eigen::EigenvaluesOnly);
      if (solver.info() == Eigen::Success) return std::sqrt(std::max(solver.eigenvalues().maxCoeff(), 0.0));
    }
    throw NumericError("operator_norm: power iteration did not converge", estimate);
  }
  return estimate;
}

}  // namespace fracspec
