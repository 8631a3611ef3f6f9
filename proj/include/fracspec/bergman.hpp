#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fracspec/linalg.hpp"
#include "fracspec/toeplitz.hpp"

namespace fracspec {

using MultiIndex = std::vector<int>;

/// |alpha| = alpha_1 + ... + alpha_n.
int total_degree(const MultiIndex& alpha);

/// Monomial basis u_{m,alpha} of the weighted Bergman space A^2_m(B^n),
/// truncated at total degree K, in graded-lexicographic order: grade by
/// grade, and within a grade (1,0) before (0,1).
class BallBasis {
 public:
  BallBasis(int n, double weight, int cutoff, std::uint64_t budget = 200'000);

  int dimension_n() const { return n_; }
  double weight() const { return weight_; }
  int cutoff() const { return cutoff_; }
  std::size_t size() const { return indices_.size(); }

  const std::vector<MultiIndex>& indices() const { return indices_; }
  const MultiIndex& index(std::size_t i) const { return indices_[i]; }
  int grade(std::size_t i) const { return grades_[i]; }

  /// Position of alpha, or size() when |alpha| > K.
  std::size_t position(const MultiIndex& alpha) const;

  /// log of ((|alpha| + m + n)! / ((m + n)! alpha!))^{1/2}.
  double log_normalization(std::size_t i) const;
  double normalization(std::size_t i) const;

  /// First and last position holding grade g.
  std::size_t grade_begin(int g) const;
  std::size_t grade_end(int g) const;

 private:
  int n_;
  double weight_;
  int cutoff_;
  std::vector<MultiIndex> indices_;
  std::vector<int> grades_;
  std::map<MultiIndex, std::size_t> lookup_;
};

/// Matrix in a BallBasis ordering, with a provenance tag.
struct BallOperator {
  Matrix matrix;
  std::string provenance;
};

/// T_{z_j} (j is 1-based): u_alpha -> ((alpha_j + 1)/(|alpha| + m + n + 1))^{1/2} u_{alpha + 1_j}.
/// The image of the top grade leaves the truncation and is dropped.
BallOperator toeplitz_zj(const BallBasis& basis, int j);

/// Shift S_j : u_alpha -> u_{alpha + 1_j}, top grade dropped.
BallOperator shift_operator(const BallBasis& basis, int j);

/// Number operator R_j = z_j d/dz_j (diagonal alpha_j); R = sum_j R_j is the grade.
BallOperator partial_number_operator(const BallBasis& basis, int j);

/// (T_{-r})^{-1} = (R + m + n + 1) / (m + 1), diagonal.
BallOperator inverse_toeplitz_r(const BallBasis& basis);

/// T_{z^alpha zbar^beta} = (prod_j (T_{z_j}^*)^{beta_j}) (prod_j T_{z_j}^{alpha_j}).
/// DomainError when |alpha| + |beta| > K / 2.
BallOperator toeplitz_monomial(const BallBasis& basis, const MultiIndex& alpha, const MultiIndex& beta);

/// Term coeff z^alpha zbar^beta.
struct BallMonomial {
  Complex coeff{1.0, 0.0};
  MultiIndex alpha;
  MultiIndex beta;
};
using BallPolynomial = std::vector<BallMonomial>;

/// Largest |alpha| + |beta| over the terms.
int total_degree(const BallPolynomial& p);

/// Coefficients p_{alpha beta} (|alpha| - |beta|) of (R - Rbar) p.
BallPolynomial radial_difference(const BallPolynomial& p);

/// T_p as a linear combination of toeplitz_monomial.
BallOperator toeplitz_polynomial(const BallBasis& basis, const BallPolynomial& p);

/// max entry of [T_{-r}^{-1}, T_p] - T_{(R - Rbar) p} / (m + 1) on grades
/// margin..K - margin. DomainError when margin < deg p.
double verify_bergman_commutator(const BallBasis& basis, const BallPolynomial& p, int margin);

/// alpha_weight (T_{-r})^{-1}: entries alpha_weight (|alpha| + m + n + 1)/(m + 1) by grade,
/// one diagonal entry per grade (the degeneracy is C(k + n - 1, n - 1)).
DiracDiagonal ball_dirac(const BallBasis& basis, double alpha_weight);

/// D_w = c^{-2m} (R + N^m + 2) / (N^m + 1) on the weighted Bergman space of the
/// disk of radius c^m with weight exponent N^m. Never rejects c^2 N <= 1;
/// callers that need the dimension claim test disk_fractal_admissible.
DiracDiagonal disk_fractal_dirac(double c, std::size_t n_maps, std::size_t level, std::size_t cutoff);

/// c^2 N > 1.
bool disk_fractal_admissible(double c, std::size_t n_maps);

/// log of c^{-m(N^m + j + 1)} ((N^m + j + 1)! / (N^m! j! pi))^{1/2}, j = 0..K.
std::vector<double> disk_fractal_log_constants(double c, std::size_t n_maps, std::size_t level,
                                               std::size_t cutoff);

/// A normalization constant kept in log space when it would overflow.
struct LogScaled {
  double log_value = 0.0;
  bool finite() const;
  double value() const;  // +inf when not finite()
};

std::vector<LogScaled> disk_fractal_basis_constants(double c, std::size_t n_maps, std::size_t level,
                                                    std::size_t cutoff);

}  // namespace fracspec
