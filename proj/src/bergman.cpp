#include "fracspec/bergman.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fracspec/errors.hpp"
#include "fracspec/special.hpp"

namespace fracspec {

int total_degree(const MultiIndex& alpha) {
  int d = 0;
  for (int a : alpha) d += a;
  return d;
}

namespace {

// Multi-indices of length n and total degree g, first coordinate descending.
void append_grade(int n, int g, MultiIndex& prefix, std::vector<MultiIndex>& out) {
  if (static_cast<int>(prefix.size()) == n - 1) {
    prefix.push_back(g);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int a = g; a >= 0; --a) {
    prefix.push_back(a);
    append_grade(n, g - a, prefix, out);
    prefix.pop_back();
  }
}

std::uint64_t binomial_count(int top, int n) {
  // C(top, n), saturating.
  long double v = 1.0L;
  for (int i = 1; i <= n; ++i) v = v * (top - n + i) / i;
  if (v > static_cast<long double>(std::numeric_limits<std::uint64_t>::max())) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(std::llround(v));
}

}  // namespace

BallBasis::BallBasis(int n, double weight, int cutoff, std::uint64_t budget)
    : n_(n), weight_(weight), cutoff_(cutoff) {
  if (n < 1) throw DomainError("BallBasis: complex dimension must be >= 1");
  if (!(weight > -1.0)) throw DomainError("BallBasis: weight exponent must exceed -1");
  if (cutoff < 1) throw DomainError("BallBasis: cutoff must be >= 1");
  const std::uint64_t count = binomial_count(cutoff + n, n);
  if (count > budget) {
    throw ResourceError("BallBasis: C(K+n, n) = " + std::to_string(count) + " exceeds budget " +
                        std::to_string(budget));
  }
  MultiIndex prefix;
  for (int g = 0; g <= cutoff; ++g) append_grade(n, g, prefix, indices_);
  grades_.reserve(indices_.size());
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    grades_.push_back(total_degree(indices_[i]));
    lookup_.emplace(indices_[i], i);
  }
}

std::size_t BallBasis::position(const MultiIndex& alpha) const {
  auto it = lookup_.find(alpha);
  return it == lookup_.end() ? indices_.size() : it->second;
}

double BallBasis::log_normalization(std::size_t i) const {
  const MultiIndex& alpha = indices_[i];
  double log_alpha_factorial = 0.0;
  for (int a : alpha) log_alpha_factorial += log_factorial(a);
  const double top = grades_[i] + weight_ + n_;
  return 0.5 * (log_factorial(top) - log_factorial(weight_ + n_) - log_alpha_factorial);
}

double BallBasis::normalization(std::size_t i) const { return std::exp(log_normalization(i)); }

std::size_t BallBasis::grade_begin(int g) const {
  return static_cast<std::size_t>(std::lower_bound(grades_.begin(), grades_.end(), g) - grades_.begin());
}

std::size_t BallBasis::grade_end(int g) const {
  return static_cast<std::size_t>(std::upper_bound(grades_.begin(), grades_.end(), g) - grades_.begin());
}

namespace {

void check_coordinate(const BallBasis& basis, int j) {
  if (j < 1 || j > basis.dimension_n()) throw DomainError("coordinate index outside 1..n");
}

Matrix zero_matrix(const BallBasis& basis) {
  const auto d = static_cast<Eigen::Index>(basis.size());
  return Matrix::Zero(d, d);
}

}  // namespace

BallOperator shift_operator(const BallBasis& basis, int j) {
  check_coordinate(basis, j);
  Matrix s = zero_matrix(basis);
  for (std::size_t col = 0; col < basis.size(); ++col) {
    MultiIndex raised = basis.index(col);
    ++raised[static_cast<std::size_t>(j - 1)];
    const std::size_t row = basis.position(raised);
    if (row < basis.size()) s(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = 1.0;
  }
  return {std::move(s), "S_" + std::to_string(j)};
}

BallOperator partial_number_operator(const BallBasis& basis, int j) {
  check_coordinate(basis, j);
  Matrix r = zero_matrix(basis);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto e = static_cast<Eigen::Index>(i);
    r(e, e) = basis.index(i)[static_cast<std::size_t>(j - 1)];
  }
  return {std::move(r), "R_" + std::to_string(j)};
}

BallOperator toeplitz_zj(const BallBasis& basis, int j) {
  check_coordinate(basis, j);
  const double shift = basis.weight() + basis.dimension_n() + 1.0;
  Matrix t = zero_matrix(basis);
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const MultiIndex& alpha = basis.index(col);
    MultiIndex raised = alpha;
    ++raised[static_cast<std::size_t>(j - 1)];
    const std::size_t row = basis.position(raised);
    if (row >= basis.size()) continue;
    const double aj = alpha[static_cast<std::size_t>(j - 1)];
    t(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) =
        std::sqrt((aj + 1.0) / (basis.grade(col) + shift));
  }
  return {std::move(t), "T_z" + std::to_string(j)};
}

BallOperator inverse_toeplitz_r(const BallBasis& basis) {
  const double m = basis.weight();
  const double n = basis.dimension_n();
  Matrix d = zero_matrix(basis);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto e = static_cast<Eigen::Index>(i);
    d(e, e) = (basis.grade(i) + m + n + 1.0) / (m + 1.0);
  }
  return {std::move(d), "T_{-r}^{-1}"};
}

namespace {

// T_{z_j} as a column map: column c goes to row target[c] with weight[c].
struct ColumnMap {
  std::vector<std::size_t> target;
  std::vector<double> weight;
};

ColumnMap column_map(const BallBasis& basis, int j) {
  const double shift = basis.weight() + basis.dimension_n() + 1.0;
  ColumnMap map{std::vector<std::size_t>(basis.size(), basis.size()), std::vector<double>(basis.size(), 0.0)};
  for (std::size_t col = 0; col < basis.size(); ++col) {
    MultiIndex raised = basis.index(col);
    const double aj = raised[static_cast<std::size_t>(j - 1)]++;
    map.target[col] = basis.position(raised);
    map.weight[col] = std::sqrt((aj + 1.0) / (basis.grade(col) + shift));
  }
  return map;
}

// T x
Matrix apply_left(const ColumnMap& t, const Matrix& x) {
  Matrix y = Matrix::Zero(x.rows(), x.cols());
  for (std::size_t c = 0; c < t.target.size(); ++c) {
    if (t.target[c] < t.target.size()) {
      y.row(static_cast<Eigen::Index>(t.target[c])) += t.weight[c] * x.row(static_cast<Eigen::Index>(c));
    }
  }
  return y;
}

// T^* x
Matrix apply_adjoint_left(const ColumnMap& t, const Matrix& x) {
  Matrix y = Matrix::Zero(x.rows(), x.cols());
  for (std::size_t c = 0; c < t.target.size(); ++c) {
    if (t.target[c] < t.target.size()) {
      y.row(static_cast<Eigen::Index>(c)) = t.weight[c] * x.row(static_cast<Eigen::Index>(t.target[c]));
    }
  }
  return y;
}

}  // namespace

BallOperator toeplitz_monomial(const BallBasis& basis, const MultiIndex& alpha, const MultiIndex& beta) {
  const auto n = static_cast<std::size_t>(basis.dimension_n());
  if (alpha.size() != n || beta.size() != n) throw DomainError("toeplitz_monomial: multi-index length must be n");
  for (std::size_t j = 0; j < n; ++j) {
    if (alpha[j] < 0 || beta[j] < 0) throw DomainError("toeplitz_monomial: negative power");
  }
  if (2 * (total_degree(alpha) + total_degree(beta)) > basis.cutoff()) {
    throw DomainError("toeplitz_monomial: |alpha| + |beta| exceeds K / 2");
  }
  const auto d = static_cast<Eigen::Index>(basis.size());
  Matrix product = Matrix::Identity(d, d);
  std::vector<ColumnMap> maps;
  for (std::size_t j = 0; j < n; ++j) maps.push_back(column_map(basis, static_cast<int>(j) + 1));
  for (std::size_t j = 0; j < n; ++j) {
    for (int k = 0; k < alpha[j]; ++k) product = apply_left(maps[j], product);
  }
  for (std::size_t j = n; j-- > 0;) {
    for (int k = 0; k < beta[j]; ++k) product = apply_adjoint_left(maps[j], product);
  }
  return {std::move(product), "T_monomial"};
}

int total_degree(const BallPolynomial& p) {
  int d = 0;
  for (const BallMonomial& term : p) d = std::max(d, total_degree(term.alpha) + total_degree(term.beta));
  return d;
}

BallPolynomial radial_difference(const BallPolynomial& p) {
  BallPolynomial out;
  out.reserve(p.size());
  for (const BallMonomial& term : p) {
    BallMonomial t = term;
    t.coeff *= static_cast<double>(total_degree(term.alpha) - total_degree(term.beta));
    out.push_back(std::move(t));
  }
  return out;
}

BallOperator toeplitz_polynomial(const BallBasis& basis, const BallPolynomial& p) {
  Matrix sum = zero_matrix(basis);
  for (const BallMonomial& term : p) {
    if (term.coeff == Complex(0.0, 0.0)) continue;
    sum += term.coeff * toeplitz_monomial(basis, term.alpha, term.beta).matrix;
  }
  return {std::move(sum), "T_p"};
}

double verify_bergman_commutator(const BallBasis& basis, const BallPolynomial& p, int margin) {
  if (margin < total_degree(p)) throw DomainError("verify_bergman_commutator: margin must be >= deg p");
  if (2 * margin > basis.cutoff()) throw DomainError("verify_bergman_commutator: margin too large for K");

  const Matrix d = inverse_toeplitz_r(basis).matrix;
  const Matrix t = toeplitz_polynomial(basis, p).matrix;
  // [D, T]_{kj} = (d_k - d_j) T_{kj} for diagonal D.
  Matrix lhs(t.rows(), t.cols());
  for (Eigen::Index j = 0; j < t.cols(); ++j) {
    for (Eigen::Index k = 0; k < t.rows(); ++k) lhs(k, j) = (d(k, k) - d(j, j)) * t(k, j);
  }
  const Matrix rhs = toeplitz_polynomial(basis, radial_difference(p)).matrix / (basis.weight() + 1.0);
  const auto lo = static_cast<Eigen::Index>(basis.grade_begin(margin));
  const auto hi = static_cast<Eigen::Index>(basis.grade_end(basis.cutoff() - margin)) - 1;
  return max_entry_modulus(lhs - rhs, lo, hi);
}

DiracDiagonal ball_dirac(const BallBasis& basis, double alpha_weight) {
  if (!(alpha_weight > 0.0)) throw DomainError("ball_dirac: weight must be positive");
  const double m = basis.weight();
  const double n = basis.dimension_n();
  return dirac_diagonal(alpha_weight / (m + 1.0), alpha_weight * (m + n + 1.0) / (m + 1.0),
                        static_cast<std::size_t>(basis.cutoff()));
}

DiracDiagonal disk_fractal_dirac(double c, std::size_t n_maps, std::size_t level, std::size_t cutoff) {
  if (!(c > 0.0 && c < 1.0)) throw DomainError("disk_fractal_dirac: ratio must lie in (0, 1)");
  if (n_maps < 1) throw DomainError("disk_fractal_dirac: need N >= 1");
  const double m = static_cast<double>(level);
  const double nm = std::pow(static_cast<double>(n_maps), m);
  const double scale = std::pow(c, -2.0 * m);
  return dirac_diagonal(scale / (nm + 1.0), scale * (nm + 2.0) / (nm + 1.0), cutoff);
}

bool disk_fractal_admissible(double c, std::size_t n_maps) { return c * c * static_cast<double>(n_maps) > 1.0; }

std::vector<double> disk_fractal_log_constants(double c, std::size_t n_maps, std::size_t level,
                                               std::size_t cutoff) {
  const double m = static_cast<double>(level);
  const double nm = std::pow(static_cast<double>(n_maps), m);
  std::vector<double> out;
  out.reserve(cutoff + 1);
  for (std::size_t j = 0; j <= cutoff; ++j) {
    const double jj = static_cast<double>(j);
    const double log_ratio =
        log_factorial(nm + jj + 1.0) - log_factorial(nm) - log_factorial(jj) - std::log(std::numbers::pi);
    out.push_back(-m * (nm + jj + 1.0) * std::log(c) + 0.5 * log_ratio);
  }
  return out;
}

bool LogScaled::finite() const { return log_value <= std::log(1e300); }

double LogScaled::value() const {
  return finite() ? std::exp(log_value) : std::numeric_limits<double>::infinity();
}

std::vector<LogScaled> disk_fractal_basis_constants(double c, std::size_t n_maps, std::size_t level,
                                                    std::size_t cutoff) {
  std::vector<LogScaled> out;
  for (double v : disk_fractal_log_constants(c, n_maps, level, cutoff)) out.push_back({v});
  return out;
}

}  // namespace fracspec
