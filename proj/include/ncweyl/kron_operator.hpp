#pragma once

// Operators on a two-factor space C^{n_slow} (x) C^{n_fast}, stored as a short
// sum of Kronecker products sum_t A_t (x) B_t. Composite index is
// i_slow * n_fast + i_fast, which matches kron(A, B) and column-major
// vectorization vec(X) of an n_fast x n_slow matrix X, so that
// (A (x) B) vec(X) = vec(B X A^T).
//
// Single-mode operators use n_fast = 1. Generators of every representation
// built here are local sums S (x) I + I (x) F, which are closed under real
// linear combination and commutators and exponentiate factor by factor.

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace ncweyl {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

class KronOperator {
 public:
  struct Term {
    CMatrix slow;
    CMatrix fast;
  };

  KronOperator() = default;
  KronOperator(Eigen::Index slow_dim, Eigen::Index fast_dim) : slow_dim_(slow_dim), fast_dim_(fast_dim) {}

  static KronOperator zero(Eigen::Index slow_dim, Eigen::Index fast_dim) { return {slow_dim, fast_dim}; }
  static KronOperator identity(Eigen::Index slow_dim, Eigen::Index fast_dim);
  /// A single-factor operator (fast dimension 1).
  static KronOperator dense(const CMatrix& m);
  /// slow (x) I + I (x) fast
  static KronOperator local_sum(const CMatrix& slow, const CMatrix& fast);
  static KronOperator product_term(const CMatrix& slow, const CMatrix& fast);

  Eigen::Index slow_dim() const { return slow_dim_; }
  Eigen::Index fast_dim() const { return fast_dim_; }
  Eigen::Index dim() const { return slow_dim_ * fast_dim_; }
  const std::vector<Term>& terms() const { return terms_; }

  CMatrix to_dense() const;
  CVector apply(const CVector& v) const;
  KronOperator adjoint() const;

  /// Compression onto the first keep_slow x keep_fast basis states.
  KronOperator compress(Eigen::Index keep_slow, Eigen::Index keep_fast) const;

  /// Largest |entry| of the full matrix, computed block by block.
  double max_abs() const;

  /// (slow part, fast part) if every term has an identity factor.
  std::optional<std::pair<CMatrix, CMatrix>> as_local_sum() const;

  KronOperator& operator+=(const KronOperator& other);
  KronOperator& operator-=(const KronOperator& other);
  KronOperator& operator*=(Complex s);

  friend KronOperator operator+(KronOperator lhs, const KronOperator& rhs) { return lhs += rhs; }
  friend KronOperator operator-(KronOperator lhs, const KronOperator& rhs) { return lhs -= rhs; }
  friend KronOperator operator*(Complex s, KronOperator op) { return op *= s; }
  friend KronOperator operator*(KronOperator op, Complex s) { return op *= s; }
  friend KronOperator operator*(double s, KronOperator op) { return op *= Complex(s); }
  friend KronOperator operator*(const KronOperator& lhs, const KronOperator& rhs);

 private:
  void add_term(CMatrix slow, CMatrix fast);
  /// Folds all terms with an identity factor into at most two local terms.
  void simplify();

  Eigen::Index slow_dim_ = 0;
  Eigen::Index fast_dim_ = 0;
  std::vector<Term> terms_;
};

KronOperator commutator(const KronOperator& a, const KronOperator& b);

/// Largest singular value. Dense eigen-solve of D^H D for small operators,
/// Lanczos with full reorthogonalization otherwise.
double spectral_norm(const KronOperator& op);

/// Dense path only; exposed for cross-checking the Lanczos path.
double spectral_norm_dense(const CMatrix& m);
double spectral_norm_lanczos(const KronOperator& op, int max_steps = 120);

/// exp(i t H) for hermitian H via its spectral decomposition.
CMatrix hermitian_exp(const CMatrix& h, double t = 1.0);

}  // namespace ncweyl
