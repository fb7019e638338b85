#include "ncweyl/kron_operator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

namespace ncweyl {

namespace {

bool exactly_identity(const CMatrix& m) {
  if (m.rows() != m.cols()) return false;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (m(i, j) != (i == j ? Complex(1.0) : Complex(0.0))) return false;
    }
  }
  return true;
}

constexpr Eigen::Index kDenseNormLimit = 300;

}  // namespace

KronOperator KronOperator::identity(Eigen::Index slow_dim, Eigen::Index fast_dim) {
  KronOperator op(slow_dim, fast_dim);
  op.terms_.push_back({CMatrix::Identity(slow_dim, slow_dim), CMatrix::Identity(fast_dim, fast_dim)});
  return op;
}

KronOperator KronOperator::dense(const CMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("KronOperator::dense needs a square matrix");
  KronOperator op(m.rows(), 1);
  op.terms_.push_back({m, CMatrix::Identity(1, 1)});
  return op;
}

KronOperator KronOperator::local_sum(const CMatrix& slow, const CMatrix& fast) {
  KronOperator op(slow.rows(), fast.rows());
  op.terms_.push_back({slow, CMatrix::Identity(fast.rows(), fast.rows())});
  op.terms_.push_back({CMatrix::Identity(slow.rows(), slow.rows()), fast});
  return op;
}

KronOperator KronOperator::product_term(const CMatrix& slow, const CMatrix& fast) {
  KronOperator op(slow.rows(), fast.rows());
  op.terms_.push_back({slow, fast});
  return op;
}

CMatrix KronOperator::to_dense() const {
  CMatrix out = CMatrix::Zero(dim(), dim());
  for (const auto& t : terms_) out += Eigen::kroneckerProduct(t.slow, t.fast).eval();
  return out;
}

CVector KronOperator::apply(const CVector& v) const {
  if (v.size() != dim()) throw std::invalid_argument("KronOperator::apply: dimension mismatch");
  CMatrix y = CMatrix::Zero(fast_dim_, slow_dim_);
  const Eigen::Map<const CMatrix> x(v.data(), fast_dim_, slow_dim_);
  for (const auto& t : terms_) y.noalias() += t.fast * x * t.slow.transpose();
  return Eigen::Map<const CVector>(y.data(), dim());
}

KronOperator KronOperator::adjoint() const {
  KronOperator op(slow_dim_, fast_dim_);
  for (const auto& t : terms_) op.terms_.push_back({t.slow.adjoint(), t.fast.adjoint()});
  return op;
}

KronOperator KronOperator::compress(Eigen::Index keep_slow, Eigen::Index keep_fast) const {
  if (keep_slow > slow_dim_ || keep_fast > fast_dim_ || keep_slow < 0 || keep_fast < 0) {
    throw std::invalid_argument("KronOperator::compress: block larger than the space");
  }
  KronOperator op(keep_slow, keep_fast);
  for (const auto& t : terms_) {
    op.terms_.push_back({t.slow.topLeftCorner(keep_slow, keep_slow), t.fast.topLeftCorner(keep_fast, keep_fast)});
  }
  op.simplify();
  return op;
}

double KronOperator::max_abs() const {
  double best = 0.0;
  CMatrix block(fast_dim_, fast_dim_);
  for (Eigen::Index j = 0; j < slow_dim_; ++j) {
    for (Eigen::Index i = 0; i < slow_dim_; ++i) {
      bool any = false;
      block.setZero();
      for (const auto& t : terms_) {
        const Complex c = t.slow(i, j);
        if (c == Complex(0.0)) continue;
        block += c * t.fast;
        any = true;
      }
      if (any) best = std::max(best, block.cwiseAbs().maxCoeff());
    }
  }
  return best;
}

std::optional<std::pair<CMatrix, CMatrix>> KronOperator::as_local_sum() const {
  CMatrix slow = CMatrix::Zero(slow_dim_, slow_dim_);
  CMatrix fast = CMatrix::Zero(fast_dim_, fast_dim_);
  for (const auto& t : terms_) {
    if (exactly_identity(t.fast)) {
      slow += t.slow;
    } else if (exactly_identity(t.slow)) {
      fast += t.fast;
    } else {
      return std::nullopt;
    }
  }
  return std::make_pair(std::move(slow), std::move(fast));
}

void KronOperator::add_term(CMatrix slow, CMatrix fast) {
  terms_.push_back({std::move(slow), std::move(fast)});
}

void KronOperator::simplify() {
  std::vector<Term> kept;
  std::optional<CMatrix> slow_sum;
  std::optional<CMatrix> fast_sum;
  for (auto& t : terms_) {
    if (exactly_identity(t.fast)) {
      if (slow_sum) {
        *slow_sum += t.slow;
      } else {
        slow_sum = std::move(t.slow);
      }
    } else if (exactly_identity(t.slow)) {
      if (fast_sum) {
        *fast_sum += t.fast;
      } else {
        fast_sum = std::move(t.fast);
      }
    } else {
      kept.push_back(std::move(t));
    }
  }
  if (slow_sum) kept.push_back({std::move(*slow_sum), CMatrix::Identity(fast_dim_, fast_dim_)});
  if (fast_sum) kept.push_back({CMatrix::Identity(slow_dim_, slow_dim_), std::move(*fast_sum)});
  terms_ = std::move(kept);
}

KronOperator& KronOperator::operator+=(const KronOperator& other) {
  if (other.slow_dim_ != slow_dim_ || other.fast_dim_ != fast_dim_) {
    throw std::invalid_argument("KronOperator: factor dimensions differ");
  }
  for (const auto& t : other.terms_) terms_.push_back(t);
  simplify();
  return *this;
}

KronOperator& KronOperator::operator-=(const KronOperator& other) {
  return *this += Complex(-1.0) * other;
}

KronOperator& KronOperator::operator*=(Complex s) {
  for (auto& t : terms_) {
    if (exactly_identity(t.slow) && !exactly_identity(t.fast)) {
      t.fast *= s;
    } else {
      t.slow *= s;
    }
  }
  return *this;
}

KronOperator operator*(const KronOperator& lhs, const KronOperator& rhs) {
  if (lhs.slow_dim_ != rhs.slow_dim_ || lhs.fast_dim_ != rhs.fast_dim_) {
    throw std::invalid_argument("KronOperator: factor dimensions differ");
  }
  KronOperator out(lhs.slow_dim_, lhs.fast_dim_);
  for (const auto& l : lhs.terms_) {
    for (const auto& r : rhs.terms_) out.add_term(l.slow * r.slow, l.fast * r.fast);
  }
  out.simplify();
  return out;
}

KronOperator commutator(const KronOperator& a, const KronOperator& b) {
  return a * b - b * a;
}

double spectral_norm_dense(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  const CMatrix gram = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(gram, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

double spectral_norm_lanczos(const KronOperator& op, int max_steps) {
  const Eigen::Index n = op.dim();
  if (n == 0) return 0.0;
  const KronOperator adj = op.adjoint();
  const Eigen::Index steps = std::min<Eigen::Index>(n, max_steps);

  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> gauss;
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(gauss(rng), gauss(rng));
  v.normalize();

  CMatrix basis(n, steps);
  std::vector<double> alpha;
  std::vector<double> beta;
  basis.col(0) = v;
  double scale = 0.0;
  for (Eigen::Index j = 0; j < steps; ++j) {
    CVector w = adj.apply(op.apply(basis.col(j)));
    const double a = basis.col(j).dot(w).real();
    alpha.push_back(a);
    scale = std::max(scale, std::abs(a));
    for (int pass = 0; pass < 2; ++pass) {
      const auto prev = basis.leftCols(j + 1);
      w -= prev * (prev.adjoint() * w);
    }
    const double b = w.norm();
    if (j + 1 == steps || b <= 1e-14 * scale || b == 0.0) break;
    beta.push_back(b);
    basis.col(j + 1) = w / b;
  }
  if (scale == 0.0) return 0.0;

  const Eigen::Index m = static_cast<Eigen::Index>(alpha.size());
  Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), m);
  Eigen::VectorXd sub(std::max<Eigen::Index>(m - 1, 0));
  for (Eigen::Index i = 0; i + 1 < m; ++i) sub(i) = beta[i];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

double spectral_norm(const KronOperator& op) {
  if (op.dim() <= kDenseNormLimit) return spectral_norm_dense(op.to_dense());
  return spectral_norm_lanczos(op);
}

CMatrix hermitian_exp(const CMatrix& h, double t) {
  const CMatrix herm = (h + h.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm);
  const Eigen::VectorXcd phases =
      (Complex(0.0, t) * es.eigenvalues().cast<Complex>()).array().exp().matrix();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace ncweyl
