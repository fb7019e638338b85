#include <doctest.h>

#include <random>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "ncweyl/kron_operator.hpp"

using namespace ncweyl;

namespace {

CMatrix random_matrix(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix m(n, n);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = Complex(g(rng), g(rng));
  return m;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) { return Eigen::kroneckerProduct(a, b).eval(); }

}  // namespace

TEST_CASE("dense expansion follows the slow-major index convention") {
  std::mt19937_64 rng(1);
  const CMatrix a = random_matrix(3, rng), b = random_matrix(4, rng);
  const KronOperator op = KronOperator::product_term(a, b);
  CHECK((op.to_dense() - kron(a, b)).cwiseAbs().maxCoeff() < 1e-14);
  // entry ((i_s, i_f), (j_s, j_f)) sits at (i_s * n_f + i_f, j_s * n_f + j_f)
  CHECK(std::abs(op.to_dense()(1 * 4 + 2, 2 * 4 + 3) - a(1, 2) * b(2, 3)) < 1e-14);

  const KronOperator ls = KronOperator::local_sum(a, b);
  const CMatrix expected = kron(a, CMatrix::Identity(4, 4)) + kron(CMatrix::Identity(3, 3), b);
  CHECK((ls.to_dense() - expected).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("apply, product, adjoint and compress agree with dense algebra") {
  std::mt19937_64 rng(2);
  const KronOperator p = KronOperator::local_sum(random_matrix(5, rng), random_matrix(3, rng)) +
                         KronOperator::product_term(random_matrix(5, rng), random_matrix(3, rng));
  const KronOperator q = KronOperator::product_term(random_matrix(5, rng), random_matrix(3, rng));
  const CMatrix pd = p.to_dense(), qd = q.to_dense();

  const CVector v = random_matrix(15, rng).col(0);
  CHECK((p.apply(v) - pd * v).norm() < 1e-12);
  CHECK(((p * q).to_dense() - pd * qd).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((commutator(p, q).to_dense() - (pd * qd - qd * pd)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((p.adjoint().to_dense() - pd.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(((Complex(0.5, -2.0) * p).to_dense() - Complex(0.5, -2.0) * pd).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(((p - q).to_dense() - (pd - qd)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(std::abs(p.max_abs() - pd.cwiseAbs().maxCoeff()) < 1e-12);

  // keeping the first 3 slow and 2 fast states
  const CMatrix block = p.compress(3, 2).to_dense();
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      CHECK(std::abs(block(i, j) - pd((i / 2) * 3 + i % 2, (j / 2) * 3 + j % 2)) < 1e-14);
    }
  }
}

TEST_CASE("local sums") {
  std::mt19937_64 rng(3);
  const CMatrix a = random_matrix(4, rng), b = random_matrix(4, rng);
  const auto parts = KronOperator::local_sum(a, b).as_local_sum();
  REQUIRE(parts.has_value());
  CHECK((parts->first - a).isZero(0.0));
  CHECK((parts->second - b).isZero(0.0));
  CHECK_FALSE(KronOperator::product_term(a, b).as_local_sum().has_value());

  // sums of local sums stay local
  const KronOperator s = 2.0 * KronOperator::local_sum(a, b) + KronOperator::local_sum(b, a);
  CHECK(s.as_local_sum().has_value());
  CHECK(s.terms().size() == 2);

  const KronOperator id = KronOperator::identity(4, 4);
  CHECK(((id * id).to_dense() - CMatrix::Identity(16, 16)).isZero(0.0));
}

TEST_CASE("spectral norms") {
  std::mt19937_64 rng(4);
  const CMatrix m = random_matrix(12, rng);
  Eigen::JacobiSVD<CMatrix> svd(m);
  CHECK(spectral_norm_dense(m) == doctest::Approx(svd.singularValues()(0)).epsilon(1e-12));

  const KronOperator op = KronOperator::local_sum(random_matrix(18, rng), random_matrix(18, rng)) +
                          KronOperator::product_term(random_matrix(18, rng), random_matrix(18, rng));
  const double dense = spectral_norm_dense(op.to_dense());
  CHECK(spectral_norm_lanczos(op) == doctest::Approx(dense).epsilon(1e-8));
  CHECK(spectral_norm(op) == doctest::Approx(dense).epsilon(1e-8));

  CHECK(spectral_norm(KronOperator::zero(20, 20)) == 0.0);
  CHECK(spectral_norm_lanczos(KronOperator::identity(20, 20)) == doctest::Approx(1.0));
}

TEST_CASE("hermitian exponential") {
  std::mt19937_64 rng(5);
  const CMatrix r = random_matrix(6, rng);
  const CMatrix h = (r + r.adjoint()) / 2.0;
  const CMatrix u = hermitian_exp(h, 0.7);
  CHECK((u.adjoint() * u - CMatrix::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-13);
  const CMatrix reference = (Complex(0.0, 0.7) * h).exp();
  CHECK((u - reference).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((hermitian_exp(h, 0.0) - CMatrix::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-14);
}
