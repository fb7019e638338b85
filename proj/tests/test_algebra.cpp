#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "ncweyl/algebra.hpp"

using namespace ncweyl;

namespace {

LinComb<double> lc(double x1, double x2, double p1, double p2) { return LinComb<double>(x1, x2, p1, p2); }

}  // namespace

TEST_CASE("structure matrix matches the commutator table") {
  const auto omega = structure_matrix(AlgebraParamsd(1.0, 1.0, 1.0));
  CHECK(omega(0, 1) == 1.0);
  CHECK(omega(0, 2) == 1.0);
  CHECK(omega(1, 3) == 1.0);
  CHECK(omega(2, 3) == 1.0);
  CHECK(omega(0, 3) == 0.0);
  CHECK(omega(1, 2) == 0.0);
  CHECK((omega + omega.transpose()).isZero(0.0));

  const auto commutative = structure_matrix(AlgebraParamsd(0.0, 0.0, 1.0));
  CHECK((commutative - canonical_structure(1.0)).isZero(0.0));

  const auto om = structure_matrix(AlgebraParamsd(2.0, 0.5, 1.0));
  CHECK(om(0, 1) == 2.0);
  CHECK(om(2, 3) == 0.5);
  CHECK(om(1, 0) == -2.0);
}

TEST_CASE("commutator of linear combinations") {
  const auto omega = structure_matrix(AlgebraParamsd(1.0, 1.0, 1.0));
  CHECK(commutator(unit<double>(X1), unit<double>(P1), omega) == 1.0);
  const LinComb<double> u = lc(0.3, -1.2, 2.0, 0.7);
  CHECK(commutator(u, u, omega) == 0.0);

  // [x1 + p2, x2 - p1] = theta - hbar - hbar + gamma by hand
  const auto om = structure_matrix(AlgebraParamsd(1.0, 2.0, 3.0));
  CHECK(commutator(lc(1, 0, 0, 1), lc(0, 1, -1, 0), om) == doctest::Approx(-3.0));
}

TEST_CASE("commutator is antisymmetric and bilinear") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  for (int k = 0; k < 200; ++k) {
    const auto omega = structure_matrix(AlgebraParamsd(std::abs(d(rng)), d(rng), std::abs(d(rng)) + 0.1));
    const LinComb<double> u = lc(d(rng), d(rng), d(rng), d(rng));
    const LinComb<double> v = lc(d(rng), d(rng), d(rng), d(rng));
    const LinComb<double> w = lc(d(rng), d(rng), d(rng), d(rng));
    CHECK(commutator(u, v, omega) == -commutator(v, u, omega));
    const double s = d(rng);
    CHECK(commutator<double>(u + s * w, v, omega) ==
          doctest::Approx(commutator(u, v, omega) + s * commutator(w, v, omega)).epsilon(1e-12));
  }
}

TEST_CASE("transform_structure") {
  const auto omega = structure_matrix(AlgebraParamsd(1.0, 1.0, 1.0));
  CHECK((transform_structure(Matrix4<double>::Identity(), omega) - omega).isZero(0.0));

  // swapping x1 and x2 permutes rows and columns
  Matrix4<double> swap = Matrix4<double>::Identity();
  swap.row(0).swap(swap.row(1));
  const auto swapped = transform_structure(swap, omega);
  CHECK(swapped(0, 1) == -omega(0, 1));
  CHECK(swapped(0, 3) == omega(1, 3));
  CHECK(swapped(1, 2) == omega(0, 2));

  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  Matrix4<double> m;
  for (int i = 0; i < 16; ++i) m(i / 4, i % 4) = g(rng);
  const auto t = transform_structure(m, omega);
  CHECK((t + t.transpose()).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("is_canonical") {
  CHECK(is_canonical(canonical_structure(1.0), 1e-12) == 1.0);
  CHECK(is_canonical(canonical_structure(-2.5), 1e-12) == -2.5);
  CHECK_FALSE(is_canonical(structure_matrix(AlgebraParamsd(1.0, 1.0, 1.0)), 1e-12).has_value());
  Matrix4<double> off = canonical_structure(1.0);
  off(0, 2) = 1.1;
  off(2, 0) = -1.1;
  CHECK_FALSE(is_canonical(off, 1e-12).has_value());
}

TEST_CASE("classify") {
  CHECK(classify(AlgebraParamsd(1.0, 1.0, 1.0)) == Phase::Critical);
  CHECK(classify(AlgebraParamsd(1.0, 0.0, 1.0)) == Phase::PositiveDelta);
  CHECK(classify(AlgebraParamsd(1.0, 2.0, 1.0)) == Phase::NegativeDelta);
  CHECK(classify(AlgebraParamsd(2.0, 0.5, 1.0)) == Phase::Critical);
  CHECK(classify(AlgebraParamsd(1.0, 1.0 + 1e-14, 1.0)) == Phase::Critical);
  CHECK(classify(AlgebraParamsd(1.0, 1.0 + 1e-9, 1.0)) == Phase::NegativeDelta);
  CHECK(classify(AlgebraParamsd(1.0, 1.0 + 1e-9, 1.0), 1e-6) == Phase::Critical);
  CHECK(classify(AlgebraParamsd(3.0, -2.0, 0.5)) == Phase::PositiveDelta);
  CHECK(to_string(Phase::NegativeDelta) == "NegativeDelta");
}

TEST_CASE("invalid parameters are rejected") {
  const auto kind_of = [](double t, double g, double h) {
    try {
      AlgebraParamsd p(t, g, h);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::BasisBreakdown;
  };
  CHECK(kind_of(1.0, 0.0, 0.0) == ErrorKind::InvalidParams);
  CHECK(kind_of(1.0, 0.0, -1.0) == ErrorKind::InvalidParams);
  CHECK(kind_of(-1.0, 0.0, 1.0) == ErrorKind::InvalidParams);
  CHECK(kind_of(std::numeric_limits<double>::quiet_NaN(), 0.0, 1.0) == ErrorKind::InvalidParams);
  CHECK(kind_of(1.0, std::numeric_limits<double>::infinity(), 1.0) == ErrorKind::InvalidParams);
  CHECK(to_string(ErrorKind::InvalidParams) == std::string("invalid_params"));
}

TEST_CASE("classify is invariant under theta -> s theta, gamma -> gamma / s") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> d(0.1, 4.0), s(0.25, 4.0);
  for (int k = 0; k < 500; ++k) {
    const double theta = d(rng), gamma = d(rng), hbar = d(rng), scale = s(rng);
    const AlgebraParamsd p(theta, gamma, hbar);
    if (std::abs(p.delta()) < 1e-9 * hbar * hbar) continue;
    CHECK(classify(p) == classify(AlgebraParamsd(scale * theta, gamma / scale, hbar)));
  }
}
