#include <doctest.h>

#include <cmath>
#include <random>

#include "ncweyl/weyl.hpp"

using namespace ncweyl;

TEST_CASE("weyl phase examples") {
  const auto map = solve(AlgebraParamsd(1.0, 2.0, 1.0), Branch::Minus);
  const Eigen::Vector2d e1(1.0, 0.0), e2(0.0, 1.0);
  CHECK(weyl_phase(map, e1, e1) == doctest::Approx(-4.0));
  // printed omega_2 = 2 delta (gamma theta / hbar) (alpha . beta)
  CHECK(*phase_form(map, e1, e1) == doctest::Approx(2.0 * -1.0 * 2.0 / 1.0));
  CHECK(weyl_phase(map, Eigen::Vector2d(0.0, 0.0), Eigen::Vector2d(0.3, -2.0)) == 0.0);
  CHECK(weyl_phase(map, e1, e2) == 0.0);

  const Eigen::Vector2d small(0.1, 0.0);
  CHECK(std::abs(weyl_phase(map, small, small) - (-0.04)) < 1e-12);
  CHECK(std::abs(*phase_form(map, small, small) - (-0.04)) < 1e-12);

  CHECK_FALSE(phase_form(solve(AlgebraParamsd(1.0, 0.0, 1.0), Branch::Minus), e1, e1).has_value());
}

TEST_CASE("weyl phase matches the printed forms") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> th(0.1, 4.0), ga(-4.0, 4.0), hb(0.1, 4.0), co(-1.0, 1.0);
  for (int k = 0; k < 1000; ++k) {
    const AlgebraParamsd p(th(rng), ga(rng), hb(rng));
    const double delta = p.delta(), gt = p.gamma() * p.theta(), hbar = p.hbar();
    if (std::abs(delta) < 1e-6 * hbar * hbar || std::abs(gt) < 1e-6) continue;
    const Eigen::Vector2d alpha(co(rng), co(rng)), beta(co(rng), co(rng));
    const double ab = alpha(0) * beta(0) + alpha(1) * beta(1);
    for (const Branch b : {Branch::Plus, Branch::Minus}) {
      const auto map = solve(p, b);
      double printed;
      if (delta > 0) {
        const double s = b == Branch::Plus ? 1.0 : -1.0;
        printed = -2.0 * (delta / gt) * (hbar + s * std::sqrt(delta)) * ab;
      } else {
        printed = 2.0 * delta * (gt / hbar) * ab;
      }
      CHECK(std::abs(weyl_phase(map, alpha, beta) - printed) <= 1e-10 * std::abs(printed) + 1e-300);
    }
  }
}

TEST_CASE("weyl phase is bilinear and antisymmetric under exchange") {
  const auto map = solve(AlgebraParamsd(0.8, 0.3, 1.1), Branch::Minus);
  const Eigen::Vector2d a(0.2, -0.7), b(1.3, 0.4), c(-0.5, 0.9);
  CHECK(weyl_phase(map, Eigen::Vector2d(a + 2.0 * c), b) ==
        doctest::Approx(weyl_phase(map, a, b) + 2.0 * weyl_phase(map, c, b)));
  CHECK(weyl_phase(map, a, b) == doctest::Approx(weyl_phase(map, b, a)));
}

TEST_CASE("nondegenerate") {
  CHECK(nondegenerate(solve(AlgebraParamsd(1.0, 2.0, 1.0), Branch::Plus)));
  CHECK(nondegenerate(solve(AlgebraParamsd(1.0, 0.5, 1.0), Branch::Minus)));
  auto map = solve(AlgebraParamsd(1.0, 0.5, 1.0), Branch::Minus);
  map.sigma = 0.0;
  CHECK_FALSE(nondegenerate(map));
  map.sigma = 1e-15;
  CHECK_FALSE(nondegenerate(map, 1e-12));
  CHECK_FALSE(nondegenerate(map, 1e-12));

  const AlgebraParamsd critical(2.0, 0.5, 1.0);
  map.params = critical;
  map.sigma = closed_form_sigma(critical, Branch::Minus);
  CHECK_FALSE(nondegenerate(map));
}

TEST_CASE("group law and family commutators") {
  CHECK(weyl_group_law_check(Eigen::Vector2d(1, 2), Eigen::Vector2d(3, 4)) == 0.0);
  CHECK(weyl_group_law_check(Eigen::Vector2d(0, 0), Eigen::Vector2d(-0.3, 7)) == 0.0);
  CHECK((compose_exponents(Eigen::Vector2d(1, 2), Eigen::Vector2d(3, 4)) - Eigen::Vector2d(4, 6)).isZero(0.0));

  for (const auto& p : {AlgebraParamsd(1.0, 2.0, 1.0), AlgebraParamsd(1.0, 0.3, 1.0), AlgebraParamsd(1.0, 0.0, 1.0)}) {
    const auto map = solve(p, Branch::Minus);
    CHECK(std::abs(family_commutator(map, false)) < 1e-12);
    CHECK(std::abs(family_commutator(map, true)) < 1e-12);
  }

  // corrupting the y1 row breaks [y1, y2] = 0, which the group-law check cannot see
  auto corrupted = solve(AlgebraParamsd(1.0, 0.3, 1.0), Branch::Minus);
  corrupted.M(0, 3) += 0.25;
  CHECK(std::abs(family_commutator(corrupted, false)) > 1e-3);
  CHECK(weyl_group_law_check(Eigen::Vector2d(0.1, 0.2), Eigen::Vector2d(0.3, 0.4)) == 0.0);
}

TEST_CASE("weyl phase is homogeneous") {
  const auto map = solve(AlgebraParamsd(1.2, -0.6, 0.9), Branch::Plus);
  const Eigen::Vector2d a(0.3, -1.1), b(0.8, 0.25);
  for (const double s : {-2.0, 0.5, 3.0}) {
    for (const double t : {-0.1, 1.0, 7.0}) {
      CHECK(weyl_phase(map, Eigen::Vector2d(s * a), Eigen::Vector2d(t * b)) ==
            doctest::Approx(s * t * weyl_phase(map, a, b)).epsilon(1e-14));
    }
  }
}
