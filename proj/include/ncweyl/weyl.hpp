#pragma once

// Phase forms of the Weyl systems U(alpha) = exp(i alpha . y), V(beta) = exp(i beta . q)
// built on a canonical pair with [y_i, q_j] = i sigma delta_ij. With a central
// commutator the exchange relation U(alpha) V(beta) = exp(i omega) V(beta) U(alpha)
// holds exactly with omega(alpha, beta) = -sigma (alpha . beta).

#include <cmath>
#include <optional>

#include "ncweyl/darboux.hpp"

namespace ncweyl {

template <typename Scalar>
Scalar weyl_phase(Scalar sigma, const Vector2<Scalar>& alpha, const Vector2<Scalar>& beta) {
  return -sigma * alpha.dot(beta);
}

template <typename Scalar>
Scalar weyl_phase(const DarbouxMap<Scalar>& map, const Vector2<Scalar>& alpha, const Vector2<Scalar>& beta) {
  return weyl_phase(map.sigma, alpha, beta);
}

/// Phase form written directly in the algebra parameters, without going
/// through sigma:
///   positive delta:  -2 (delta / gamma theta) (hbar +- sqrt(delta)) (alpha . beta)
///   negative delta:   2 delta (gamma theta / hbar) (alpha . beta)
/// Empty for the limit and identity cases, where the expressions are 0/0.
template <typename Scalar>
std::optional<Scalar> phase_form(const DarbouxMap<Scalar>& map, const Vector2<Scalar>& alpha,
                                 const Vector2<Scalar>& beta) {
  using std::sqrt;
  const auto& p = map.params;
  const Scalar delta = p.delta();
  const Scalar ab = alpha.dot(beta);
  switch (map.kind) {
    case DarbouxCase::PositiveDelta: {
      const Scalar sign = map.branch == Branch::Plus ? Scalar(1) : Scalar(-1);
      return -Scalar(2) * (delta / (p.gamma() * p.theta())) * (p.hbar() + sign * sqrt(delta)) * ab;
    }
    case DarbouxCase::NegativeDelta:
      return Scalar(2) * delta * (p.gamma() * p.theta() / p.hbar()) * ab;
    default:
      return std::nullopt;
  }
}

/// Nondegeneracy of omega: |sigma| > critical_tol * hbar.
template <typename Scalar>
bool nondegenerate(const DarbouxMap<Scalar>& map, Scalar critical_tol = Scalar(kDefaultCriticalTol)) {
  using std::abs;
  return abs(map.sigma) > critical_tol * map.params.hbar();
}

/// Composite exponent of exp(i alpha . g) exp(i alpha' . g) for a family of
/// mutually commuting generators.
template <typename Scalar>
Vector2<Scalar> compose_exponents(const Vector2<Scalar>& alpha, const Vector2<Scalar>& alpha_prime) {
  Vector2<Scalar> out;
  out(0) = alpha(0) + alpha_prime(0);
  out(1) = alpha(1) + alpha_prime(1);
  return out;
}

/// Exponent-addition defect of one Weyl family whose two generators commute:
/// U(alpha) U(alpha') = U(alpha (+) alpha') with (+) plain vector addition.
template <typename Scalar>
Scalar weyl_group_law_check(const Vector2<Scalar>& alpha, const Vector2<Scalar>& alpha_prime) {
  const Vector2<Scalar> composed = compose_exponents(alpha, alpha_prime);
  return ((alpha + alpha_prime) - composed).norm();
}

/// The commutator [g_1, g_2] (coefficient of i) inside the U family (rows 0, 1)
/// or V family (rows 2, 3) after transforming omega by the map. Zero for a
/// valid map; used to flag maps whose Weyl families are not abelian.
template <typename Scalar>
Scalar family_commutator(const DarbouxMap<Scalar>& map, bool v_family) {
  const Matrix4<Scalar> transformed = transform_structure(map.M, structure_matrix(map.params));
  return v_family ? transformed(2, 3) : transformed(0, 1);
}

}  // namespace ncweyl
