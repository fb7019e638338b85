#pragma once

// Degree-one calculus over the four generators (x1, x2, p1, p2) of the
// two-dimensional noncommutative Heisenberg algebra
//
//   [x1, x2] = i theta,   [x_i, p_j] = i hbar delta_ij,   [p1, p2] = i gamma.
//
// A commutation structure is stored as a real antisymmetric 4x4 matrix omega
// with [g_i, g_j] = i omega(i, j). Linear combinations are real 4-vectors in
// the same generator order, so [u, v] = i u^T omega v and a change of
// generators with rows M sends omega to M omega M^T.

#include <cmath>
#include <optional>
#include <sstream>
#include <string_view>

#include <Eigen/Core>

#include "ncweyl/error.hpp"

namespace ncweyl {

/// Global generator order. The canonical side uses (y1, y2, q1, q2) in the same slots.
enum Gen : int { X1 = 0, X2 = 1, P1 = 2, P2 = 3 };

template <typename Scalar>
using LinComb = Eigen::Matrix<Scalar, 4, 1>;

template <typename Scalar>
using StructureMatrix = Eigen::Matrix<Scalar, 4, 4>;

template <typename Scalar>
using Matrix4 = Eigen::Matrix<Scalar, 4, 4>;

template <typename Scalar>
using Vector2 = Eigen::Matrix<Scalar, 2, 1>;

inline constexpr double kDefaultCriticalTol = 1e-12;

enum class Phase { PositiveDelta, NegativeDelta, Critical };

constexpr std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::PositiveDelta: return "PositiveDelta";
    case Phase::NegativeDelta: return "NegativeDelta";
    case Phase::Critical: return "Critical";
  }
  return "unknown";
}

/// The parameter triple (theta, gamma, hbar). Validated on construction:
/// hbar > 0, theta >= 0, all finite.
template <typename Scalar>
class AlgebraParams {
 public:
  AlgebraParams(Scalar theta, Scalar gamma, Scalar hbar) : theta_(theta), gamma_(gamma), hbar_(hbar) {
    using std::isfinite;
    if (!isfinite(theta) || !isfinite(gamma) || !isfinite(hbar)) {
      throw Error(ErrorKind::InvalidParams, "algebra parameters must be finite");
    }
    if (!(hbar > Scalar(0))) {
      std::ostringstream os;
      os << "hbar must be positive (got " << hbar << ")";
      throw Error(ErrorKind::InvalidParams, os.str());
    }
    if (theta < Scalar(0)) {
      std::ostringstream os;
      os << "theta must be non-negative (got " << theta << ")";
      throw Error(ErrorKind::InvalidParams, os.str());
    }
  }

  Scalar theta() const { return theta_; }
  Scalar gamma() const { return gamma_; }
  Scalar hbar() const { return hbar_; }

  /// hbar^2 - gamma theta
  Scalar delta() const { return hbar_ * hbar_ - gamma_ * theta_; }

  template <typename Other>
  AlgebraParams<Other> cast() const {
    return {Other(theta_), Other(gamma_), Other(hbar_)};
  }

 private:
  Scalar theta_;
  Scalar gamma_;
  Scalar hbar_;
};

using AlgebraParamsd = AlgebraParams<double>;

template <typename Scalar>
LinComb<Scalar> unit(Gen g) {
  return LinComb<Scalar>::Unit(g);
}

template <typename Scalar>
StructureMatrix<Scalar> structure_matrix(const AlgebraParams<Scalar>& params) {
  StructureMatrix<Scalar> omega = StructureMatrix<Scalar>::Zero();
  omega(X1, X2) = params.theta();
  omega(X1, P1) = params.hbar();
  omega(X2, P2) = params.hbar();
  omega(P1, P2) = params.gamma();
  omega(X2, X1) = -params.theta();
  omega(P1, X1) = -params.hbar();
  omega(P2, X2) = -params.hbar();
  omega(P2, P1) = -params.gamma();
  return omega;
}

/// sigma * J: the canonical pattern [y_i, q_j] = i sigma delta_ij, all else zero.
template <typename Scalar>
StructureMatrix<Scalar> canonical_structure(Scalar sigma) {
  StructureMatrix<Scalar> omega = StructureMatrix<Scalar>::Zero();
  omega(0, 2) = sigma;
  omega(1, 3) = sigma;
  omega(2, 0) = -sigma;
  omega(3, 1) = -sigma;
  return omega;
}

/// The real s with [u, v] = i s. Summed over pairs i < j, so swapping u and v
/// negates every term and the result exactly.
template <typename Scalar>
Scalar commutator(const LinComb<Scalar>& u, const LinComb<Scalar>& v, const StructureMatrix<Scalar>& omega) {
  Scalar s(0);
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) s += omega(i, j) * (u(i) * v(j) - u(j) * v(i));
  }
  return s;
}

template <typename Scalar, typename Derived>
Matrix4<Scalar> transform_structure(const Eigen::MatrixBase<Derived>& map, const StructureMatrix<Scalar>& omega) {
  return map * omega * map.transpose();
}

/// Returns sigma when omega_prime matches sigma * J entrywise within
/// tol * max(1, |sigma|), otherwise nothing.
template <typename Scalar>
std::optional<Scalar> is_canonical(const Matrix4<Scalar>& omega_prime, Scalar tol) {
  using std::abs;
  using std::max;
  const Scalar sigma = (omega_prime(0, 2) + omega_prime(1, 3)) / Scalar(2);
  const Scalar bound = tol * max(Scalar(1), abs(sigma));
  const Scalar off = (omega_prime - canonical_structure(sigma)).cwiseAbs().maxCoeff();
  if (!(off <= bound)) return std::nullopt;
  return sigma;
}

template <typename Scalar>
Phase classify(const AlgebraParams<Scalar>& params, Scalar critical_tol = Scalar(kDefaultCriticalTol)) {
  const Scalar delta = params.delta();
  const Scalar band = critical_tol * params.hbar() * params.hbar();
  if (delta > band) return Phase::PositiveDelta;
  if (delta < -band) return Phase::NegativeDelta;
  return Phase::Critical;
}

}  // namespace ncweyl
