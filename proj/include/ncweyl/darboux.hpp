#pragma once

// Real linear changes of generators that bring the noncommutative algebra to
// canonical form [y_i, q_j] = i sigma delta_ij.
//
// Positive discriminant (delta = hbar^2 - gamma theta > 0):
//   y_i = x_i + a eps_ij p_j,   q_i = p_i - b eps_ij x_j,
//   a = (hbar +- sqrt(delta)) / gamma,  b = (hbar +- sqrt(delta)) / theta  (same sign),
//   sigma = 2 (delta / gamma theta) (hbar +- sqrt(delta)).
//
// Negative discriminant:
//   y1 = gamma x2 + a p1,  y2 = theta p2 - a x1,
//   q1 = b x1 - theta p2,  q2 = gamma x2 + b p1,
//   a, b the two roots of hbar z^2 + 2 gamma theta z + gamma theta hbar (opposite signs),
//   sigma = -2 (gamma theta / hbar) delta.
//
// The rows of M are (y1, y2, q1, q2) over (x1, x2, p1, p2).

#include <cmath>
#include <limits>
#include <sstream>
#include <string_view>

#include <Eigen/Dense>

#include "ncweyl/algebra.hpp"

namespace ncweyl {

enum class Branch { Plus, Minus };

constexpr std::string_view to_string(Branch branch) {
  return branch == Branch::Plus ? "plus" : "minus";
}

constexpr Branch opposite(Branch branch) {
  return branch == Branch::Plus ? Branch::Minus : Branch::Plus;
}

enum class DarbouxCase { PositiveDelta, NegativeDelta, GammaZeroLimit, ThetaZeroLimit, CommutativeIdentity };

constexpr std::string_view to_string(DarbouxCase kind) {
  switch (kind) {
    case DarbouxCase::PositiveDelta: return "PositiveDelta";
    case DarbouxCase::NegativeDelta: return "NegativeDelta";
    case DarbouxCase::GammaZeroLimit: return "GammaZeroLimit";
    case DarbouxCase::ThetaZeroLimit: return "ThetaZeroLimit";
    case DarbouxCase::CommutativeIdentity: return "CommutativeIdentity";
  }
  return "unknown";
}

template <typename Scalar>
struct DarbouxMap {
  Matrix4<Scalar> M;
  /// Effective Planck constant of the canonical pair, stored from the closed form.
  Scalar sigma;
  Branch branch;
  DarbouxCase kind;
  AlgebraParams<Scalar> params;
  /// Coefficients of the unnormalized rows.
  Scalar a;
  Scalar b;
};

using DarbouxMapd = DarbouxMap<double>;

/// Relative |gamma| (resp. theta) below which the Plus branch is refused by solve().
inline constexpr double kPlusBranchCutoff = 1e-8;
inline constexpr double kSingularCondition = 1e12;

namespace detail {

template <typename Scalar>
Matrix4<Scalar> positive_delta_rows(Scalar a, Scalar b) {
  Matrix4<Scalar> m;
  // clang-format off
  m << Scalar(1), Scalar(0), Scalar(0), a,
       Scalar(0), Scalar(1), -a,        Scalar(0),
       Scalar(0), -b,        Scalar(1), Scalar(0),
       b,         Scalar(0), Scalar(0), Scalar(1);
  // clang-format on
  return m;
}

template <typename Scalar>
Matrix4<Scalar> negative_delta_rows(Scalar theta, Scalar gamma, Scalar a, Scalar b) {
  Matrix4<Scalar> m;
  // clang-format off
  m << Scalar(0), gamma,     a,         Scalar(0),
       -a,        Scalar(0), Scalar(0), theta,
       b,         Scalar(0), Scalar(0), -theta,
       Scalar(0), gamma,     b,         Scalar(0);
  // clang-format on
  return m;
}

template <typename Scalar>
void require_phase(const AlgebraParams<Scalar>& params, Phase wanted, Scalar critical_tol) {
  const Phase got = classify(params, critical_tol);
  if (got == wanted) return;
  std::ostringstream os;
  os << "parameters (theta=" << params.theta() << ", gamma=" << params.gamma() << ", hbar=" << params.hbar()
     << ") are in phase " << to_string(got) << ", expected " << to_string(wanted);
  throw Error(ErrorKind::WrongPhase, os.str());
}

}  // namespace detail

template <typename Scalar>
DarbouxMap<Scalar> solve_positive_delta(const AlgebraParams<Scalar>& params, Branch branch,
                                        Scalar critical_tol = Scalar(kDefaultCriticalTol)) {
  using std::sqrt;
  detail::require_phase(params, Phase::PositiveDelta, critical_tol);
  const Scalar theta = params.theta(), gamma = params.gamma(), hbar = params.hbar();
  if (gamma == Scalar(0) || theta == Scalar(0)) {
    throw Error(ErrorKind::DegenerateParams, "gamma = 0 or theta = 0 needs the limit solvers");
  }
  const Scalar delta = params.delta();
  const Scalar big = hbar + sqrt(delta);  // hbar + sqrt(delta), no cancellation
  Scalar a, b, sigma;
  if (branch == Branch::Plus) {
    a = big / gamma;
    b = big / theta;
    sigma = Scalar(2) * delta * big / (gamma * theta);
  } else {
    // hbar - sqrt(delta) = gamma theta / (hbar + sqrt(delta))
    a = theta / big;
    b = gamma / big;
    sigma = Scalar(2) * delta / big;
  }
  return {detail::positive_delta_rows(a, b), sigma, branch, DarbouxCase::PositiveDelta, params, a, b};
}

template <typename Scalar>
DarbouxMap<Scalar> solve_negative_delta(const AlgebraParams<Scalar>& params, Branch branch,
                                        Scalar critical_tol = Scalar(kDefaultCriticalTol)) {
  using std::sqrt;
  detail::require_phase(params, Phase::NegativeDelta, critical_tol);
  const Scalar theta = params.theta(), gamma = params.gamma(), hbar = params.hbar();
  const Scalar gt = gamma * theta;
  const Scalar delta = params.delta();
  const Scalar root = sqrt(-gt * delta);
  // Both roots share the sign of -gamma theta; take the large one directly and
  // the small one from the product of roots, which equals gamma theta.
  const Scalar minus_root = -(gt + root) / hbar;
  const Scalar plus_root = gt / minus_root;
  const Scalar a = branch == Branch::Plus ? plus_root : minus_root;
  const Scalar b = branch == Branch::Plus ? minus_root : plus_root;
  const Scalar sigma = -Scalar(2) * gt * delta / hbar;
  return {detail::negative_delta_rows(theta, gamma, a, b), sigma, branch, DarbouxCase::NegativeDelta, params, a, b};
}

/// gamma -> 0 limit of the Minus branch: y_i = x_i + (theta / 2 hbar) eps_ij p_j, q_i = p_i.
template <typename Scalar>
DarbouxMap<Scalar> solve_gamma_zero(const AlgebraParams<Scalar>& params) {
  if (params.gamma() != Scalar(0)) throw Error(ErrorKind::DegenerateParams, "solve_gamma_zero needs gamma = 0");
  if (params.theta() == Scalar(0)) throw Error(ErrorKind::DegenerateParams, "theta = gamma = 0 is already canonical");
  const Scalar a = params.theta() / (Scalar(2) * params.hbar());
  const Scalar b(0);
  return {detail::positive_delta_rows(a, b), params.hbar(), Branch::Minus, DarbouxCase::GammaZeroLimit, params, a, b};
}

/// theta -> 0 mirror: y_i = x_i, q_i = p_i - (gamma / 2 hbar) eps_ij x_j.
template <typename Scalar>
DarbouxMap<Scalar> solve_theta_zero(const AlgebraParams<Scalar>& params) {
  if (params.theta() != Scalar(0)) throw Error(ErrorKind::DegenerateParams, "solve_theta_zero needs theta = 0");
  if (params.gamma() == Scalar(0)) throw Error(ErrorKind::DegenerateParams, "theta = gamma = 0 is already canonical");
  const Scalar a(0);
  const Scalar b = params.gamma() / (Scalar(2) * params.hbar());
  return {detail::positive_delta_rows(a, b), params.hbar(), Branch::Minus, DarbouxCase::ThetaZeroLimit, params, a, b};
}

/// Dispatches on the phase and on exact zeros of theta and gamma. The limit
/// solvers are branch-free; exact zeros route there whatever branch is asked.
template <typename Scalar>
DarbouxMap<Scalar> solve(const AlgebraParams<Scalar>& params, Branch branch,
                         Scalar critical_tol = Scalar(kDefaultCriticalTol)) {
  using std::abs;
  const Scalar theta = params.theta(), gamma = params.gamma(), hbar = params.hbar();
  if (theta == Scalar(0) && gamma == Scalar(0)) {
    return {Matrix4<Scalar>::Identity(), hbar, branch, DarbouxCase::CommutativeIdentity, params, Scalar(0), Scalar(0)};
  }
  const Phase phase = classify(params, critical_tol);
  if (phase == Phase::Critical) {
    std::ostringstream os;
    os << "critical line hbar^2 = gamma theta: delta = " << params.delta() << " for (theta=" << theta
       << ", gamma=" << gamma << ", hbar=" << hbar << ")";
    throw Error(ErrorKind::CriticalLine, os.str());
  }
  if (gamma == Scalar(0)) return solve_gamma_zero(params);
  if (theta == Scalar(0)) return solve_theta_zero(params);
  if (phase == Phase::NegativeDelta) return solve_negative_delta(params, branch, critical_tol);

  if (branch == Branch::Plus) {
    const Scalar scale = Scalar(kPlusBranchCutoff) * hbar * hbar;
    if (abs(gamma) * theta < scale) {
      std::ostringstream os;
      os << "Plus branch diverges as gamma theta -> 0 (gamma theta = " << gamma * theta
         << "); use the Minus branch";
      throw Error(ErrorKind::IllConditioned, os.str());
    }
  }
  return solve_positive_delta(params, branch, critical_tol);
}

/// Sigma from the closed forms with no phase guard. Tends to 0 at the critical
/// line on the Minus branch. Infinite for Plus when gamma theta = 0.
template <typename Scalar>
Scalar closed_form_sigma(const AlgebraParams<Scalar>& params, Branch branch) {
  using std::sqrt;
  const Scalar gt = params.gamma() * params.theta();
  const Scalar delta = params.delta();
  const Scalar hbar = params.hbar();
  if (delta < Scalar(0)) return -Scalar(2) * gt * delta / hbar;
  const Scalar big = hbar + sqrt(delta);
  if (branch == Branch::Minus) return Scalar(2) * delta / big;
  if (gt == Scalar(0)) return std::numeric_limits<Scalar>::infinity();
  return Scalar(2) * delta * big / gt;
}

/// Rescales the q-rows so that sigma == target. The y-rows are left untouched.
template <typename Scalar>
DarbouxMap<Scalar> normalize(const DarbouxMap<Scalar>& map, Scalar target) {
  DarbouxMap<Scalar> out = map;
  if (map.sigma == target) return out;
  out.M.template bottomRows<2>() *= target / map.sigma;
  out.sigma = target;
  return out;
}

template <typename Scalar>
DarbouxMap<Scalar> normalize(const DarbouxMap<Scalar>& map) {
  return normalize(map, map.params.hbar());
}

/// M^{-1}: expresses (x1, x2, p1, p2) in terms of (y1, y2, q1, q2).
template <typename Scalar>
Matrix4<Scalar> invert(const DarbouxMap<Scalar>& map) {
  Eigen::JacobiSVD<Matrix4<Scalar>> svd(map.M);
  const auto& sv = svd.singularValues();
  if (!(sv(3) > Scalar(0)) || sv(0) / sv(3) > Scalar(kSingularCondition)) {
    std::ostringstream os;
    os << "Darboux map is numerically singular (condition " << sv(0) / sv(3) << ")";
    throw Error(ErrorKind::SingularMap, os.str());
  }
  return map.M.inverse();
}

}  // namespace ncweyl
