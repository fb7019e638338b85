#pragma once

// Truncated matrix realizations of the algebra: ladder and position operators
// on Fock space, the Hilbert-Schmidt representation (positions by left
// multiplication, momenta by the scaled adjoint action), canonical oscillator
// pairs, Weyl unitaries, defect measurements and the constructive intertwiner.
//
// Relations only hold away from the truncation edge; every check compresses
// onto the interior (basis indices below N - margin in each factor).

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ncweyl/algebra.hpp"
#include "ncweyl/darboux.hpp"
#include "ncweyl/kron_operator.hpp"

namespace ncweyl {

inline constexpr int kDefaultMargin = 2;
inline constexpr double kDefaultVacuumTol = 0.1;
inline constexpr double kHermiticityTol = 1e-12;
inline constexpr double kUnitarityTol = 1e-11;
/// Phase defects below this are treated as rounding noise in convergence studies.
inline constexpr double kDefectFloor = 1e-12;

/// Truncation level N: basis |0>, ..., |N-1>.
class FockSpace {
 public:
  explicit FockSpace(Eigen::Index dim);
  Eigen::Index dim() const { return dim_; }

 private:
  Eigen::Index dim_;
};

using HSState = CMatrix;

/// A set of generators realized on a truncated space, with the algebra they
/// are meant to satisfy: either canonical with constant sigma, or the
/// noncommutative structure of params.
struct FockRep {
  std::vector<KronOperator> generators;
  Eigen::Index mode_dim = 0;
  double sigma = 0.0;
  std::optional<AlgebraParamsd> params;
  int interior_margin = kDefaultMargin;

  Eigen::Index dim() const { return generators.empty() ? 0 : generators.front().dim(); }
  /// Unit for normalizing defects: hbar for noncommutative targets, sigma otherwise.
  double scale() const { return params ? params->hbar() : sigma; }
  /// Expected commutators: [g_i, g_j] = i * target(i, j).
  Eigen::MatrixXd target_structure() const;
};

struct DefectReport {
  std::string name;
  double defect = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  Eigen::Index dim = 0;
  int margin = 0;
};

std::pair<CMatrix, CMatrix> ladder(Eigen::Index dim);
std::pair<CMatrix, CMatrix> ladder(const FockSpace& space);

/// x1 = sqrt(theta/2) (b + b^H), x2 = -i sqrt(theta/2) (b - b^H).
std::pair<CMatrix, CMatrix> position_ops(const FockSpace& space, double theta);

/// tr(phi^H psi)
Complex hs_inner(const HSState& phi, const HSState& psi);

/// X_i psi = x_i psi, P_i psi = (hbar / theta) eps_ij [x_j, psi], on the N^2-dimensional HS space.
FockRep hs_rep(const FockSpace& space, double theta, double hbar);

/// One mode: y = sqrt(sigma/2) (a + a^H), q = -i sqrt(sigma/2) (a - a^H).
FockRep canonical_pair(const FockSpace& space, double sigma);

/// (y1, y2, q1, q2) = (y (x) I, I (x) y, q (x) I, I (x) q).
FockRep two_mode_canonical(const FockSpace& space, double sigma);

/// new_k = sum_l M(k, l) g_l with real coefficients.
FockRep transform_generators(const FockRep& rep, const Eigen::MatrixXd& M);

/// (x1, x2, p1, p2) = M^{-1} (y1, y2, q1, q2). Canonical sigma must match map.sigma.
FockRep realize_nc(const DarbouxMapd& map, const FockRep& canonical);

/// Conjugates every generator by T: G -> T G T^H (dense result).
FockRep conjugate(const FockRep& rep, const CMatrix& unitary);

/// Haar-random unitary (QR of a complex Gaussian matrix with phase fix).
CMatrix random_unitary(Eigen::Index dim, unsigned long long seed);

/// ||Pi ([A_i, A_j] - expected I) Pi|| / max(|expected|, scale)
DefectReport commutator_defect(const FockRep& rep, int i, int j, Complex expected, int margin,
                               double tolerance = 1e-10);

/// All pairs i < j against rep.target_structure().
std::vector<DefectReport> algebra_defects(const FockRep& rep, int margin, double tolerance = 1e-10);

/// max_k ||G_k - G_k^H||_max
double hermiticity_defect(const FockRep& rep);

enum class WeylFamily { U, V };

/// exp(i (c1 G_1 + c2 G_2)) with (G_1, G_2) the first (U) or second (V) half of the generators.
KronOperator weyl_numeric(const FockRep& rep, WeylFamily family, const Eigen::Vector2d& coeffs);

double unitarity_defect(const KronOperator& w);

/// ||Pi (U V - e^{i omega} V U) Pi|| with Pi the margin-k interior.
DefectReport phase_defect(const KronOperator& u, const KronOperator& v, double omega, int margin,
                          double tolerance = kDefectFloor);

/// Same with Pi the first `block` basis states in each factor.
DefectReport phase_defect_on_block(const KronOperator& u, const KronOperator& v, double omega, Eigen::Index block,
                                   double tolerance = kDefectFloor);

struct PhaseConvergence {
  std::vector<Eigen::Index> dims;
  std::vector<double> defects;
  Eigen::Index block = 0;
  bool non_increasing = false;
  bool converging = false;
};

/// Phase defect along a ladder of truncations, measured on a fixed block: the
/// margin-k interior of the smallest truncation. Non-increasing means every
/// step satisfies d_next <= max((1 + jitter) d_prev, floor); converging also
/// requires d_last <= max(floor, d_first / 2).
PhaseConvergence phase_convergence(const std::function<FockRep(Eigen::Index)>& build,
                                   const Eigen::Vector2d& alpha, const Eigen::Vector2d& beta, double omega,
                                   const std::vector<Eigen::Index>& dims, int margin = kDefaultMargin,
                                   double jitter = 0.1, double floor = kDefectFloor);

struct VacuumSpace {
  CMatrix basis;
  int count = 0;
  Eigen::VectorXd spectrum;
};

/// Joint near-vacuum of a_k = (y_k + i q_k) / sqrt(2 sigma): eigenvectors of
/// sum_k a_k^H a_k with eigenvalue below tol.
VacuumSpace vacuum_space(const FockRep& rep, double sigma, double tol = kDefaultVacuumTol);

struct Intertwiner {
  CMatrix W;
  double residual = 0.0;
  double isometry_defect = 0.0;
  CMatrix basis_a;
  CMatrix basis_b;
};

/// Builds number bases from each vacuum by repeated creation operators and
/// returns W = B_b B_a^H on the first n_interior vectors. The residual is
/// max_k ||B_a^H G_k^A B_a - B_b^H G_k^B B_b|| / sigma, which equals the
/// compressed intertwining defect ||Pi_B (W G^A - G^B W) Pi_A|| / sigma.
Intertwiner intertwiner(const FockRep& rep_a, const FockRep& rep_b, double sigma, Eigen::Index n_interior,
                        double vacuum_tol = kDefaultVacuumTol);

}  // namespace ncweyl
