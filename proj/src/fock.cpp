#include "ncweyl/fock.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

namespace ncweyl {

namespace {

constexpr Complex kI(0.0, 1.0);

KronOperator slow_local(const CMatrix& a, Eigen::Index fast_dim) {
  return KronOperator::product_term(a, CMatrix::Identity(fast_dim, fast_dim));
}

KronOperator fast_local(Eigen::Index slow_dim, const CMatrix& b) {
  return KronOperator::product_term(CMatrix::Identity(slow_dim, slow_dim), b);
}

/// Interior block sizes; single-state factors are kept whole.
std::pair<Eigen::Index, Eigen::Index> interior(const KronOperator& op, Eigen::Index margin) {
  const auto keep = [margin](Eigen::Index n) { return n > 1 ? n - margin : n; };
  const Eigen::Index ks = keep(op.slow_dim());
  const Eigen::Index kf = keep(op.fast_dim());
  if (ks <= 0 || kf <= 0) {
    std::ostringstream os;
    os << "margin " << margin << " leaves no interior in a " << op.slow_dim() << " x " << op.fast_dim()
       << " space";
    throw Error(ErrorKind::EmptyInterior, os.str());
  }
  return {ks, kf};
}

bool factors_hermitian(const CMatrix& m) {
  if (m.size() == 0) return true;
  const double size = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= kHermiticityTol * size;
}

std::string pair_name(const FockRep& rep, int i, int j) {
  static const char* nc_names[] = {"x1", "x2", "p1", "p2"};
  static const char* canon_names[] = {"y1", "y2", "q1", "q2"};
  static const char* single_names[] = {"y", "q"};
  const char** names = rep.generators.size() == 2 ? single_names : (rep.params ? nc_names : canon_names);
  return std::string("[") + names[i] + "," + names[j] + "]";
}

void enumerate_occupations(int modes, int total, std::vector<int>& current, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(current.size()) == modes - 1) {
    current.push_back(total);
    out.push_back(current);
    current.pop_back();
    return;
  }
  for (int n = total; n >= 0; --n) {
    current.push_back(n);
    enumerate_occupations(modes, total - n, current, out);
    current.pop_back();
  }
}

CMatrix number_basis(const std::vector<CMatrix>& creation, const CVector& vacuum, Eigen::Index count) {
  const int modes = static_cast<int>(creation.size());
  const Eigen::Index dim = vacuum.size();
  CMatrix basis(dim, count);
  Eigen::Index filled = 0;
  for (int total = 0; filled < count; ++total) {
    if (total > dim) {
      throw Error(ErrorKind::BasisBreakdown, "ran out of number states before filling the compared block");
    }
    std::vector<std::vector<int>> occupations;
    std::vector<int> current;
    enumerate_occupations(modes, total, current, occupations);
    for (const auto& occ : occupations) {
      if (filled == count) break;
      CVector v = vacuum;
      for (int k = modes - 1; k >= 0; --k) {
        for (int n = 0; n < occ[k]; ++n) v = creation[k] * v;
      }
      const double raw = v.norm();
      for (int pass = 0; pass < 2; ++pass) {
        const auto prev = basis.leftCols(filled);
        v -= prev * (prev.adjoint() * v);
      }
      const double kept = v.norm();
      if (!(raw > 0.0) || kept < 1e-8 * raw) {
        std::ostringstream os;
        os << "number state " << filled << " collapsed during orthonormalization (relative norm "
           << (raw > 0.0 ? kept / raw : 0.0) << ")";
        throw Error(ErrorKind::BasisBreakdown, os.str());
      }
      basis.col(filled++) = v / kept;
    }
  }
  return basis;
}

}  // namespace

FockSpace::FockSpace(Eigen::Index dim) : dim_(dim) {
  if (dim < 4) {
    std::ostringstream os;
    os << "truncation dimension must be at least 4 (got " << dim << ")";
    throw Error(ErrorKind::InvalidParams, os.str());
  }
}

Eigen::MatrixXd FockRep::target_structure() const {
  if (params) return structure_matrix(*params);
  if (generators.size() == 2) {
    Eigen::MatrixXd t(2, 2);
    t << 0.0, sigma, -sigma, 0.0;
    return t;
  }
  return canonical_structure(sigma);
}

std::pair<CMatrix, CMatrix> ladder(Eigen::Index dim) {
  CMatrix b = CMatrix::Zero(dim, dim);
  for (Eigen::Index n = 1; n < dim; ++n) b(n - 1, n) = std::sqrt(static_cast<double>(n));
  CMatrix bdag = b.adjoint();
  return {std::move(b), std::move(bdag)};
}

std::pair<CMatrix, CMatrix> ladder(const FockSpace& space) {
  return ladder(space.dim());
}

std::pair<CMatrix, CMatrix> position_ops(const FockSpace& space, double theta) {
  if (!(theta > 0.0)) {
    std::ostringstream os;
    os << "theta must be positive for the Fock position operators (got " << theta << ")";
    throw Error(ErrorKind::InvalidTheta, os.str());
  }
  const auto [b, bdag] = ladder(space);
  const double s = std::sqrt(theta / 2.0);
  CMatrix x1 = s * (b + bdag);
  CMatrix x2 = -kI * s * (b - bdag);
  return {std::move(x1), std::move(x2)};
}

Complex hs_inner(const HSState& phi, const HSState& psi) {
  if (phi.rows() != psi.rows() || phi.cols() != psi.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "Hilbert-Schmidt states live on different spaces");
  }
  return phi.conjugate().cwiseProduct(psi).sum();
}

FockRep hs_rep(const FockSpace& space, double theta, double hbar) {
  const auto [x1, x2] = position_ops(space, theta);
  const Eigen::Index n = space.dim();
  const double c = hbar / theta;
  const CMatrix zero = CMatrix::Zero(n, n);

  FockRep rep;
  rep.mode_dim = n;
  rep.params = AlgebraParamsd(theta, 0.0, hbar);
  rep.sigma = hbar;
  // Left multiplication acts on the row (fast) index, right multiplication by
  // A is A^T on the column (slow) index.
  rep.generators.push_back(fast_local(n, x1));
  rep.generators.push_back(fast_local(n, x2));
  rep.generators.push_back(KronOperator::local_sum(-c * x2.transpose(), c * x2));
  rep.generators.push_back(KronOperator::local_sum(c * x1.transpose(), -c * x1));
  return rep;
}

namespace {

std::pair<CMatrix, CMatrix> oscillator_pair(const FockSpace& space, double sigma) {
  if (!(sigma > 0.0)) {
    std::ostringstream os;
    os << "canonical constant sigma must be positive (got " << sigma << ")";
    throw Error(ErrorKind::InvalidSigma, os.str());
  }
  const auto [a, adag] = ladder(space);
  const double s = std::sqrt(sigma / 2.0);
  CMatrix y = s * (a + adag);
  CMatrix q = -kI * s * (a - adag);
  return {std::move(y), std::move(q)};
}

}  // namespace

FockRep canonical_pair(const FockSpace& space, double sigma) {
  const auto [y, q] = oscillator_pair(space, sigma);
  FockRep rep;
  rep.mode_dim = space.dim();
  rep.sigma = sigma;
  rep.generators = {KronOperator::dense(y), KronOperator::dense(q)};
  return rep;
}

FockRep two_mode_canonical(const FockSpace& space, double sigma) {
  const auto [y, q] = oscillator_pair(space, sigma);
  const Eigen::Index n = space.dim();
  FockRep rep;
  rep.mode_dim = n;
  rep.sigma = sigma;
  rep.generators = {slow_local(y, n), fast_local(n, y), slow_local(q, n), fast_local(n, q)};
  return rep;
}

FockRep transform_generators(const FockRep& rep, const Eigen::MatrixXd& M) {
  const auto count = static_cast<Eigen::Index>(rep.generators.size());
  if (M.rows() != count || M.cols() != count) {
    throw Error(ErrorKind::DimensionMismatch, "transform matrix does not match the generator count");
  }
  FockRep out;
  out.mode_dim = rep.mode_dim;
  out.sigma = rep.sigma;
  out.params = rep.params;
  out.interior_margin = rep.interior_margin;
  const auto& first = rep.generators.front();
  for (Eigen::Index k = 0; k < count; ++k) {
    KronOperator g = KronOperator::zero(first.slow_dim(), first.fast_dim());
    for (Eigen::Index l = 0; l < count; ++l) {
      if (M(k, l) != 0.0) g += M(k, l) * rep.generators[l];
    }
    out.generators.push_back(std::move(g));
  }
  return out;
}

FockRep realize_nc(const DarbouxMapd& map, const FockRep& canonical) {
  if (canonical.generators.size() != 4 || canonical.params) {
    throw Error(ErrorKind::DimensionMismatch, "realize_nc needs a canonical two-mode representation");
  }
  if (std::abs(canonical.sigma - map.sigma) > 1e-10 * std::max(1.0, std::abs(map.sigma))) {
    std::ostringstream os;
    os << "canonical representation has sigma " << canonical.sigma << " but the map needs " << map.sigma;
    throw Error(ErrorKind::SigmaMismatch, os.str());
  }
  FockRep out = transform_generators(canonical, invert(map));
  out.params = map.params;
  return out;
}

FockRep conjugate(const FockRep& rep, const CMatrix& unitary) {
  FockRep out;
  out.mode_dim = rep.mode_dim;
  out.sigma = rep.sigma;
  out.params = rep.params;
  out.interior_margin = rep.interior_margin;
  for (const auto& g : rep.generators) {
    out.generators.push_back(KronOperator::dense(unitary * g.to_dense() * unitary.adjoint()));
  }
  return out;
}

CMatrix random_unitary(Eigen::Index dim, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  CMatrix z(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) z(i, j) = Complex(gauss(rng), gauss(rng));
  }
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    q.col(j) *= d / std::abs(d);
  }
  return q;
}

DefectReport commutator_defect(const FockRep& rep, int i, int j, Complex expected, int margin, double tolerance) {
  const int count = static_cast<int>(rep.generators.size());
  if (i < 0 || j < 0 || i >= count || j >= count) throw std::out_of_range("generator index out of range");
  if (margin < 0) throw std::invalid_argument("margin must be non-negative");
  const auto& a = rep.generators[i];
  const auto& b = rep.generators[j];
  const auto [ks, kf] = interior(a, margin);
  KronOperator d = commutator(a, b) - expected * KronOperator::identity(a.slow_dim(), a.fast_dim());
  const double norm = spectral_norm(d.compress(ks, kf));
  const double unit = std::max(std::abs(expected), rep.scale());
  DefectReport report;
  report.name = pair_name(rep, i, j);
  report.defect = norm / unit;
  report.tolerance = tolerance;
  report.pass = report.defect <= tolerance;
  report.dim = a.dim();
  report.margin = margin;
  return report;
}

std::vector<DefectReport> algebra_defects(const FockRep& rep, int margin, double tolerance) {
  const Eigen::MatrixXd target = rep.target_structure();
  std::vector<DefectReport> out;
  const int count = static_cast<int>(rep.generators.size());
  for (int i = 0; i < count; ++i) {
    for (int j = i + 1; j < count; ++j) {
      out.push_back(commutator_defect(rep, i, j, kI * target(i, j), margin, tolerance));
    }
  }
  return out;
}

double hermiticity_defect(const FockRep& rep) {
  double worst = 0.0;
  for (const auto& g : rep.generators) worst = std::max(worst, (g - g.adjoint()).max_abs());
  return worst;
}

KronOperator weyl_numeric(const FockRep& rep, WeylFamily family, const Eigen::Vector2d& coeffs) {
  const std::size_t half = rep.generators.size() / 2;
  if (half != 2 && half != 1) throw std::invalid_argument("weyl_numeric needs two or four generators");
  const std::size_t offset = family == WeylFamily::U ? 0 : half;
  const auto& first = rep.generators[offset];
  KronOperator g = coeffs(0) * first;
  if (half == 2) g += coeffs(1) * rep.generators[offset + 1];

  const auto local = g.as_local_sum();
  if (!local || !factors_hermitian(local->first) || !factors_hermitian(local->second)) {
    throw std::logic_error("weyl_numeric: generator combination is not a sum of hermitian local parts");
  }
  return KronOperator::product_term(hermitian_exp(local->first), hermitian_exp(local->second));
}

double unitarity_defect(const KronOperator& w) {
  return (w.adjoint() * w - KronOperator::identity(w.slow_dim(), w.fast_dim())).max_abs();
}

namespace {

DefectReport phase_defect_compressed(const KronOperator& u, const KronOperator& v, double omega, Eigen::Index ks,
                                     Eigen::Index kf, int margin, double tolerance) {
  const KronOperator d = u * v - std::exp(kI * omega) * (v * u);
  DefectReport report;
  report.name = "weyl_exchange";
  report.defect = spectral_norm(d.compress(ks, kf));
  report.tolerance = tolerance;
  report.pass = report.defect <= tolerance;
  report.dim = u.dim();
  report.margin = margin;
  return report;
}

}  // namespace

DefectReport phase_defect(const KronOperator& u, const KronOperator& v, double omega, int margin, double tolerance) {
  if (u.slow_dim() != v.slow_dim() || u.fast_dim() != v.fast_dim()) {
    throw Error(ErrorKind::DimensionMismatch, "Weyl operators act on different spaces");
  }
  const auto [ks, kf] = interior(u, margin);
  return phase_defect_compressed(u, v, omega, ks, kf, margin, tolerance);
}

DefectReport phase_defect_on_block(const KronOperator& u, const KronOperator& v, double omega, Eigen::Index block,
                                   double tolerance) {
  if (u.slow_dim() != v.slow_dim() || u.fast_dim() != v.fast_dim()) {
    throw Error(ErrorKind::DimensionMismatch, "Weyl operators act on different spaces");
  }
  if (block <= 0) throw Error(ErrorKind::EmptyInterior, "compared block is empty");
  const Eigen::Index ks = u.slow_dim() > 1 ? std::min(block, u.slow_dim()) : 1;
  const Eigen::Index kf = u.fast_dim() > 1 ? std::min(block, u.fast_dim()) : 1;
  const int margin = static_cast<int>(std::max(u.slow_dim(), u.fast_dim()) - block);
  return phase_defect_compressed(u, v, omega, ks, kf, margin, tolerance);
}

PhaseConvergence phase_convergence(const std::function<FockRep(Eigen::Index)>& build, const Eigen::Vector2d& alpha,
                                   const Eigen::Vector2d& beta, double omega, const std::vector<Eigen::Index>& dims,
                                   int margin, double jitter, double floor) {
  if (dims.empty()) throw std::invalid_argument("phase_convergence needs at least one truncation");
  PhaseConvergence out;
  out.dims = dims;
  out.block = *std::min_element(dims.begin(), dims.end()) - margin;
  for (const auto n : dims) {
    const FockRep rep = build(n);
    const KronOperator u = weyl_numeric(rep, WeylFamily::U, alpha);
    const KronOperator v = weyl_numeric(rep, WeylFamily::V, beta);
    out.defects.push_back(phase_defect_on_block(u, v, omega, out.block).defect);
  }
  out.non_increasing = true;
  for (std::size_t k = 1; k < out.defects.size(); ++k) {
    if (out.defects[k] > std::max((1.0 + jitter) * out.defects[k - 1], floor)) out.non_increasing = false;
  }
  out.converging = out.non_increasing && out.defects.back() <= std::max(floor, 0.5 * out.defects.front());
  return out;
}

VacuumSpace vacuum_space(const FockRep& rep, double sigma, double tol) {
  if (!(sigma > 0.0)) {
    std::ostringstream os;
    os << "vacuum construction needs sigma > 0 (got " << sigma << ")";
    throw Error(ErrorKind::InvalidSigma, os.str());
  }
  const std::size_t modes = rep.generators.size() / 2;
  if (modes == 0 || rep.generators.size() % 2 != 0) {
    throw std::invalid_argument("vacuum_space needs (y, q) generator pairs");
  }
  const auto& first = rep.generators.front();
  const double s = 1.0 / std::sqrt(2.0 * sigma);
  KronOperator h = KronOperator::zero(first.slow_dim(), first.fast_dim());
  for (std::size_t k = 0; k < modes; ++k) {
    const KronOperator a = s * (rep.generators[k] + kI * rep.generators[k + modes]);
    h += a.adjoint() * a;
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h.to_dense());
  VacuumSpace out;
  out.spectrum = es.eigenvalues();
  for (Eigen::Index i = 0; i < out.spectrum.size() && out.spectrum(i) < tol; ++i) ++out.count;
  out.basis = es.eigenvectors().leftCols(out.count);
  return out;
}

Intertwiner intertwiner(const FockRep& rep_a, const FockRep& rep_b, double sigma, Eigen::Index n_interior,
                        double vacuum_tol) {
  if (rep_a.generators.size() != rep_b.generators.size()) {
    throw Error(ErrorKind::DimensionMismatch, "representations have different generator counts");
  }
  if (n_interior <= 0) throw Error(ErrorKind::EmptyInterior, "compared block is empty");
  const std::size_t modes = rep_a.generators.size() / 2;

  const auto build = [&](const FockRep& rep, const char* label) {
    const VacuumSpace vac = vacuum_space(rep, sigma, vacuum_tol);
    if (vac.count != 1) {
      std::ostringstream os;
      os << "representation " << label << " has " << vac.count << " vacuum states; quotient the multiplicity first";
      throw Error(ErrorKind::DegenerateVacuum, os.str());
    }
    if (rep.dim() < n_interior) {
      throw Error(ErrorKind::BasisBreakdown, "compared block is larger than the representation space");
    }
    const double s = 1.0 / std::sqrt(2.0 * sigma);
    std::vector<CMatrix> creation;
    for (std::size_t k = 0; k < modes; ++k) {
      const CMatrix a = s * (rep.generators[k].to_dense() + kI * rep.generators[k + modes].to_dense());
      creation.push_back(a.adjoint());
    }
    return number_basis(creation, vac.basis.col(0), n_interior);
  };

  Intertwiner out;
  out.basis_a = build(rep_a, "A");
  out.basis_b = build(rep_b, "B");
  out.W = out.basis_b * out.basis_a.adjoint();

  double worst = 0.0;
  for (std::size_t k = 0; k < rep_a.generators.size(); ++k) {
    const CMatrix ga = out.basis_a.adjoint() * rep_a.generators[k].to_dense() * out.basis_a;
    const CMatrix gb = out.basis_b.adjoint() * rep_b.generators[k].to_dense() * out.basis_b;
    worst = std::max(worst, spectral_norm_dense(ga - gb));
  }
  out.residual = worst / sigma;
  const CMatrix eye = CMatrix::Identity(n_interior, n_interior);
  out.isometry_defect = std::max((out.basis_a.adjoint() * out.basis_a - eye).cwiseAbs().maxCoeff(),
                                 (out.basis_b.adjoint() * out.basis_b - eye).cwiseAbs().maxCoeff());
  return out;
}

}  // namespace ncweyl
