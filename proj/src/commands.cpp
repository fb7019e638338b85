#include "ncweyl/commands.hpp"

#include <cmath>
#include <functional>
#include <set>
#include <sstream>

#include "ncweyl/weyl.hpp"

namespace ncweyl {

using nlohmann::json;

namespace {

template <typename Derived>
json matrix_json(const Eigen::MatrixBase<Derived>& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json defects_json(const PhaseConvergence& conv) {
  json rows = json::array();
  for (std::size_t k = 0; k < conv.dims.size(); ++k) {
    rows.push_back({{"dim", conv.dims[k]}, {"defect", conv.defects[k]}});
  }
  return {{"block", conv.block}, {"ladder", rows}, {"non_increasing", conv.non_increasing},
          {"converging", conv.converging}};
}

bool is_phase_error(ErrorKind kind) {
  return kind == ErrorKind::CriticalLine || kind == ErrorKind::IllConditioned || kind == ErrorKind::WrongPhase;
}

/// Runs body on a fresh report. Phase errors become exit code 2; any other
/// library error becomes a failing "error" check.
VerificationReport run_command(const RunConfig& config,
                               const std::function<void(VerificationReport&, const AlgebraParamsd&)>& body) {
  validate(config);
  const AlgebraParamsd params(config.theta, config.gamma, config.hbar);
  VerificationReport report;
  report.params = params_json(config);
  report.phase = std::string(to_string(classify(params, config.tol_critical)));
  try {
    body(report, params);
  } catch (const Error& e) {
    report.artifacts["error"] = std::string(to_string(e.kind()));
    report.artifacts["message"] = e.what();
    if (is_phase_error(e.kind())) {
      report.exit_code = kExitPhaseError;
      return report;
    }
    report.checks.push_back(make_check("error", 1.0, 0.0, {{"kind", to_string(e.kind())}, {"message", e.what()}}));
  }
  report.settle();
  return report;
}

/// Relative defect of a transformed structure against sigma * J.
double canonical_defect(const Matrix4<double>& transformed, double sigma) {
  return (transformed - canonical_structure(sigma)).cwiseAbs().maxCoeff() / std::max(1.0, std::abs(sigma));
}

}  // namespace

void validate(const RunConfig& c) {
  std::ostringstream os;
  if (c.dim < 4) os << "--dim must be at least 4 (got " << c.dim << "). ";
  if (c.margin < 1) os << "--margin must be at least 1 (got " << c.margin << "). ";
  if (c.margin >= c.dim && c.dim >= 4) os << "--margin must be smaller than --dim. ";
  if (!(c.hbar > 0.0) || !std::isfinite(c.hbar)) os << "--hbar must be positive. ";
  if (!(c.theta >= 0.0) || !std::isfinite(c.theta)) os << "--theta must be non-negative. ";
  if (!std::isfinite(c.gamma)) os << "--gamma must be finite. ";
  if (!(c.tol_critical >= 0.0)) os << "--tol-critical must be non-negative. ";
  if (!(c.tol_defect > 0.0)) os << "--tol-defect must be positive. ";
  if (!(c.tol_vacuum > 0.0)) os << "--tol-vacuum must be positive. ";
  if (c.n_interior < 1) os << "--n-interior must be at least 1. ";
  if (c.weyl_dims.empty()) os << "need at least one truncation for the Weyl ladder. ";
  for (const auto n : c.weyl_dims) {
    if (n < 4 || n <= c.margin) os << "Weyl ladder truncation " << n << " is too small. ";
  }
  const std::string msg = os.str();
  if (!msg.empty()) throw UsageError(msg);
}

void validate(const ScanGrid& g) {
  std::ostringstream os;
  if (!(g.theta_lo < g.theta_hi)) os << "theta range needs lo < hi. ";
  if (!(g.gamma_lo < g.gamma_hi)) os << "gamma range needs lo < hi. ";
  if (g.theta_steps < 2 || g.gamma_steps < 2) os << "grid needs at least 2 steps per axis. ";
  if (g.theta_lo < 0.0) os << "theta range must be non-negative. ";
  const std::string msg = os.str();
  if (!msg.empty()) throw UsageError(msg);
}

json params_json(const RunConfig& c) {
  return {{"theta", c.theta},
          {"gamma", c.gamma},
          {"hbar", c.hbar},
          {"delta", c.hbar * c.hbar - c.gamma * c.theta},
          {"dim", c.dim},
          {"margin", c.margin},
          {"branch", to_string(c.branch)},
          {"tol_critical", c.tol_critical},
          {"tol_defect", c.tol_defect},
          {"tol_vacuum", c.tol_vacuum},
          {"n_interior", c.n_interior},
          {"seed", c.seed},
          {"alpha", {c.alpha(0), c.alpha(1)}},
          {"beta", {c.beta(0), c.beta(1)}}};
}

VerificationReport cmd_darboux(const RunConfig& config) {
  auto report = run_command(config, [&](VerificationReport& r, const AlgebraParamsd& params) {
    r.artifacts["command"] = "darboux";
    const DarbouxMapd map = solve(params, config.branch, config.tol_critical);
    const Matrix4<double> omega = structure_matrix(params);
    const Matrix4<double> transformed = transform_structure(map.M, omega);
    const double measured = (transformed(0, 2) + transformed(1, 3)) / 2.0;
    const DarbouxMapd normalized = normalize(map);
    const Matrix4<double> inverse = invert(map);

    r.checks.push_back(make_check("canonical_form", canonical_defect(transformed, map.sigma), config.tol_defect));
    r.checks.push_back(make_check("sigma_closed_form", std::abs(measured - map.sigma) / std::abs(map.sigma),
                                  config.tol_defect, {{"measured", measured}}));
    r.checks.push_back(make_check("normalized_canonical",
                                  canonical_defect(transform_structure(normalized.M, omega), normalized.sigma),
                                  config.tol_defect));
    r.checks.push_back(make_check("round_trip_inverse",
                                  (map.M * inverse - Matrix4<double>::Identity()).cwiseAbs().maxCoeff(),
                                  config.tol_defect));
    const Matrix4<double> back = transform_structure(inverse, canonical_structure(map.sigma));
    r.checks.push_back(make_check("round_trip_structure",
                                  (back - omega).cwiseAbs().maxCoeff() / std::max(1.0, omega.cwiseAbs().maxCoeff()),
                                  config.tol_defect));
    r.checks.push_back(make_check("nondegenerate", config.tol_critical * params.hbar() / std::abs(map.sigma), 1.0,
                                  {{"nondegenerate", nondegenerate(map, config.tol_critical)}}));

    r.artifacts["case"] = to_string(map.kind);
    r.artifacts["branch"] = to_string(map.branch);
    r.artifacts["a"] = map.a;
    r.artifacts["b"] = map.b;
    r.artifacts["sigma"] = map.sigma;
    r.artifacts["sigma_normalized"] = normalized.sigma;
    r.artifacts["delta"] = params.delta();
    r.artifacts["matrix"] = matrix_json(map.M);
    r.artifacts["normalized_matrix"] = matrix_json(normalized.M);
    r.artifacts["inverse"] = matrix_json(inverse);
  });
  report.artifacts["command"] = "darboux";
  return report;
}

VerificationReport cmd_verify_rep(const RunConfig& config) {
  auto report = run_command(config, [&](VerificationReport& r, const AlgebraParamsd& params) {
    const FockSpace space(config.dim);
    FockRep rep;
    FockRep canonical;
    double canonical_sigma = params.hbar();
    if (params.gamma() == 0.0 && params.theta() > 0.0) {
      r.artifacts["representation"] = "hilbert_schmidt";
      rep = hs_rep(space, params.theta(), params.hbar());
      const DarbouxMapd map = solve_gamma_zero(params);
      canonical = transform_generators(rep, map.M);
      canonical.params.reset();
      canonical.sigma = map.sigma;

      FockRep positions;
      positions.mode_dim = rep.mode_dim;
      positions.sigma = params.theta();
      positions.generators = {rep.generators[0], rep.generators[1]};
      r.artifacts["position_pair_multiplicity"] = vacuum_space(positions, params.theta(), config.tol_vacuum).count;
    } else {
      r.artifacts["representation"] = "realized";
      const DarbouxMapd map = normalize(solve(params, config.branch, config.tol_critical));
      r.artifacts["case"] = to_string(map.kind);
      canonical = two_mode_canonical(space, map.sigma);
      rep = realize_nc(map, canonical);
    }
    for (const auto& d : algebra_defects(rep, config.margin, config.tol_defect)) r.checks.push_back(make_check(d));
    r.checks.push_back(make_check("hermiticity", hermiticity_defect(rep), kHermiticityTol));

    const VacuumSpace vac = vacuum_space(canonical, canonical_sigma, config.tol_vacuum);
    r.artifacts["vacuum_multiplicity"] = vac.count;
    const auto count_below = [&vac](double tol) {
      return (vac.spectrum.array() < tol).count();
    };
    r.artifacts["vacuum_tolerance_sensitivity"] = {{"half_tol", count_below(0.5 * config.tol_vacuum)},
                                                   {"double_tol", count_below(2.0 * config.tol_vacuum)}};
    json low = json::array();
    for (Eigen::Index i = 0; i < std::min<Eigen::Index>(vac.spectrum.size(), 6); ++i) low.push_back(vac.spectrum(i));
    r.artifacts["vacuum_spectrum_head"] = low;
    r.artifacts["hilbert_space_dim"] = rep.dim();
  });
  report.artifacts["command"] = "verify-rep";
  return report;
}

VerificationReport cmd_weyl(const RunConfig& config) {
  auto report = run_command(config, [&](VerificationReport& r, const AlgebraParamsd& params) {
    const DarbouxMapd map = solve(params, config.branch, config.tol_critical);
    const Eigen::Vector2d& alpha = config.alpha;
    const Eigen::Vector2d& beta = config.beta;
    const double omega = weyl_phase(map, alpha, beta);
    const auto form = phase_form(map, alpha, beta);

    r.artifacts["case"] = to_string(map.kind);
    r.artifacts["sigma"] = map.sigma;
    r.artifacts["omega"] = omega;
    r.artifacts["nondegenerate"] = nondegenerate(map, config.tol_critical);
    if (form) {
      const double diff = std::abs(omega - *form);
      const double unit = std::abs(*form);
      r.artifacts["omega_phase_form"] = *form;
      r.artifacts["omega_difference"] = diff;
      r.checks.push_back(make_check("phase_form_identity", unit > 0.0 ? diff / unit : diff, config.tol_defect));
    } else {
      r.artifacts["omega_phase_form"] = nullptr;
      r.artifacts["omega_difference"] = nullptr;
    }

    // The canonical pair with [y, q] = i sigma, sigma < 0, is the |sigma| pair
    // with q negated, so V(beta) becomes V(-beta) on the |sigma| oscillator.
    const double rep_sigma = std::abs(map.sigma);
    const Eigen::Vector2d beta_rep = map.sigma < 0.0 ? Eigen::Vector2d(-beta) : beta;
    const double numeric_omega = config.negate_omega ? -omega : omega;
    const auto build = [rep_sigma](Eigen::Index n) { return two_mode_canonical(FockSpace(n), rep_sigma); };

    const PhaseConvergence conv =
        phase_convergence(build, alpha, beta_rep, numeric_omega, config.weyl_dims, config.margin);
    r.checks.push_back(make_check("phase_convergence", conv.defects.back(),
                                  std::max(kDefectFloor, 0.5 * conv.defects.front()), defects_json(conv)));
    r.checks.back().pass = conv.converging;

    if (omega != 0.0) {
      const PhaseConvergence control =
          phase_convergence(build, alpha, beta_rep, -numeric_omega, config.weyl_dims, config.margin);
      json detail = defects_json(control);
      r.checks.push_back(make_check("negative_control_diverges", control.defects.back(), kDefectFloor, detail));
      r.checks.back().pass = !control.converging;
    } else {
      r.artifacts["negative_control"] = "skipped: omega = 0";
    }

    // Same exchange relation for exp(i alpha . x), exp(i beta . p) on the realized
    // noncommutative generators, where [alpha . x, beta . p] = i hbar (alpha . beta).
    const DarbouxMapd normalized = normalize(map);
    const double xp_omega = (config.negate_omega ? -1.0 : 1.0) * -params.hbar() * alpha.dot(beta);
    const auto build_nc = [&normalized](Eigen::Index n) {
      return realize_nc(normalized, two_mode_canonical(FockSpace(n), normalized.sigma));
    };
    const PhaseConvergence nc_conv =
        phase_convergence(build_nc, alpha, beta, xp_omega, config.weyl_dims, config.margin);
    r.checks.push_back(make_check("realized_phase_convergence", nc_conv.defects.back(),
                                  std::max(kDefectFloor, 0.5 * nc_conv.defects.front()), defects_json(nc_conv)));
    r.checks.back().pass = nc_conv.converging;

    const FockRep small = build(config.weyl_dims.front());
    const double unitary = std::max(unitarity_defect(weyl_numeric(small, WeylFamily::U, alpha)),
                                    unitarity_defect(weyl_numeric(small, WeylFamily::V, beta_rep)));
    r.checks.push_back(make_check("unitarity", unitary, kUnitarityTol, {{"dim", small.dim()}}));
  });
  report.artifacts["command"] = "weyl";
  return report;
}

VerificationReport cmd_intertwine(const RunConfig& config) {
  auto report = run_command(config, [&](VerificationReport& r, const AlgebraParamsd& params) {
    const DarbouxMapd map = normalize(solve(params, config.branch, config.tol_critical));
    const double sigma = map.sigma;
    const FockSpace space(config.dim);
    const FockRep rep_a = two_mode_canonical(space, sigma);
    const Eigen::Index block = config.n_interior;

    const auto attempt = [&](const std::string& name, double tol, const std::function<json(Check&)>& run) {
      Check c = make_check(name, 0.0, tol);
      try {
        c.detail = run(c);
        c.pass = c.defect <= tol;
      } catch (const Error& e) {
        c.defect = 1.0;
        c.pass = false;
        c.detail = {{"error", to_string(e.kind())}, {"message", e.what()}};
      }
      r.checks.push_back(std::move(c));
    };

    attempt("planted_recovery", 1e-8, [&](Check& c) {
      const CMatrix t = random_unitary(rep_a.dim(), config.seed);
      const Intertwiner w = intertwiner(rep_a, conjugate(rep_a, t), sigma, block, config.tol_vacuum);
      c.defect = w.residual;
      const CMatrix overlap = w.basis_b.adjoint() * t * w.basis_a;
      const Complex phase = overlap(0, 0);
      const double mismatch =
          (overlap - phase * CMatrix::Identity(block, block)).cwiseAbs().maxCoeff();
      return json{{"isometry_defect", w.isometry_defect}, {"planted_mismatch", mismatch}, {"block", block}};
    });
    attempt("planted_matches_unitary", 1e-8, [&](Check& c) {
      const CMatrix t = random_unitary(rep_a.dim(), config.seed);
      const Intertwiner w = intertwiner(rep_a, conjugate(rep_a, t), sigma, block, config.tol_vacuum);
      const CMatrix overlap = w.basis_b.adjoint() * t * w.basis_a;
      c.defect = (overlap - overlap(0, 0) * CMatrix::Identity(block, block)).cwiseAbs().maxCoeff();
      return json{{"global_phase_abs", std::abs(overlap(0, 0))}};
    });
    attempt("self_equivalence", 1e-12, [&](Check& c) {
      const Intertwiner w = intertwiner(rep_a, rep_a, sigma, block, config.tol_vacuum);
      c.defect = w.residual;
      return json{{"isometry_defect", w.isometry_defect}};
    });
    attempt("round_trip", 1e-8, [&](Check& c) {
      FockRep back = transform_generators(realize_nc(map, rep_a), map.M);
      back.params.reset();
      back.sigma = sigma;
      const Intertwiner w = intertwiner(rep_a, back, sigma, block, config.tol_vacuum);
      c.defect = w.residual;
      return json{{"case", to_string(map.kind)}, {"isometry_defect", w.isometry_defect}};
    });
    r.artifacts["sigma"] = sigma;
    r.artifacts["hilbert_space_dim"] = rep_a.dim();
    r.artifacts["compared_block"] = block;
  });
  report.artifacts["command"] = "intertwine";
  return report;
}

json scan_record(double theta, double gamma, double hbar, double critical_tol) {
  const AlgebraParamsd params(theta, gamma, hbar);
  const Phase phase = classify(params, critical_tol);
  json rec{{"theta", theta}, {"gamma", gamma}, {"hbar", hbar}, {"delta", params.delta()},
           {"phase", to_string(phase)}, {"sigma_plus", nullptr}, {"sigma_minus", nullptr},
           {"nondegenerate", false}};
  if (phase == Phase::Critical) return rec;

  const auto sigma_for = [&](Branch branch) -> json {
    try {
      const DarbouxMapd map = solve(params, branch, critical_tol);
      const bool limit = map.kind == DarbouxCase::GammaZeroLimit || map.kind == DarbouxCase::ThetaZeroLimit ||
                         map.kind == DarbouxCase::CommutativeIdentity;
      if (limit && branch == Branch::Plus) return nullptr;
      return map.sigma;
    } catch (const Error&) {
      return nullptr;
    }
  };
  rec["sigma_plus"] = sigma_for(Branch::Plus);
  rec["sigma_minus"] = sigma_for(Branch::Minus);
  rec["nondegenerate"] = nondegenerate(solve(params, Branch::Minus, critical_tol), critical_tol);
  return rec;
}

std::vector<json> cmd_scan(const ScanGrid& grid, const RunConfig& config) {
  validate(grid);
  if (!(config.hbar > 0.0)) throw UsageError("--hbar must be positive");
  std::vector<json> out;
  out.reserve(static_cast<std::size_t>(grid.theta_steps) * grid.gamma_steps);
  for (int i = 0; i < grid.theta_steps; ++i) {
    const double theta = grid.theta_lo + (grid.theta_hi - grid.theta_lo) * i / (grid.theta_steps - 1);
    for (int j = 0; j < grid.gamma_steps; ++j) {
      const double gamma = grid.gamma_lo + (grid.gamma_hi - grid.gamma_lo) * j / (grid.gamma_steps - 1);
      out.push_back(scan_record(theta, gamma, config.hbar, config.tol_critical));
    }
  }
  return out;
}

std::string render_scan(const std::vector<json>& records) {
  std::string out;
  for (const auto& rec : records) {
    out += rec.dump();
    out += '\n';
  }
  return out;
}

std::string scan_schema_error(const json& rec) {
  static const std::set<std::string> keys = {"theta", "gamma",       "hbar",        "delta",
                                             "phase", "sigma_plus", "sigma_minus", "nondegenerate"};
  if (!rec.is_object()) return "record is not an object";
  if (rec.size() != keys.size()) return "record has unexpected keys";
  for (const auto& k : keys) {
    if (!rec.contains(k)) return "missing key " + k;
  }
  for (const char* k : {"theta", "gamma", "hbar", "delta"}) {
    if (!rec[k].is_number()) return std::string(k) + " is not a number";
  }
  static const std::set<std::string> phases = {"PositiveDelta", "NegativeDelta", "Critical"};
  if (!rec["phase"].is_string() || !phases.count(rec["phase"].get<std::string>())) return "bad phase label";
  for (const char* k : {"sigma_plus", "sigma_minus"}) {
    if (!rec[k].is_number() && !rec[k].is_null()) return std::string(k) + " is neither number nor null";
  }
  if (!rec["nondegenerate"].is_boolean()) return "nondegenerate is not a boolean";
  return {};
}

std::string report_schema_error(const json& rep) {
  if (!rep.is_object()) return "report is not an object";
  for (const char* k : {"params", "phase", "checks", "artifacts"}) {
    if (!rep.contains(k)) return std::string("missing key ") + k;
  }
  if (rep.size() != 4) return "report has unexpected top-level keys";
  if (!rep["params"].is_object()) return "params is not an object";
  if (!rep["phase"].is_string()) return "phase is not a string";
  if (!rep["artifacts"].is_object()) return "artifacts is not an object";
  if (!rep["checks"].is_array()) return "checks is not an array";
  for (const auto& c : rep["checks"]) {
    if (!c.is_object()) return "check is not an object";
    if (!c.contains("name") || !c["name"].is_string()) return "check without name";
    if (!c.contains("defect") || !(c["defect"].is_number() || c["defect"].is_null())) return "check without defect";
    if (!c.contains("tolerance") || !c["tolerance"].is_number()) return "check without tolerance";
    if (!c.contains("pass") || !c["pass"].is_boolean()) return "check without pass";
  }
  return {};
}

}  // namespace ncweyl
