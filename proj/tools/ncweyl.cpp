#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ncweyl/commands.hpp"

using namespace ncweyl;

namespace {

struct Options {
  RunConfig config;
  ScanGrid grid;
  std::vector<double> alpha{0.1, 0.0};
  std::vector<double> beta{0.1, 0.0};
  std::string output;
  std::string format = "json";
  std::string branch = "minus";
  bool no_timestamp = false;
};

void add_common(CLI::App* cmd, Options& o) {
  auto& c = o.config;
  cmd->add_option("--theta", c.theta, "Position noncommutativity theta >= 0");
  cmd->add_option("--gamma", c.gamma, "Momentum noncommutativity gamma");
  cmd->add_option("--hbar", c.hbar, "Planck constant hbar > 0");
  cmd->add_option("--tol-critical", c.tol_critical, "Critical band: |Delta| <= tol * hbar^2");
  cmd->add_option("--output", o.output, "Write the report to PATH instead of stdout");
  cmd->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "text"}));
  cmd->add_flag("--no-timestamp", o.no_timestamp, "Omit artifacts.generated_at");
}

void add_numeric(CLI::App* cmd, Options& o) {
  auto& c = o.config;
  cmd->add_option("--dim", c.dim, "Fock truncation N (>= 4)");
  cmd->add_option("--margin", c.margin, "Interior margin k (>= 1)");
  cmd->add_option("--branch", o.branch, "Darboux branch")->check(CLI::IsMember({"plus", "minus"}));
  cmd->add_option("--alpha", o.alpha, "Weyl coefficients A1 A2")->expected(2);
  cmd->add_option("--beta", o.beta, "Weyl coefficients B1 B2")->expected(2);
  cmd->add_option("--tol-defect", c.tol_defect, "Commutator defect tolerance");
  cmd->add_option("--tol-vacuum", c.tol_vacuum, "Vacuum eigenvalue threshold");
  cmd->add_option("--n-interior", c.n_interior, "Compared block size for intertwiners");
  cmd->add_option("--seed", c.seed, "Seed for randomized fixtures");
}

int emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(path);
  if (!out) {
    std::cerr << "ncweyl: cannot open " << path << " for writing\n";
    return 1;
  }
  out << text;
  out.close();
  if (!out) {
    std::cerr << "ncweyl: write to " << path << " failed\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Noncommutative Heisenberg-Weyl algebra: Darboux reduction and truncated representation checks"};
  app.require_subcommand(1);
  Options o;

  auto* darboux = app.add_subcommand("darboux", "Solve, normalize and invert the Darboux map");
  auto* verify = app.add_subcommand("verify-rep", "Check the algebra on a truncated representation");
  auto* weyl = app.add_subcommand("weyl", "Weyl exchange phase, symbolic and numeric");
  auto* intertwine = app.add_subcommand("intertwine", "Plant-and-recover and round-trip intertwiners");
  auto* scan = app.add_subcommand("scan", "Phase map over a (theta, gamma) grid, line-delimited JSON");

  for (auto* cmd : {darboux, verify, weyl, intertwine, scan}) add_common(cmd, o);
  for (auto* cmd : {darboux, verify, weyl, intertwine}) add_numeric(cmd, o);
  weyl->add_flag("--negate-omega", o.config.negate_omega, "Flip the sign of omega in the numeric check");

  scan->add_option("--theta-min", o.grid.theta_lo);
  scan->add_option("--theta-max", o.grid.theta_hi);
  scan->add_option("--theta-steps", o.grid.theta_steps);
  scan->add_option("--gamma-min", o.grid.gamma_lo);
  scan->add_option("--gamma-max", o.grid.gamma_hi);
  scan->add_option("--gamma-steps", o.grid.gamma_steps);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  o.config.branch = o.branch == "plus" ? Branch::Plus : Branch::Minus;
  o.config.alpha = Eigen::Vector2d(o.alpha[0], o.alpha[1]);
  o.config.beta = Eigen::Vector2d(o.beta[0], o.beta[1]);
  const ReportFormat format = o.format == "text" ? ReportFormat::Text : ReportFormat::Json;

  try {
    if (scan->parsed()) {
      const auto records = cmd_scan(o.grid, o.config);
      return emit(render_scan(records), o.output);
    }
    VerificationReport report;
    if (darboux->parsed()) report = cmd_darboux(o.config);
    if (verify->parsed()) report = cmd_verify_rep(o.config);
    if (weyl->parsed()) report = cmd_weyl(o.config);
    if (intertwine->parsed()) report = cmd_intertwine(o.config);
    if (emit(report.render(format, !o.no_timestamp), o.output) != 0) return 1;
    return report.exit_code;
  } catch (const UsageError& e) {
    std::cerr << "ncweyl: usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "ncweyl: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return kExitUsage;
  }
}
