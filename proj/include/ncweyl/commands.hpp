#pragma once

// Command implementations behind the ncweyl CLI. Each returns a report whose
// exit_code follows: 0 all checks pass, 1 a check failed, 2 critical line or
// phase error. Usage errors are raised as UsageError (exit code 64).

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ncweyl/darboux.hpp"
#include "ncweyl/report.hpp"

namespace ncweyl {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitPhaseError = 2;
inline constexpr int kExitUsage = 64;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  double theta = 1.0;
  double gamma = 0.0;
  double hbar = 1.0;
  int dim = 16;
  int margin = kDefaultMargin;
  Branch branch = Branch::Minus;
  double tol_critical = kDefaultCriticalTol;
  double tol_defect = 1e-10;
  double tol_vacuum = kDefaultVacuumTol;
  int n_interior = 8;
  std::uint64_t seed = 20090707;
  Eigen::Vector2d alpha = Eigen::Vector2d(0.1, 0.0);
  Eigen::Vector2d beta = Eigen::Vector2d(0.1, 0.0);
  /// Flips the sign of omega in the numeric exchange check (regression fixture).
  bool negate_omega = false;
  std::vector<Eigen::Index> weyl_dims = {16, 32, 64};
};

struct ScanGrid {
  double theta_lo = 0.1;
  double theta_hi = 4.0;
  int theta_steps = 40;
  double gamma_lo = 0.1;
  double gamma_hi = 4.0;
  int gamma_steps = 40;
};

/// Throws UsageError when the configuration violates its invariants.
void validate(const RunConfig& config);
void validate(const ScanGrid& grid);

nlohmann::json params_json(const RunConfig& config);

VerificationReport cmd_darboux(const RunConfig& config);
VerificationReport cmd_verify_rep(const RunConfig& config);
VerificationReport cmd_weyl(const RunConfig& config);
VerificationReport cmd_intertwine(const RunConfig& config);

/// One record per grid cell, theta-major, gamma-minor.
std::vector<nlohmann::json> cmd_scan(const ScanGrid& grid, const RunConfig& config);
nlohmann::json scan_record(double theta, double gamma, double hbar, double critical_tol);

/// Line-delimited JSON, one compact record per line.
std::string render_scan(const std::vector<nlohmann::json>& records);

/// Empty string when the record matches the scan schema, otherwise the first problem.
std::string scan_schema_error(const nlohmann::json& record);
/// Same for a command report.
std::string report_schema_error(const nlohmann::json& report);

}  // namespace ncweyl
