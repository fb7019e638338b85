#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ncweyl/fock.hpp"

namespace ncweyl {

struct Check {
  std::string name;
  double defect = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  nlohmann::json detail = nlohmann::json::object();
};

Check make_check(std::string name, double defect, double tolerance, nlohmann::json detail = nlohmann::json::object());
Check make_check(const DefectReport& report);

enum class ReportFormat { Json, Text };

/// Outcome of one CLI command. Serializes to a JSON object with the fixed
/// top-level keys {"params", "phase", "checks", "artifacts"}.
struct VerificationReport {
  nlohmann::json params = nlohmann::json::object();
  std::string phase;
  std::vector<Check> checks;
  nlohmann::json artifacts = nlohmann::json::object();
  /// 0 all pass, 1 a check failed, 2 critical line or phase error.
  int exit_code = 0;

  bool all_pass() const;
  /// Sets exit_code to 0 or 1 from the checks.
  void settle();
  nlohmann::json to_json(bool timestamp = true) const;
  std::string to_text(bool timestamp = true) const;
  std::string render(ReportFormat format, bool timestamp = true) const;
};

}  // namespace ncweyl
