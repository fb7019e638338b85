#include "ncweyl/report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <sstream>

namespace ncweyl {

namespace {

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

Check make_check(std::string name, double defect, double tolerance, nlohmann::json detail) {
  Check c;
  c.name = std::move(name);
  c.defect = defect;
  c.tolerance = tolerance;
  c.pass = defect <= tolerance;
  c.detail = std::move(detail);
  return c;
}

Check make_check(const DefectReport& report) {
  Check c = make_check(report.name, report.defect, report.tolerance,
                       {{"dim", report.dim}, {"margin", report.margin}});
  c.pass = report.pass;
  return c;
}

bool VerificationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

void VerificationReport::settle() {
  exit_code = all_pass() ? 0 : 1;
}

nlohmann::json VerificationReport::to_json(bool timestamp) const {
  nlohmann::json out;
  out["params"] = params;
  out["phase"] = phase;
  out["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json entry{{"name", c.name}, {"defect", c.defect}, {"tolerance", c.tolerance}, {"pass", c.pass}};
    if (!c.detail.empty()) entry["detail"] = c.detail;
    out["checks"].push_back(std::move(entry));
  }
  out["artifacts"] = artifacts;
  if (timestamp) out["artifacts"]["generated_at"] = utc_now();
  return out;
}

std::string VerificationReport::to_text(bool timestamp) const {
  std::ostringstream os;
  os << "phase: " << phase << "\n";
  os << "params: " << params.dump() << "\n";
  os << "checks:\n";
  for (const auto& c : checks) {
    char line[256];
    std::snprintf(line, sizeof line, "  [%s] %-28s defect=%.3e tol=%.1e", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                  c.defect, c.tolerance);
    os << line;
    if (!c.detail.empty()) os << "  " << c.detail.dump();
    os << "\n";
  }
  nlohmann::json arts = artifacts;
  if (timestamp) arts["generated_at"] = utc_now();
  os << "artifacts: " << arts.dump(2) << "\n";
  return os.str();
}

std::string VerificationReport::render(ReportFormat format, bool timestamp) const {
  if (format == ReportFormat::Text) return to_text(timestamp);
  return to_json(timestamp).dump(2) + "\n";
}

}  // namespace ncweyl
