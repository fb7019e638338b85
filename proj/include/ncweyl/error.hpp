#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ncweyl {

enum class ErrorKind {
  InvalidParams,
  WrongPhase,
  DegenerateParams,
  CriticalLine,
  IllConditioned,
  SingularMap,
  InvalidTheta,
  InvalidSigma,
  DimensionMismatch,
  SigmaMismatch,
  EmptyInterior,
  DegenerateVacuum,
  BasisBreakdown,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidParams: return "invalid_params";
    case ErrorKind::WrongPhase: return "wrong_phase";
    case ErrorKind::DegenerateParams: return "degenerate_params";
    case ErrorKind::CriticalLine: return "critical_line";
    case ErrorKind::IllConditioned: return "ill_conditioned";
    case ErrorKind::SingularMap: return "singular_map";
    case ErrorKind::InvalidTheta: return "invalid_theta";
    case ErrorKind::InvalidSigma: return "invalid_sigma";
    case ErrorKind::DimensionMismatch: return "dimension_mismatch";
    case ErrorKind::SigmaMismatch: return "sigma_mismatch";
    case ErrorKind::EmptyInterior: return "empty_interior";
    case ErrorKind::DegenerateVacuum: return "degenerate_vacuum";
    case ErrorKind::BasisBreakdown: return "basis_breakdown";
  }
  return "unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ncweyl
