#include "emkdv/error.hpp"

#include <cstdio>

namespace emkdv {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::config_error: return "ConfigError";
    case ErrorKind::non_decaying_datum: return "NonDecayingDatum";
    case ErrorKind::integrator_failure: return "IntegratorFailure";
    case ErrorKind::unitarity_violation: return "UnitarityViolation";
    case ErrorKind::inconclusive_winding: return "InconclusiveWinding";
    case ErrorKind::out_of_range: return "OutOfRange";
    case ErrorKind::wrong_region: return "WrongRegion";
    case ErrorKind::missing_scattering: return "MissingScattering";
    case ErrorKind::quadrature_failure: return "QuadratureFailure";
    case ErrorKind::singular_system: return "SingularSystem";
    case ErrorKind::truncation_too_small: return "TruncationTooSmall";
    case ErrorKind::grid_too_coarse: return "GridTooCoarse";
    case ErrorKind::blow_up: return "BlowUp";
    case ErrorKind::boundary_contamination: return "BoundaryContamination";
    case ErrorKind::discrete_spectrum_present: return "DiscreteSpectrumPresent";
    case ErrorKind::io_failure: return "IoFailure";
  }
  return "Unknown";
}

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::config_error: return 2;
    case ErrorKind::discrete_spectrum_present: return 3;
    default: return 4;
  }
}

std::string fmt_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

Error::Error(ErrorKind kind, std::string module, std::string operation,
             std::string detail)
    : std::runtime_error(std::string(to_string(kind)) + " in " + module +
                         "::" + operation + ": " + detail),
      kind_(kind),
      module_(std::move(module)),
      operation_(std::move(operation)),
      detail_(std::move(detail)) {}

}  // namespace emkdv
