#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace emkdv {

enum class ErrorKind {
  config_error,
  non_decaying_datum,
  integrator_failure,
  unitarity_violation,
  inconclusive_winding,
  out_of_range,
  wrong_region,
  missing_scattering,
  quadrature_failure,
  singular_system,
  truncation_too_small,
  grid_too_coarse,
  blow_up,
  boundary_contamination,
  discrete_spectrum_present,
  io_failure,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Process exit code for the CLI: 2 config, 3 discrete spectrum, 4 numerical.
int exit_code(ErrorKind kind) noexcept;

/// %.6g rendering for diagnostics.
std::string fmt_num(double v);

/// Every failure carries the module and operation that raised it so the
/// harness can serialize it as a structured error record.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string module, std::string operation,
        std::string detail);

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& module() const noexcept { return module_; }
  const std::string& operation() const noexcept { return operation_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string module_;
  std::string operation_;
  std::string detail_;
};

}  // namespace emkdv
