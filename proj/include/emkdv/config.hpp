#pragma once

#include <optional>
#include <string>
#include <vector>

#include "emkdv/execution.hpp"
#include "emkdv/model.hpp"
#include "emkdv/oscillatory_asymptotics.hpp"
#include "emkdv/painleve_sector.hpp"
#include "emkdv/pde_reference.hpp"
#include "emkdv/spectral_scattering.hpp"

namespace emkdv {

struct DatumConfig {
  ProfileKind kind = ProfileKind::sech;
  double amplitude = 0.3;
  double width = 1.0;
  double support_radius = 0.0;  // 0 = automatic
  double decay_tol = InitialProfile::default_decay_tol;
  std::string samples_file;     // tabulated: CSV with columns x,u

  InitialProfile build() const;
};

struct Tolerances {
  double ode_tol = 1e-13;
  double quad_tol = 1e-10;
  double solver_tol = 1e-10;
  double unitarity_tol = 1e-8;
};

struct ZeroConfig {
  double contour_height = 2.0;
  double floor = 1e-3;
};

struct PainleveConfig {
  double M = 2.0;
  double y_min = -2.0, y_max = 3.0, y_step = 0.02;
  RHContour contour;
  std::optional<double> s;  // default: r(0) of the datum
};

struct PhaseConfig {
  double xi = -0.2;
  double re_min = -1.0, re_max = 1.0, im_min = -1.0, im_max = 1.0;
  std::size_t n = 101;
};

struct ExperimentConfig {
  ModelParams params;
  DatumConfig datum;
  KGridSpec kgrid;
  Tolerances tol;
  ZeroConfig zeros;
  std::vector<XT> queries;
  PainleveConfig painleve;
  PhaseConfig phase;
  PdeOptions pde;
  std::vector<double> pde_t_out;
  std::string out_dir = "out";
  Exec exec = Exec::parallel;

  void validate() const;
};

/// Parsed configuration plus its canonical text (sorted section.key = value
/// lines after overrides, the input of the config hash).
struct LoadedConfig {
  ExperimentConfig cfg;
  std::string canonical;
};

/// INI-style file: [section] headers, key = value lines, '#' or ';' comments.
/// Overrides are "section.key=value".  Unknown keys are a config error.
LoadedConfig load_config(const std::string& path, const std::vector<std::string>& overrides = {});
LoadedConfig parse_config(const std::string& text, const std::vector<std::string>& overrides = {});

/// Documentation of every key with its default, in file order.
std::string default_config_text();

}  // namespace emkdv
