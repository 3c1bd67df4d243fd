#pragma once

#include <optional>
#include <string>
#include <vector>

#include "emkdv/config.hpp"
#include "emkdv/error.hpp"
#include "emkdv/phase_geometry.hpp"

namespace emkdv {

/// One row of the direct-vs-asymptotic table.  scaled_err is abs_err t / ln t
/// for oscillatory rows, abs_err t^{2/5} for sector rows and abs_err sqrt(t)
/// for fast-decay rows.
struct ComparisonRecord {
  double x = 0, t = 0;
  double u_direct = 0, u_asymptotic = 0;
  double abs_err = 0, scaled_err = 0;
  Region region = Region::oscillatory;
};

double scaled_error(double abs_err, double t, Region region);

enum class Verb { scatter, phase, asymptote, painleve, simulate, compare };

std::string to_string(Verb v);
Verb verb_from_string(const std::string& name);

struct RunRequest {
  LoadedConfig config;
  Verb verb = Verb::compare;
  std::string out_dir;           // overrides config output.dir when non-empty
  std::string scattering_input;  // asymptote / painleve: reuse a scattering CSV
};

struct RunResult {
  std::vector<ComparisonRecord> records;  // compare only
  std::vector<std::string> files;         // written, relative to out_dir
  std::string config_hash;                // sha256 of the canonical config text
};

/// Runs one verb and writes its artifacts plus manifest.json into the output
/// directory.  Module errors propagate as emkdv::Error.
RunResult run(const RunRequest& req);

/// Full chain: scatter, certify no discrete spectrum, asymptotics per query,
/// direct simulation at the query times, comparison table.
RunResult run_pipeline(const LoadedConfig& cfg, const std::string& out_dir = "");

/// Machine-readable description of a failure.
std::string error_json(const Error& e);

}  // namespace emkdv
