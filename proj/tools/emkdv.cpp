#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "emkdv/config.hpp"
#include "emkdv/io.hpp"
#include "emkdv/pipeline.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Long-time asymptotics of the extended mKdV equation: scattering, asymptotics, direct simulation"};
  std::string config_path, out_dir, verb = "compare", input;
  std::vector<std::string> overrides;
  bool print_defaults = false;
  app.add_option("--config", config_path, "configuration file (defaults apply when omitted)");
  app.add_option("--out", out_dir, "output directory (overrides output.dir)");
  app.add_option("--verb", verb, "scatter | phase | asymptote | painleve | simulate | compare");
  app.add_option("--override", overrides, "section.key=value, repeatable");
  app.add_option("--input", input, "scattering CSV to reuse (asymptote, painleve, compare)");
  app.add_flag("--print-default-config", print_defaults, "print every key with its default and exit");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  if (print_defaults) {
    std::cout << emkdv::default_config_text();
    return 0;
  }

  std::string err_dir = out_dir;
  try {
    emkdv::RunRequest req;
    req.config = config_path.empty() ? emkdv::parse_config("", overrides)
                                     : emkdv::load_config(config_path, overrides);
    if (err_dir.empty()) err_dir = req.config.cfg.out_dir;
    req.verb = emkdv::verb_from_string(verb);
    req.out_dir = out_dir;
    req.scattering_input = input;
    const auto res = emkdv::run(req);
    std::cout << "verb " << verb << ": wrote " << res.files.size() + 1 << " files to "
              << (out_dir.empty() ? req.config.cfg.out_dir : out_dir) << " (config sha256 "
              << res.config_hash.substr(0, 12) << ")\n";
    for (const auto& r : res.records)
      std::cout << "  x=" << emkdv::format_double(r.x) << " t=" << emkdv::format_double(r.t)
                << " region=" << emkdv::to_string(r.region)
                << " abs_err=" << emkdv::format_double(r.abs_err)
                << " scaled_err=" << emkdv::format_double(r.scaled_err) << "\n";
    return 0;
  } catch (const emkdv::Error& e) {
    const std::string js = emkdv::error_json(e);
    std::cerr << js;
    if (!err_dir.empty()) {
      std::error_code ec;
      std::filesystem::create_directories(err_dir, ec);
      std::ofstream(std::filesystem::path(err_dir) / "error.json") << js;
    }
    return emkdv::exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "{\"error\": \"Internal\", \"detail\": \"" << e.what() << "\"}\n";
    return 4;
  }
}
