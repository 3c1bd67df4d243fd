#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <json.hpp>
#include <string>

#include "emkdv/config.hpp"
#include "emkdv/error.hpp"
#include "emkdv/io.hpp"
#include "emkdv/pipeline.hpp"

using namespace emkdv;
namespace fs = std::filesystem;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::io_failure;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("emkdv_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

// Cheap settings: narrow k grid, small PDE grid.
const std::vector<std::string> quick = {
    "kgrid.half_width=1", "kgrid.auto_extend=false", "kgrid.step=0.01", "pde.L_domain=100",
    "pde.N=2048",         "pde.sponge_width=20",     "pde.t_out=1,3",   "zeros.contour_height=1"};

std::vector<std::string> with(std::vector<std::string> extra) {
  auto v = quick;
  v.insert(v.end(), extra.begin(), extra.end());
  return v;
}

int run_cli(const std::string& args) {
  const char* env = std::getenv("EMKDV_CLI");
  const std::string cli = env ? env : "./emkdv";
  const int rc = std::system((cli + " " + args + " > /dev/null 2>&1").c_str());
  return WEXITSTATUS(rc);
}

}  // namespace

TEST_CASE("float formatting round-trips") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 123456789.0, 0.0})
    CHECK(std::stod(format_double(v)) == v);
  CHECK(format_double(0.1) == "0.1");
}

TEST_CASE("config defaults, overrides and errors") {
  const auto lc = parse_config("");
  CHECK(lc.cfg.params.alpha == 1.0);
  CHECK(lc.cfg.datum.amplitude == 0.3);
  CHECK(lc.canonical.find("model.beta = 1\n") != std::string::npos);
  const auto o = parse_config("[model]\nalpha = 0.5\n", {"datum.amplitude=0.1", "queries.t=100,400",
                                                         "queries.xi=-0.2", "queries.xt=-30:150"});
  CHECK(o.cfg.params.alpha == 0.5);
  CHECK(o.cfg.datum.amplitude == 0.1);
  REQUIRE(o.cfg.queries.size() == 3);
  CHECK(o.cfg.queries[1].x == doctest::Approx(-80.0));
  CHECK(o.cfg.queries[2].t == 150.0);
  CHECK(kind_of([] { parse_config("[model]\ngamma = 1\n"); }) == ErrorKind::config_error);
  CHECK(kind_of([] { parse_config("", {"model.beta=-1"}); }) == ErrorKind::config_error);
  CHECK(kind_of([] { parse_config("", {"queries.t=2", "queries.xi=-0.2"}); }) == ErrorKind::config_error);
  CHECK(kind_of([] { parse_config("", {"tolerances.quad_tol=0"}); }) == ErrorKind::config_error);
  // the documented defaults parse back to the same canonical text
  CHECK(parse_config(default_config_text()).canonical == lc.canonical);
}

TEST_CASE("export") {
  const fs::path dir = scratch("export");
  Table empty{{"a", "b"}, {}};
  CHECK(kind_of([&] { export_table(empty, Format::csv, (dir / "e.csv").string()); }) == ErrorKind::io_failure);
  CHECK_FALSE(fs::exists(dir / "e.csv"));
  Table t{{"x", "n", "tag"}, {{0.1, 3LL, std::string("a")}, {2.0, -1LL, std::string("b")}}};
  export_table(t, Format::csv, (dir / "t.csv").string());
  export_table(t, Format::json, (dir / "t.json").string());
  CHECK(read_text((dir / "t.csv").string()) == "x,n,tag\n0.1,3,a\n2,-1,b\n");
  const auto j = nlohmann::json::parse(read_text((dir / "t.json").string()));
  CHECK(j["rows"].size() == t.rows.size());
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("scatter round trip and determinism") {
  const auto lc = parse_config("", quick);
  const fs::path a = scratch("scatter_a"), b = scratch("scatter_b");
  const auto ra = run(RunRequest{lc, Verb::scatter, a.string(), ""});
  const auto rb = run(RunRequest{lc, Verb::scatter, b.string(), ""});
  CHECK(sha256_file((a / "manifest.json").string()) == sha256_file((b / "manifest.json").string()));
  for (const auto& f : ra.files) CHECK(sha256_file((a / f).string()) == sha256_file((b / f).string()));
  const auto d = read_scattering_csv((a / "scattering.csv").string());
  CHECK(d.k.size() == 201);
  CHECK_FALSE(d.profile_available);
  const auto side = nlohmann::json::parse(read_text((a / "scattering.json").string()));
  CHECK(side["zero_count"]["count"] == 0);
}

TEST_CASE("phase and painleve verbs") {
  const fs::path dir = scratch("verbs");
  run(RunRequest{parse_config("", with({"phase.n=11"})), Verb::phase, dir.string(), ""});
  const std::string sig = read_text((dir / "signature.csv").string());
  CHECK(sig.rfind("re_k,im_k,sign\n", 0) == 0);
  CHECK(std::count(sig.begin(), sig.end(), '\n') == 122);
  const auto ph = nlohmann::json::parse(read_text((dir / "phase.json").string()));
  CHECK(ph["region"] == "oscillatory");

  run(RunRequest{parse_config("", with({"painleve.s=0.1", "painleve.y_min=-0.2", "painleve.y_max=0.2"})),
                 Verb::painleve, dir.string(), ""});
  const auto meta = nlohmann::json::parse(read_text((dir / "painleve.json").string()));
  CHECK(meta["max_residual"].get<double>() < 1e-6);
}

TEST_CASE("asymptote from a saved scattering file") {
  const fs::path dir = scratch("asym");
  const auto lc = parse_config("", with({"queries.t=100", "queries.xi=-0.2,-1"}));
  run(RunRequest{lc, Verb::scatter, dir.string(), ""});
  const fs::path dir2 = scratch("asym2");
  run(RunRequest{lc, Verb::asymptote, dir2.string(), (dir / "scattering.csv").string()});
  const std::string csv = read_text((dir2 / "asymptote.csv").string());
  CHECK(csv.rfind("x,t,u_asymptotic,amp1,amp2,phase1,phase2\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

TEST_CASE("zero datum pipeline") {
  const fs::path dir = scratch("zero");
  const auto lc = parse_config("", with({"datum.amplitude=0", "queries.t=3", "queries.xi=-0.2,-1"}));
  const auto res = run_pipeline(lc, dir.string());
  REQUIRE(res.records.size() == 2);
  for (const auto& r : res.records) {
    CHECK(r.u_direct == 0.0);
    CHECK(r.u_asymptotic == 0.0);
    CHECK(std::isfinite(r.scaled_err));
  }
  CHECK(res.records[0].region == Region::oscillatory);
  CHECK(res.records[1].region == Region::fast_decay);
  const auto cj = nlohmann::json::parse(read_text((dir / "comparison.json").string()));
  const std::string cc = read_text((dir / "comparison.csv").string());
  CHECK(cj["rows"].size() + 1 == std::size_t(std::count(cc.begin(), cc.end(), '\n')));
}

TEST_CASE("sector queries need alpha = 0") {
  const auto lc = parse_config("", with({"queries.t=100", "queries.sector_c=0.5"}));
  CHECK(kind_of([&] { run(RunRequest{lc, Verb::asymptote, scratch("sector").string(), ""}); }) ==
        ErrorKind::config_error);
}

TEST_CASE("CLI exit codes and error JSON") {
  const fs::path dir = scratch("cli");
  std::string q;
  for (const auto& s : quick) q += " --override " + s;
  CHECK(run_cli("--verb scatter --out " + dir.string() + q) == 0);
  CHECK(fs::exists(dir / "manifest.json"));
  CHECK(run_cli("--verb scatter --out " + dir.string() + " --override model.gamma=1") == 2);
  const fs::path big = scratch("cli_big");
  CHECK(run_cli("--verb scatter --out " + big.string() + q + " --override datum.amplitude=3") == 3);
  const auto err = nlohmann::json::parse(read_text((big / "error.json").string()));
  CHECK(err["error"] == "DiscreteSpectrumPresent");
  CHECK(err["module"] == "spectral_scattering");
  CHECK(run_cli("--verb nonsense --out " + dir.string()) == 2);
}
