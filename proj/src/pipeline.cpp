#include "emkdv/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <filesystem>
#include <json.hpp>
#include <mutex>

#include "emkdv/io.hpp"
#include "emkdv/oscillatory_asymptotics.hpp"
#include "emkdv/painleve_sector.hpp"
#include "emkdv/pde_reference.hpp"
#include "emkdv/spectral_scattering.hpp"

namespace emkdv {

namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;
constexpr const char* mod = "harness_cli";

struct context {
  const ExperimentConfig& cfg;
  std::string canonical;
  fs::path out;
  RunResult result;
  ojson summary = ojson::object();

  std::string path(const std::string& name) const { return (out / name).string(); }

  void table(const std::string& name, const Table& t) {
    export_table(t, Format::csv, path(name));
    result.files.push_back(name);
  }
  void json(const std::string& name, const ojson& j) {
    write_text(path(name), j.dump(1) + "\n");
    result.files.push_back(name);
  }
};

struct scattering_stage {
  ReflectionData data;
  std::optional<ZeroCount> zeros;
};

ojson zero_json(const std::optional<ZeroCount>& z) {
  if (!z) return nullptr;
  return ojson{{"count", z->count},   {"K", z->K},
               {"floor", z->floor},   {"height", z->height},
               {"samples", z->samples}, {"max_jump", z->max_jump},
               {"min_abs_a", z->min_abs_a}};
}

void certify(const std::optional<ZeroCount>& z) {
  if (z && z->count != 0)
    throw Error(ErrorKind::discrete_spectrum_present, "spectral_scattering", "count_zeros_of_a",
                fmt_num(z->count) + " zero(s) of a(k) in the upper half plane");
}

// Computes (or loads) r(k); writes scattering.csv and its sidecar when computed.
scattering_stage scatter(context& ctx, const std::string& input) {
  const auto& cfg = ctx.cfg;
  scattering_stage st;
  if (!input.empty()) {
    st.data = read_scattering_csv(input);
    fs::path side = fs::path(input).replace_extension(".json");
    if (fs::exists(side)) {
      const auto j = nlohmann::json::parse(read_text(side.string()), nullptr, false);
      if (j.is_discarded()) throw Error(ErrorKind::config_error, mod, "scatter", "malformed sidecar " + side.string());
      if (j.contains("zero_count") && j["zero_count"].is_object()) {
        ZeroCount z;
        z.count = j["zero_count"].value("count", 0);
        st.zeros = z;
      }
    }
    ctx.summary["scattering_input"] = fs::path(input).filename().string();
    ctx.summary["scattering_input_sha256"] = sha256_file(input);
    certify(st.zeros);
    return st;
  }
  const InitialProfile u0 = cfg.datum.build();
  st.data = compute_scattering(u0, cfg.kgrid, cfg.tol.ode_tol, cfg.tol.unitarity_tol, cfg.exec);
  st.zeros = count_zeros_of_a(st.data, cfg.zeros.contour_height, cfg.zeros.floor, cfg.exec);
  ctx.table("scattering.csv", scattering_table(st.data));
  ctx.json("scattering.json",
           ojson{{"X", st.data.X},
                 {"ode_tol", st.data.ode_tol},
                 {"unitarity_tol", cfg.tol.unitarity_tol},
                 {"k_step", st.data.step},
                 {"k_min", st.data.k_min()},
                 {"k_max", st.data.k_max()},
                 {"max_unitarity_defect", st.data.max_unitarity_defect},
                 {"max_det_defect", st.data.max_det_defect},
                 {"tail_b", st.data.tail_b},
                 {"zero_count", zero_json(st.zeros)}});
  certify(st.zeros);
  return st;
}

// r(0), real by the symmetry r(-k) = conj r(k) of a real datum.
double sector_s(const ExperimentConfig& cfg, const ReflectionData& data) {
  if (cfg.painleve.s) return *cfg.painleve.s;
  return reflection_at(data, 0.0).real();
}

struct asym_row {
  XT q{};
  Region region = Region::oscillatory;
  double u = 0, amp1 = 0, amp2 = 0, phase1 = 0, phase2 = 0;
};

std::vector<asym_row> asymptotics(const ExperimentConfig& cfg, const ReflectionData& data) {
  const auto& p = cfg.params;
  std::vector<asym_row> rows(cfg.queries.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].q = cfg.queries[i];
    rows[i].region = classify_region(rows[i].q.x, rows[i].q.t, p, cfg.painleve.M);
    if (rows[i].region == Region::merged || rows[i].region == Region::positive_xi)
      throw Error(ErrorKind::config_error, mod, "asymptote",
                  "no leading-order evaluator for region " + to_string(rows[i].region) +
                      " (x = " + format_double(rows[i].q.x) + ", t = " + format_double(rows[i].q.t) + ")");
  }
  const bool need_s = std::any_of(rows.begin(), rows.end(),
                                  [](const asym_row& r) { return r.region == Region::painleve_sector; });
  const double s = need_s ? sector_s(cfg, data) : 0.0;
  const AsymptoticOptions opt{cfg.tol.quad_tol, 3.0};

  std::exception_ptr first;
  std::mutex m;
  const long long n = static_cast<long long>(rows.size());
#pragma omp parallel for schedule(dynamic) if (cfg.exec == Exec::parallel)
  for (long long i = 0; i < n; ++i) {
    try {
      auto& r = rows[i];
      switch (r.region) {
        case Region::oscillatory: {
          const auto lo = leading_order(r.q.x, r.q.t, data, p, opt);
          r.u = lo.u;
          r.amp1 = lo.env.amp1;
          r.amp2 = lo.env.amp2;
          r.phase1 = lo.phase1;
          r.phase2 = lo.phase2;
          break;
        }
        case Region::fast_decay: r.u = decay_region_bound(r.q.x, r.q.t, data, p).u; break;
        case Region::painleve_sector:
          r.u = painleve_asymptote(r.q.x, r.q.t, s, p, cfg.painleve.M, cfg.painleve.contour);
          break;
        default: break;
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(m);
      if (!first) first = std::current_exception();
    }
  }
  if (first) std::rethrow_exception(first);
  return rows;
}

void write_asymptotics(context& ctx, const std::vector<asym_row>& rows) {
  Table t{{"x", "t", "u_asymptotic", "amp1", "amp2", "phase1", "phase2"}, {}};
  for (const auto& r : rows) t.rows.push_back({r.q.x, r.q.t, r.u, r.amp1, r.amp2, r.phase1, r.phase2});
  ctx.table("asymptote.csv", t);
}

PdeOptions pde_options(const ExperimentConfig& cfg) {
  PdeOptions o = cfg.pde;
  o.exec = cfg.exec;
  return o;
}

ojson ledger_json(const FieldSnapshot& s) {
  return ojson{{"t", s.t},
               {"mass", s.mass},
               {"energy", s.energy},
               {"absorbed_mass", s.absorbed_mass},
               {"absorbed_energy", s.absorbed_energy},
               {"mass_drift", s.mass_drift()},
               {"relative_energy_drift", s.energy_drift()},
               {"seam_max", s.seam_max}};
}

ojson pde_json(const ExperimentConfig& cfg, const std::vector<FieldSnapshot>& snaps) {
  const auto& o = cfg.pde;
  ojson ledger = ojson::array();
  for (const auto& s : snaps) ledger.push_back(ledger_json(s));
  return ojson{{"L_domain", o.grid.L_domain},
               {"N", o.grid.N},
               {"dt", o.dt},
               {"startup_dt", o.startup_dt},
               {"startup_time", o.startup_time},
               {"sponge_width", o.sponge.width},
               {"sponge_strength", o.sponge.strength},
               {"boundary_tol", o.boundary_tol},
               {"contour_points", o.contour_points},
               {"mass0", snaps.empty() ? 0.0 : snaps.front().mass0},
               {"energy0", snaps.empty() ? 0.0 : snaps.front().energy0},
               {"conservation", ledger}};
}

void verb_scatter(context& ctx) {
  const auto st = scatter(ctx, "");
  ctx.summary["k_points"] = st.data.k.size();
  ctx.summary["zero_count"] = zero_json(st.zeros);
}

void verb_phase(context& ctx) {
  const auto& c = ctx.cfg.phase;
  const auto& p = ctx.cfg.params;
  const auto tab = signature_table(c.xi, p, c.re_min, c.re_max, c.im_min, c.im_max, c.n);
  Table t{{"re_k", "im_k", "sign"}, {}};
  for (std::size_t j = 0; j < tab.n; ++j)
    for (std::size_t i = 0; i < tab.n; ++i)
      t.rows.push_back({tab.re_at(i), tab.im_at(j), static_cast<long long>(tab.sign[j * tab.n + i])});
  ctx.table("signature.csv", t);
  const auto sp = stationary_points(c.xi, p);
  auto opt = [](const std::optional<double>& v) { return v ? ojson(*v) : ojson(nullptr); };
  ctx.json("phase.json", ojson{{"xi", c.xi},
                               {"region", to_string(sp.region)},
                               {"merge_xi", merge_xi(p)},
                               {"k1", opt(sp.k1)},
                               {"k2", opt(sp.k2)},
                               {"k0", opt(sp.k0)}});
}

void verb_asymptote(context& ctx, const std::string& input) {
  if (ctx.cfg.queries.empty())
    throw Error(ErrorKind::config_error, mod, "asymptote", "no queries configured");
  const auto st = scatter(ctx, input);
  write_asymptotics(ctx, asymptotics(ctx.cfg, st.data));
}

void verb_painleve(context& ctx, const std::string& input) {
  const auto& pc = ctx.cfg.painleve;
  double s = 0.0;
  if (pc.s) {
    s = *pc.s;
  } else {
    const auto st = scatter(ctx, input);
    s = sector_s(ctx.cfg, st.data);
  }
  const auto sol = solve_painleve_grid(s, pc.y_min, pc.y_max, pc.y_step, pc.contour, ctx.cfg.exec);
  Table t{{"y", "u_p", "residual"}, {}};
  for (std::size_t i = 0; i < sol.y.size(); ++i) t.rows.push_back({sol.y[i], sol.u[i], sol.residual[i]});
  ctx.table("painleve.csv", t);
  ctx.json("painleve.json", ojson{{"s", s},
                                  {"L", pc.contour.L},
                                  {"c", pc.contour.c},
                                  {"h", pc.contour.h},
                                  {"n", pc.contour.nodes_per_line()},
                                  {"solver_tol", ctx.cfg.tol.solver_tol},
                                  {"max_residual", sol.max_residual}});
}

void verb_simulate(context& ctx) {
  if (ctx.cfg.pde_t_out.empty())
    throw Error(ErrorKind::config_error, mod, "simulate", "pde.t_out is empty");
  const auto snaps = evolve(ctx.cfg.datum.build(), ctx.cfg.params, pde_options(ctx.cfg), ctx.cfg.pde_t_out);
  for (const auto& s : snaps) {
    Table t{{"x", "u"}, {}};
    for (std::size_t j = 0; j < s.x.size(); ++j) t.rows.push_back({s.x[j], s.u[j]});
    ctx.table("snapshot_t" + format_double(s.t) + ".csv", t);
  }
  ctx.json("pde.json", pde_json(ctx.cfg, snaps));
}

void verb_compare(context& ctx, const std::string& input) {
  const auto& cfg = ctx.cfg;
  if (cfg.queries.empty()) throw Error(ErrorKind::config_error, mod, "compare", "no queries configured");
  const auto st = scatter(ctx, input);
  const auto rows = asymptotics(cfg, st.data);
  write_asymptotics(ctx, rows);

  std::vector<double> times;
  for (const auto& q : cfg.queries) times.push_back(q.t);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  const auto snaps = evolve(cfg.datum.build(), cfg.params, pde_options(cfg), times);
  ctx.json("pde.json", pde_json(cfg, snaps));

  Table t{{"x", "t", "u_direct", "u_asymptotic", "abs_err", "scaled_err", "region"}, {}};
  for (const auto& r : rows) {
    const auto it = std::lower_bound(times.begin(), times.end(), r.q.t);
    const auto& snap = snaps[std::size_t(it - times.begin())];
    ComparisonRecord rec;
    rec.x = r.q.x;
    rec.t = r.q.t;
    rec.u_direct = sample_field(snap, {r.q.x})[0];
    rec.u_asymptotic = r.u;
    rec.abs_err = std::abs(rec.u_direct - rec.u_asymptotic);
    rec.scaled_err = scaled_error(rec.abs_err, rec.t, r.region);
    rec.region = r.region;
    ctx.result.records.push_back(rec);
    t.rows.push_back({rec.x, rec.t, rec.u_direct, rec.u_asymptotic, rec.abs_err, rec.scaled_err,
                      to_string(rec.region)});
  }
  ctx.table("comparison.csv", t);
  export_table(t, Format::json, ctx.path("comparison.json"));
  ctx.result.files.push_back("comparison.json");
}

}  // namespace

double scaled_error(double abs_err, double t, Region region) {
  switch (region) {
    case Region::oscillatory: return abs_err * t / std::log(t);
    case Region::painleve_sector: return abs_err * std::pow(t, 0.4);
    default: return abs_err * std::sqrt(t);
  }
}

std::string to_string(Verb v) {
  switch (v) {
    case Verb::scatter: return "scatter";
    case Verb::phase: return "phase";
    case Verb::asymptote: return "asymptote";
    case Verb::painleve: return "painleve";
    case Verb::simulate: return "simulate";
    case Verb::compare: return "compare";
  }
  return "unknown";
}

Verb verb_from_string(const std::string& name) {
  for (Verb v : {Verb::scatter, Verb::phase, Verb::asymptote, Verb::painleve, Verb::simulate, Verb::compare})
    if (to_string(v) == name) return v;
  throw Error(ErrorKind::config_error, mod, "verb", "unknown verb '" + name + "'");
}

RunResult run(const RunRequest& req) {
  const ExperimentConfig& cfg = req.config.cfg;
  context ctx{cfg, req.config.canonical, req.out_dir.empty() ? fs::path(cfg.out_dir) : fs::path(req.out_dir), {}};
  std::error_code ec;
  fs::create_directories(ctx.out, ec);
  if (ec) throw Error(ErrorKind::io_failure, mod, "run", "cannot create '" + ctx.out.string() + "': " + ec.message());
  ctx.result.config_hash = sha256_hex(req.config.canonical);

  switch (req.verb) {
    case Verb::scatter: verb_scatter(ctx); break;
    case Verb::phase: verb_phase(ctx); break;
    case Verb::asymptote: verb_asymptote(ctx, req.scattering_input); break;
    case Verb::painleve: verb_painleve(ctx, req.scattering_input); break;
    case Verb::simulate: verb_simulate(ctx); break;
    case Verb::compare: verb_compare(ctx, req.scattering_input); break;
  }

  ojson files = ojson::array();
  for (const auto& f : ctx.result.files) files.push_back(ojson{{"name", f}, {"sha256", sha256_file(ctx.path(f))}});
  const ojson manifest{{"verb", to_string(req.verb)},
                       {"config_sha256", ctx.result.config_hash},
                       {"config", req.config.canonical},
                       {"summary", ctx.summary},
                       {"files", files}};
  write_text(ctx.path("manifest.json"), manifest.dump(1) + "\n");
  return ctx.result;
}

RunResult run_pipeline(const LoadedConfig& cfg, const std::string& out_dir) {
  return run(RunRequest{cfg, Verb::compare, out_dir, ""});
}

std::string error_json(const Error& e) {
  return ojson{{"error", std::string(to_string(e.kind()))},
               {"module", e.module()},
               {"operation", e.operation()},
               {"detail", e.detail()},
               {"exit_code", exit_code(e.kind())}}
             .dump(1) + "\n";
}

}  // namespace emkdv
