#include "emkdv/config.hpp"

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "emkdv/error.hpp"

namespace emkdv {

namespace {

[[noreturn]] void fail(const std::string& what) {
  throw Error(ErrorKind::config_error, "harness_cli", "load_config", what);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    fail(key + ": expected a number, got '" + v + "'");
  }
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  if (boost::algorithm::trim_copy(v).empty()) return out;
  std::vector<std::string> parts;
  boost::split(parts, v, boost::is_any_of(","));
  for (auto& p : parts) out.push_back(to_double(key, boost::algorithm::trim_copy(p)));
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  fail(key + ": expected true/false, got '" + v + "'");
}

struct parse_state {
  ExperimentConfig cfg;
  std::vector<double> xi, t, sector_c;
  std::vector<XT> xt;
};

struct key_spec {
  std::string section, name, default_value, doc;
  std::function<void(parse_state&, const std::string& key, const std::string& v)> set;
};

#define NUM(field) [](parse_state& st, const std::string& k, const std::string& v) { st.cfg.field = to_double(k, v); }

const std::vector<key_spec>& registry() {
  static const std::vector<key_spec> keys = {
      {"model", "alpha", "1", "third-order dispersion coefficient (>= 0; 0 selects the reduced equation)", NUM(params.alpha)},
      {"model", "beta", "1", "fifth-order dispersion coefficient (> 0)", NUM(params.beta)},
      {"datum", "kind", "sech", "sech | gaussian | tabulated",
       [](parse_state& st, const std::string&, const std::string& v) { st.cfg.datum.kind = profile_kind_from_string(v); }},
      {"datum", "amplitude", "0.3", "A in A sech(x/w) or A exp(-(x/w)^2)", NUM(datum.amplitude)},
      {"datum", "width", "1", "w", NUM(datum.width)},
      {"datum", "support_radius", "0", "truncation half-width X (0: smallest X with |u0(X)| < 1e-12)", NUM(datum.support_radius)},
      {"datum", "decay_tol", "1e-10", "required bound on |u0(+-X)|", NUM(datum.decay_tol)},
      {"datum", "samples_file", "", "tabulated datum: CSV with header x,u",
       [](parse_state& st, const std::string&, const std::string& v) { st.cfg.datum.samples_file = v; }},
      {"kgrid", "half_width", "5", "initial k grid is [-half_width, half_width]", NUM(kgrid.half_width)},
      {"kgrid", "step", "0.01", "k grid spacing", NUM(kgrid.step)},
      {"kgrid", "auto_extend", "true", "extend by 1 until |b| < tail_tol at both ends",
       [](parse_state& st, const std::string& k, const std::string& v) { st.cfg.kgrid.auto_extend = to_bool(k, v); }},
      {"kgrid", "tail_tol", "1e-10", "target |b| at the grid ends", NUM(kgrid.tail_tol)},
      {"kgrid", "max_half_width", "40", "extension limit", NUM(kgrid.max_half_width)},
      {"tolerances", "ode_tol", "1e-13", "Jost integration tolerance (abs and rel)", NUM(tol.ode_tol)},
      {"tolerances", "quad_tol", "1e-10", "chi quadrature node-doubling tolerance", NUM(tol.quad_tol)},
      {"tolerances", "solver_tol", "1e-10", "allowed |Im u_p| and symmetry defect of the RH solve", NUM(tol.solver_tol)},
      {"tolerances", "unitarity_tol", "1e-8", "max ||a|^2+|b|^2-1|", NUM(tol.unitarity_tol)},
      {"zeros", "contour_height", "2", "upper edge of the zero-counting rectangle", NUM(zeros.contour_height)},
      {"zeros", "floor", "1e-3", "lower edge of the zero-counting rectangle", NUM(zeros.floor)},
      {"queries", "t", "", "times for the xi and sector_c families",
       [](parse_state& st, const std::string& k, const std::string& v) { st.t = to_list(k, v); }},
      {"queries", "xi", "", "x = xi t for each t",
       [](parse_state& st, const std::string& k, const std::string& v) { st.xi = to_list(k, v); }},
      {"queries", "sector_c", "", "x = c t^(1/5) for each t",
       [](parse_state& st, const std::string& k, const std::string& v) { st.sector_c = to_list(k, v); }},
      {"queries", "xt", "", "explicit pairs x:t separated by commas",
       [](parse_state& st, const std::string& k, const std::string& v) {
         std::vector<std::string> parts;
         if (boost::algorithm::trim_copy(v).empty()) return;
         boost::split(parts, v, boost::is_any_of(","));
         for (auto& p : parts) {
           const auto colon = p.find(':');
           if (colon == std::string::npos) fail(k + ": expected x:t pairs");
           st.xt.push_back({to_double(k, boost::algorithm::trim_copy(p.substr(0, colon))),
                                          to_double(k, boost::algorithm::trim_copy(p.substr(colon + 1)))});
         }
       }},
      {"painleve", "M", "2", "sector bound 0 < x <= M t^(1/5)", NUM(painleve.M)},
      {"painleve", "y_min", "-2", "u_p table range", NUM(painleve.y_min)},
      {"painleve", "y_max", "3", "u_p table range", NUM(painleve.y_max)},
      {"painleve", "y_step", "0.02", "u_p table spacing (also the residual stencil spacing)", NUM(painleve.y_step)},
      {"painleve", "contour_c", "0.5", "RH lines Im z = +-c", NUM(painleve.contour.c)},
      {"painleve", "contour_L", "2.6", "RH lines truncated at |Re z| <= L", NUM(painleve.contour.L)},
      {"painleve", "contour_h", "0.04", "RH trapezoid node spacing", NUM(painleve.contour.h)},
      {"painleve", "s", "", "Stokes datum (empty: r(0) of the datum)",
       [](parse_state& st, const std::string& k, const std::string& v) {
         ExperimentConfig& c = st.cfg;
         if (boost::algorithm::trim_copy(v).empty()) c.painleve.s.reset();
         else c.painleve.s = to_double(k, v);
       }},
      {"phase", "xi", "-0.2", "xi for the signature table", NUM(phase.xi)},
      {"phase", "re_min", "-1", "signature window", NUM(phase.re_min)},
      {"phase", "re_max", "1", "signature window", NUM(phase.re_max)},
      {"phase", "im_min", "-1", "signature window", NUM(phase.im_min)},
      {"phase", "im_max", "1", "signature window", NUM(phase.im_max)},
      {"phase", "n", "101", "signature grid points per axis",
       [](parse_state& st, const std::string& k, const std::string& v) {
         ExperimentConfig& c = st.cfg;
         const double d = to_double(k, v);
         if (!(d >= 2.0) || d != std::floor(d)) fail(k + ": expected an integer >= 2");
         c.phase.n = static_cast<std::size_t>(d);
       }},
      {"pde", "L_domain", "600", "periodic domain [-L, L)", NUM(pde.grid.L_domain)},
      {"pde", "N", "16384", "grid points (power of two)",
       [](parse_state& st, const std::string& k, const std::string& v) {
         ExperimentConfig& c = st.cfg;
         const double d = to_double(k, v);
         if (!(d >= 1.0) || d != std::floor(d)) fail(k + ": expected a positive integer");
         c.pde.grid.N = static_cast<std::size_t>(d);
       }},
      {"pde", "dt", "0.005", "ETDRK4 step", NUM(pde.dt)},
      {"pde", "startup_dt", "1e-4", "step over the initial transient (0 disables)", NUM(pde.startup_dt)},
      {"pde", "startup_time", "0.5", "length of the initial transient", NUM(pde.startup_time)},
      {"pde", "t_out", "50,100,200,400", "snapshot times for the simulate verb",
       [](parse_state& st, const std::string& k, const std::string& v) { st.cfg.pde_t_out = to_list(k, v); }},
      {"pde", "sponge_width", "100", "absorbing layer width next to the seam", NUM(pde.sponge.width)},
      {"pde", "sponge_strength", "200", "absorbing layer peak rate (0 disables)", NUM(pde.sponge.strength)},
      {"pde", "boundary_tol", "1e-8", "max |u| tolerated at the periodic seam", NUM(pde.boundary_tol)},
      {"pde", "spectral_tol", "1e-12", "datum spectrum allowed at the dealiasing cutoff", NUM(pde.spectral_tol)},
      {"pde", "contour_points", "32", "phi-function contour points",
       [](parse_state& st, const std::string& k, const std::string& v) { st.cfg.pde.contour_points = int(to_double(k, v)); }},
      {"output", "dir", "out", "output directory",
       [](parse_state& st, const std::string&, const std::string& v) { st.cfg.out_dir = v; }},
      {"run", "exec", "parallel", "parallel | serial",
       [](parse_state& st, const std::string& k, const std::string& v) {
         ExperimentConfig& c = st.cfg;
         if (v == "parallel") c.exec = Exec::parallel;
         else if (v == "serial") c.exec = Exec::serial;
         else fail(k + ": expected parallel or serial");
       }},
  };
  return keys;
}

#undef NUM

}  // namespace

InitialProfile DatumConfig::build() const {
  if (kind != ProfileKind::tabulated)
    return kind == ProfileKind::sech ? InitialProfile::sech(amplitude, width, support_radius, decay_tol)
                                     : InitialProfile::gaussian(amplitude, width, support_radius, decay_tol);
  std::ifstream in(samples_file);
  if (!in) fail("cannot open samples_file '" + samples_file + "'");
  std::string line;
  std::getline(in, line);
  if (boost::algorithm::trim_copy(line) != "x,u") fail("samples_file must start with header x,u");
  std::vector<std::pair<double, double>> samples;
  while (std::getline(in, line)) {
    boost::algorithm::trim(line);
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) fail("samples_file: malformed row '" + line + "'");
    samples.emplace_back(to_double("samples_file", line.substr(0, comma)),
                         to_double("samples_file", line.substr(comma + 1)));
  }
  return InitialProfile::tabulated(std::move(samples), support_radius, decay_tol);
}

void ExperimentConfig::validate() const {
  params.validate();
  for (double v : {tol.ode_tol, tol.quad_tol, tol.solver_tol, tol.unitarity_tol})
    if (!(v > 0.0)) fail("all tolerances must be > 0");
  for (const auto& q : queries)
    if (!(q.t >= 3.0)) fail("query times must be >= 3");
  if (!(painleve.M > 1.0)) fail("painleve.M must be > 1");
  if (!(painleve.y_step > 0.0) || !(painleve.y_max > painleve.y_min)) fail("bad painleve y range");
  if (!(pde.dt > 0.0)) fail("pde.dt must be > 0");
  if (pde.startup_dt < 0.0 || pde.startup_time < 0.0) fail("pde startup settings must be >= 0");
  for (std::size_t i = 0; i < pde_t_out.size(); ++i)
    if (!(pde_t_out[i] > 0.0) || (i > 0 && !(pde_t_out[i] > pde_t_out[i - 1])))
      fail("pde.t_out must be positive and strictly ascending");
  pde.grid.validate();
  if (!(zeros.floor > 0.0) || !(zeros.contour_height > zeros.floor)) fail("bad zero-count rectangle");
}

LoadedConfig parse_config(const std::string& text, const std::vector<std::string>& overrides) {
  boost::property_tree::ptree pt;
  try {
    std::istringstream in(text);
    boost::property_tree::read_ini(in, pt);
  } catch (const boost::property_tree::ini_parser_error& e) {
    fail(std::string("parse error: ") + e.what());
  }
  std::map<std::string, std::string> values;  // "section.key" -> value
  for (const auto& sec : pt) {
    if (sec.second.empty()) fail("key '" + sec.first + "' outside a [section]");
    for (const auto& kv : sec.second)
      values[sec.first + "." + kv.first] = boost::algorithm::trim_copy(kv.second.data());
  }
  for (const auto& ov : overrides) {
    const auto eq = ov.find('=');
    if (eq == std::string::npos || ov.find('.') > eq) fail("override must be section.key=value: '" + ov + "'");
    values[boost::algorithm::trim_copy(ov.substr(0, eq))] = boost::algorithm::trim_copy(ov.substr(eq + 1));
  }
  const auto& keys = registry();
  std::map<std::string, const key_spec*> index;
  for (const auto& k : keys) index[k.section + "." + k.name] = &k;
  for (const auto& [key, v] : values)
    if (!index.count(key)) fail("unknown key '" + key + "'");

  parse_state st;
  std::ostringstream canon;
  for (const auto& [key, spec] : index) {
    const auto it = values.find(key);
    const std::string& v = it == values.end() ? spec->default_value : it->second;
    spec->set(st, key, v);
    canon << key << " = " << v << "\n";
  }
  for (double t : st.t) {
    for (double xi : st.xi) st.cfg.queries.push_back({xi * t, t});
    for (double c : st.sector_c) st.cfg.queries.push_back({c * std::pow(t, 0.2), t});
  }
  if ((!st.xi.empty() || !st.sector_c.empty()) && st.t.empty())
    fail("queries.xi / queries.sector_c need queries.t");
  for (const auto& q : st.xt) st.cfg.queries.push_back(q);
  st.cfg.validate();
  return {std::move(st.cfg), canon.str()};
}

LoadedConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) fail("cannot open config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), overrides);
}

std::string default_config_text() {
  std::ostringstream out;
  std::string section;
  for (const auto& k : registry()) {
    if (k.section != section) {
      out << (section.empty() ? "" : "\n") << "[" << k.section << "]\n";
      section = k.section;
    }
    out << "# " << k.doc << "\n" << k.name << " = " << k.default_value << "\n";
  }
  return out.str();
}

}  // namespace emkdv
