#include "glx/config.hpp"

#include <array>
#include <fstream>
#include <set>
#include <sstream>

#include "glx/error.hpp"

namespace glx {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double to_double(const std::string& raw, const std::string& where) {
  try {
    std::size_t used = 0;
    const double v = std::stod(raw, &used);
    if (trim(raw.substr(used)).empty()) return v;
  } catch (...) {
  }
  throw Error("config: expected a number for " + where + ", got '" + raw + "'");
}

long long to_int(const std::string& raw, const std::string& where) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(raw, &used);
    if (trim(raw.substr(used)).empty()) return v;
  } catch (...) {
  }
  throw Error("config: expected an integer for " + where + ", got '" + raw + "'");
}

bool to_bool(const std::string& raw, const std::string& where) {
  if (raw == "true" || raw == "1" || raw == "yes" || raw == "on") return true;
  if (raw == "false" || raw == "0" || raw == "no" || raw == "off") return false;
  throw Error("config: expected a boolean for " + where + ", got '" + raw + "'");
}

std::vector<double> to_doubles(const std::string& raw, const std::string& where) {
  std::istringstream is(raw);
  std::vector<double> out;
  std::string tok;
  while (is >> tok) out.push_back(to_double(tok, where));
  if (out.empty()) throw Error("config: empty value for " + where);
  return out;
}

Complex to_complex(const std::string& raw, const std::string& where) {
  const std::vector<double> v = to_doubles(raw, where);
  if (v.size() == 1) return Complex(v[0], 0.0);
  if (v.size() == 2) return Complex(v[0], v[1]);
  throw Error("config: expected 're' or 're im' for " + where);
}

std::array<double, 3> to_triple(const std::string& raw, const std::string& where) {
  const std::vector<double> v = to_doubles(raw, where);
  std::array<double, 3> out{0.0, 0.0, 0.0};
  if (v.size() > 3) throw Error("config: at most 3 components for " + where);
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i];
  // A single component applies to every axis.
  if (v.size() == 1) out[1] = out[2] = v[0];
  return out;
}

SpatialShape::Kind to_shape_kind(const std::string& raw, const std::string& where) {
  if (raw == "gaussian") return SpatialShape::Kind::gaussian;
  if (raw == "bump") return SpatialShape::Kind::bump;
  throw Error("config: unknown shape '" + raw + "' for " + where);
}

}  // namespace

bool ConfigFile::has(const std::string& section, const std::string& key) const {
  const auto s = sections.find(section);
  return s != sections.end() && s->second.count(key) > 0;
}

std::string ConfigFile::get(const std::string& section, const std::string& key) const {
  const auto s = sections.find(section);
  if (s != sections.end()) {
    const auto k = s->second.find(key);
    if (k != s->second.end()) return k->second;
  }
  throw Error("config: missing [" + section + "] " + key);
}

std::string ConfigFile::get_or(const std::string& section, const std::string& key,
                               const std::string& fallback) const {
  return has(section, key) ? get(section, key) : fallback;
}

ConfigFile parse_config_text(const std::string& text) {
  ConfigFile cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw Error("config: malformed section header at line " + std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw Error("config: empty section name at line " + std::to_string(lineno));
      cfg.sections[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error("config: expected 'key = value' at line " + std::to_string(lineno));
    if (section.empty())
      throw Error("config: key before any [section] at line " + std::to_string(lineno));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw Error("config: empty key or value at line " + std::to_string(lineno));
    cfg.sections[section][key] = value;
  }
  return cfg;
}

ConfigFile parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("config: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

namespace {

const std::map<std::string, std::set<std::string>> kKnownKeys = {
    {"params", {"theta", "m", "p", "a", "b", "gamma"}},
    {"grid", {"dim", "half_width", "points"}},
    {"scheme",
     {"dt", "t_end", "snapshot_stride", "extinction_tolerance", "splitting",
      "store_fields"}},
    {"forcing", {"kind", "t0", "mu", "eps", "shape", "center", "width", "amplitude"}},
    {"initial", {"kind", "shape", "center", "width", "amplitude", "file"}},
    {"diagnostics",
     {"ledger", "extinction", "exp_decay", "safety_factor", "c_gn", "gn_family"}},
    {"output", {"dir", "seed"}},
};

void reject_unknown(const ConfigFile& cfg) {
  for (const auto& [section, keys] : cfg.sections) {
    const auto known = kKnownKeys.find(section);
    if (known == kKnownKeys.end())
      throw Error("config: unknown section [" + section + "]");
    for (const auto& [key, value] : keys)
      if (known->second.count(key) == 0)
        throw Error("config: unknown key '" + key + "' in [" + section + "]");
  }
}

SpatialShape parse_shape(const ConfigFile& cfg, const std::string& section) {
  SpatialShape shape;
  if (cfg.has(section, "shape"))
    shape.kind = to_shape_kind(cfg.get(section, "shape"), section);
  if (cfg.has(section, "center"))
    shape.center = to_triple(cfg.get(section, "center"), section + ".center");
  if (cfg.has(section, "width"))
    shape.width = to_triple(cfg.get(section, "width"), section + ".width");
  if (cfg.has(section, "amplitude"))
    shape.amplitude = to_double(cfg.get(section, "amplitude"), section + ".amplitude");
  for (double w : shape.width)
    if (!(w > 0.0)) throw Error("config: " + section + ".width must be positive");
  return shape;
}

}  // namespace

RunConfig run_config_from_text(const std::string& text) {
  const ConfigFile cfg = parse_config_text(text);
  reject_unknown(cfg);
  RunConfig rc;

  rc.params.theta = to_double(cfg.get_or("params", "theta", "0"), "params.theta");
  rc.params.m = to_double(cfg.get_or("params", "m", "0"), "params.m");
  rc.params.p = to_double(cfg.get_or("params", "p", "3"), "params.p");
  rc.params.a = to_complex(cfg.get_or("params", "a", "1"), "params.a");
  rc.params.b = to_complex(cfg.get_or("params", "b", "0"), "params.b");
  rc.params.gamma = to_complex(cfg.get_or("params", "gamma", "0"), "params.gamma");

  const int dim = static_cast<int>(to_int(cfg.get_or("grid", "dim", "1"), "grid.dim"));
  const double half_width =
      to_double(cfg.get_or("grid", "half_width", "10"), "grid.half_width");
  const int points =
      static_cast<int>(to_int(cfg.get_or("grid", "points", "255"), "grid.points"));
  rc.grid = Grid(dim, half_width, points);
  rc.params.dim = dim;

  rc.scheme.dt = to_double(cfg.get_or("scheme", "dt", "1e-3"), "scheme.dt");
  rc.scheme.t_end = to_double(cfg.get_or("scheme", "t_end", "1"), "scheme.t_end");
  rc.scheme.snapshot_stride = static_cast<int>(
      to_int(cfg.get_or("scheme", "snapshot_stride", "1"), "scheme.snapshot_stride"));
  rc.scheme.extinction_tolerance =
      to_double(cfg.get_or("scheme", "extinction_tolerance", "0"),
                "scheme.extinction_tolerance");
  const std::string splitting = cfg.get_or("scheme", "splitting", "strang");
  if (splitting == "strang")
    rc.scheme.splitting = Splitting::strang;
  else if (splitting == "lie")
    rc.scheme.splitting = Splitting::lie;
  else
    throw Error("config: scheme.splitting must be 'strang' or 'lie'");
  rc.scheme.store_fields =
      to_bool(cfg.get_or("scheme", "store_fields", "false"), "scheme.store_fields");

  const std::string fkind = cfg.get_or("forcing", "kind", "zero");
  if (fkind == "zero") rc.forcing_kind = ForcingKind::zero;
  else if (fkind == "cutoff") rc.forcing_kind = ForcingKind::cutoff;
  else if (fkind == "bounded") rc.forcing_kind = ForcingKind::bounded;
  else if (fkind == "scheduled") rc.forcing_kind = ForcingKind::scheduled;
  else if (fkind == "bangbang") rc.forcing_kind = ForcingKind::bangbang;
  else throw Error("config: unknown forcing kind '" + fkind + "'");
  rc.forcing_t0 = to_double(cfg.get_or("forcing", "t0", "0"), "forcing.t0");
  rc.forcing_shape = parse_shape(cfg, "forcing");
  rc.mu = to_double(cfg.get_or("forcing", "mu", "0"), "forcing.mu");
  rc.eps = to_double(cfg.get_or("forcing", "eps", "-1"), "forcing.eps");

  const std::string ikind = cfg.get_or("initial", "kind", "gaussian");
  if (ikind == "zero") rc.initial_kind = InitialKind::zero;
  else if (ikind == "gaussian") rc.initial_kind = InitialKind::gaussian;
  else if (ikind == "bump") rc.initial_kind = InitialKind::bump;
  else if (ikind == "file") rc.initial_kind = InitialKind::file;
  else throw Error("config: unknown initial kind '" + ikind + "'");
  rc.initial_shape = parse_shape(cfg, "initial");
  if (rc.initial_kind == InitialKind::gaussian)
    rc.initial_shape.kind = SpatialShape::Kind::gaussian;
  if (rc.initial_kind == InitialKind::bump)
    rc.initial_shape.kind = SpatialShape::Kind::bump;
  rc.initial_file = cfg.get_or("initial", "file", "");
  if (rc.initial_kind == InitialKind::file && rc.initial_file.empty())
    throw Error("config: initial.kind = file needs initial.file");

  rc.diag_ledger = to_bool(cfg.get_or("diagnostics", "ledger", "true"), "diagnostics.ledger");
  rc.diag_extinction =
      to_bool(cfg.get_or("diagnostics", "extinction", "true"), "diagnostics.extinction");
  rc.diag_exp_decay =
      to_bool(cfg.get_or("diagnostics", "exp_decay", "false"), "diagnostics.exp_decay");
  rc.safety_factor =
      to_double(cfg.get_or("diagnostics", "safety_factor", "1.1"), "safety_factor");
  const std::string cgn = cfg.get_or("diagnostics", "c_gn", "auto");
  rc.c_gn = cgn == "auto" ? -1.0 : to_double(cgn, "diagnostics.c_gn");
  rc.gn_family = static_cast<int>(
      to_int(cfg.get_or("diagnostics", "gn_family", "64"), "diagnostics.gn_family"));

  rc.out_dir = cfg.get_or("output", "dir", "out");
  rc.seed = static_cast<std::uint64_t>(
      to_int(cfg.get_or("output", "seed", "0"), "output.seed"));
  return rc;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("config: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return run_config_from_text(buf.str());
}

ComplexField build_initial_condition(const RunConfig& config) {
  switch (config.initial_kind) {
    case InitialKind::zero:
      return ComplexField::zeros(config.grid);
    case InitialKind::file: {
      ComplexField u = load_field(config.initial_file);
      if (!(u.grid == config.grid))
        throw Error("initial condition file grid does not match the run grid");
      return u;
    }
    case InitialKind::gaussian:
    case InitialKind::bump:
      return config.initial_shape.materialize(config.grid);
  }
  return ComplexField::zeros(config.grid);
}

ForcingProfile build_forcing(const RunConfig& config, const DerivedConstants* k) {
  switch (config.forcing_kind) {
    case ForcingKind::zero:
      return zero_forcing();
    case ForcingKind::cutoff:
      return cutoff_forcing(config.forcing_shape, config.forcing_t0);
    case ForcingKind::bounded:
      return bounded_forcing(config.forcing_shape, config.params, config.forcing_t0);
    case ForcingKind::scheduled:
      if (k == nullptr)
        throw Error("build_forcing: scheduled forcing needs derived constants");
      return scheduled_profile(config.params, *k, config.forcing_shape, config.eps);
    case ForcingKind::bangbang:
      return bangbang_forcing(config.mu);
  }
  return zero_forcing();
}

}  // namespace glx
