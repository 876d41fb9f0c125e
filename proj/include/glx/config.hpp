#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "glx/dynamics.hpp"
#include "glx/field.hpp"
#include "glx/forcing.hpp"
#include "glx/params.hpp"

namespace glx {

// Flat line-oriented run configuration:
//   # comment
//   [section]
//   key = value
// Values are scalars, booleans, words, pairs "re im" for complex numbers or
// triples "x y z" for per-axis vectors. Unknown keys are an error (typos
// should not silently change an experiment).
struct ConfigFile {
  // section -> key -> raw value string
  std::map<std::string, std::map<std::string, std::string>> sections;

  bool has(const std::string& section, const std::string& key) const;
  std::string get(const std::string& section, const std::string& key) const;
  std::string get_or(const std::string& section, const std::string& key,
                     const std::string& fallback) const;
};

ConfigFile parse_config_file(const std::string& path);
ConfigFile parse_config_text(const std::string& text);

enum class InitialKind { zero, gaussian, bump, file };

struct RunConfig {
  PhysicalParams params;
  Grid grid{1, 10.0, 255};
  SchemeConfig scheme;

  ForcingKind forcing_kind = ForcingKind::zero;
  double forcing_t0 = 0.0;
  SpatialShape forcing_shape;
  double mu = 0.0;
  double eps = -1.0;  // scheduled amplitude; negative selects eps_star

  InitialKind initial_kind = InitialKind::gaussian;
  SpatialShape initial_shape;
  std::string initial_file;

  bool diag_ledger = true;
  bool diag_extinction = true;
  bool diag_exp_decay = false;
  double safety_factor = 1.1;
  double c_gn = -1.0;  // negative means estimate on the run grid
  int gn_family = 64;

  std::string out_dir = "out";
  std::uint64_t seed = 0;
};

// Parses and type-checks; does not validate admissibility (the commands do,
// so violations come back as reports rather than exceptions).
RunConfig load_run_config(const std::string& path);
RunConfig run_config_from_text(const std::string& text);

ComplexField build_initial_condition(const RunConfig& config);
// Requires derived constants when the forcing kind is scheduled.
ForcingProfile build_forcing(const RunConfig& config,
                             const DerivedConstants* k = nullptr);

}  // namespace glx
