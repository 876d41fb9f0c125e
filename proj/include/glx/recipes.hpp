#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "glx/config.hpp"

namespace glx {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Self-contained experiment recipes: no inputs, no network, deterministic.
// Each check carries its tolerance in code; callers only render the results.

// Scalar ODE family: closed-form schedule solution, the stability estimate
// over seeded random piecewise-constant source pairs, and the comparison
// principle against a simulated mass trajectory.
std::vector<CheckResult> recipe_scalar_ode();

// m = 1 exponential decay of the mass, and no finite-time extinction.
std::vector<CheckResult> recipe_exponential_decay();

// Unforced finite-time extinction with saturated damping (m = 0): finite
// observed extinction time with exact zero mass, envelope domination, and
// the extinction-time bound with a 1.1 safety factor.
std::vector<CheckResult> recipe_finite_time_extinction(double theta);

// Scheduled extinction: power-law source schedule with the admissible
// amplitude and scaled initial data force the mass to vanish at t0.
std::vector<CheckResult> recipe_scheduled_extinction();

// Integrable-in-time source with m = 1: the mass decays below any threshold.
std::vector<CheckResult> recipe_vanishing_source();

// Recipe registry used by the verify subcommand.
std::vector<std::string> recipe_names();
std::vector<CheckResult> run_recipe(const std::string& name);

// Command entry points behind the CLI. Exit codes: 0 success, 1 verification
// failure, 2 config or validation failure, 3 runtime failure.
int cmd_simulate(const std::string& config_path, const std::string& out_override,
                 bool has_seed_override, std::uint64_t seed_override);
int cmd_sweep(const std::string& config_path, const std::string& axis,
              const std::vector<double>& values, const std::string& out_override,
              int workers);
int cmd_verify(const std::string& recipe);
int cmd_estimate_gn(double m, int dim, double half_width, int points, int family,
                    std::uint64_t seed, const std::string& out_path);
struct SolveOdeOptions {
  double alpha = 1.0;
  double delta = 0.6;
  double z0 = 1.0;
  double t0 = 0.0;
  double t_end = 2.0;
  double dt_out = 1e-3;
  // Source: coef * (cutoff - t)_+^exponent; coef = 0 means zero source.
  double g_coef = 0.0;
  double g_cutoff = 1.0;
  double g_exponent = 1.0;
  // Optional second solve for the stability two-sided output.
  bool pair = false;
  double z0_b = 0.0;
  double g_coef_b = 0.0;
  std::string out_dir = "out";
};
int cmd_solve_ode(const SolveOdeOptions& options);
int cmd_check_admissible(const std::string& config_path);

}  // namespace glx
