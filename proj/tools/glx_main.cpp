// Batch front door: single runs, parameter sweeps, named verification
// recipes and the standalone estimators. Everything is driven by a flat
// key = value config file; see the README for the grammar.

#include <cstdint>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "glx/recipes.hpp"

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for damped complex Ginzburg-Landau dynamics"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int workers = 0;

  auto add_common = [&](CLI::App* cmd, bool needs_config) {
    auto* opt = cmd->add_option("--config", config_path, "run configuration file");
    if (needs_config) opt->required();
    cmd->add_option("--out", out_dir, "output directory (overrides the config)");
    cmd->add_option("--seed", seed, "seed override")
        ->each([&](const std::string&) { seed_set = true; });
    cmd->add_option("--workers", workers,
                    "worker threads (default: GLX_WORKERS or hardware)");
  };

  CLI::App* simulate = app.add_subcommand("simulate", "run one experiment");
  add_common(simulate, true);

  CLI::App* sweep = app.add_subcommand("sweep", "independent runs along one axis");
  add_common(sweep, true);
  std::string axis;
  std::vector<double> values;
  sweep->add_option("--axis", axis, "theta, m, a_modulus, mu, dt, h or L")->required();
  sweep->add_option("--values", values, "sweep values")->required()->delimiter(',');

  CLI::App* verify = app.add_subcommand("verify", "run a named recipe");
  std::string recipe = "all";
  verify->add_option("recipe", recipe,
                     "lemma3_2, prop2_7, thm2_9_1, thm2_9_2, thm2_6 or all");

  CLI::App* estimate = app.add_subcommand("estimate-gn", "interpolation constant");
  double gn_m = 0.0, gn_half_width = 10.0;
  int gn_dim = 1, gn_points = 255, gn_family = 64;
  std::uint64_t gn_seed = 42;
  std::string gn_out;
  estimate->add_option("--m", gn_m, "damping exponent in [0,1)");
  estimate->add_option("--dim", gn_dim, "1, 2 or 3");
  estimate->add_option("--half-width", gn_half_width, "box half width L");
  estimate->add_option("--points", gn_points, "interior points per axis");
  estimate->add_option("--family", gn_family, "probe family size");
  estimate->add_option("--seed", gn_seed, "probe seed");
  estimate->add_option("--out", gn_out, "JSON output path (default stdout)");

  CLI::App* solve = app.add_subcommand("solve-ode", "scalar comparison ODE");
  glx::SolveOdeOptions ode;
  solve->add_option("--alpha", ode.alpha);
  solve->add_option("--delta", ode.delta);
  solve->add_option("--z0", ode.z0);
  solve->add_option("--t0", ode.t0);
  solve->add_option("--t-end", ode.t_end);
  solve->add_option("--dt-out", ode.dt_out);
  solve->add_option("--g-coef", ode.g_coef, "source coef * (cutoff - t)_+^expo");
  solve->add_option("--g-cutoff", ode.g_cutoff);
  solve->add_option("--g-exponent", ode.g_exponent);
  solve->add_option("--z0-b", ode.z0_b, "second solve for the stability output")
      ->each([&](const std::string&) { ode.pair = true; });
  solve->add_option("--g-coef-b", ode.g_coef_b)
      ->each([&](const std::string&) { ode.pair = true; });
  solve->add_option("--out", ode.out_dir);

  CLI::App* check = app.add_subcommand("check-admissible", "validate a config");
  check->add_option("--config", config_path, "run configuration file")->required();

  CLI11_PARSE(app, argc, argv);

  if (simulate->parsed())
    return glx::cmd_simulate(config_path, out_dir, seed_set, seed);
  if (sweep->parsed())
    return glx::cmd_sweep(config_path, axis, values, out_dir, workers);
  if (verify->parsed()) return glx::cmd_verify(recipe);
  if (estimate->parsed())
    return glx::cmd_estimate_gn(gn_m, gn_dim, gn_half_width, gn_points,
                                gn_family, gn_seed, gn_out);
  if (solve->parsed()) return glx::cmd_solve_ode(ode);
  if (check->parsed()) return glx::cmd_check_admissible(config_path);
  return 2;
}
