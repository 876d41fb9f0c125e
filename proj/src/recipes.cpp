#include "glx/recipes.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <random>
#include <thread>

#include "glx/comparison_ode.hpp"
#include "glx/diagnostics.hpp"
#include "glx/dynamics.hpp"
#include "glx/error.hpp"
#include "glx/gn.hpp"
#include "glx/io.hpp"

namespace glx {

namespace {

namespace fs = std::filesystem;

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[192];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

}  // namespace

std::vector<CheckResult> recipe_scalar_ode() {
  std::vector<CheckResult> out;
  const auto start = std::chrono::steady_clock::now();

  // Closed-form schedule solution: with source z_star (t0 - t)_+^{d/(1-d)}
  // and initial value zeta_star, the solution is
  // zeta_star t0^{-1/(1-d)} (t0 - t)_+^{1/(1-d)}.
  {
    const double alpha = 1.0, delta = 0.6, t0 = 1.0;
    const double q = 1.0 - delta;
    const double z_star = std::pow(alpha * std::pow(delta, delta) * q, 1.0 / q);
    const double zeta_star = std::pow(alpha * delta * q * t0, 1.0 / q);
    const TimeFunction g = TimeFunction::power_schedule(z_star, t0, delta / q);
    const ScalarTrajectory z =
        solve_comparison(alpha, delta, g, zeta_star, 0.0, 2.0, 1e-3);
    double max_err = 0.0;
    for (std::size_t i = 0; i < z.times.size(); ++i) {
      const double rem = t0 - z.times[i];
      const double exact =
          rem > 0.0 ? zeta_star * std::pow(t0, -1.0 / q) * std::pow(rem, 1.0 / q)
                    : 0.0;
      max_err = std::max(max_err, std::abs(z.values[i] - exact));
    }
    const double elapsed = seconds_since(start);
    out.push_back({"scalar-ode-closed-form",
                   max_err <= 1e-8 && elapsed < 1.0,
                   fmt("max abs err %.3e (tol 1e-8), %.2f s (budget 1 s)",
                       max_err, elapsed)});
  }

  // Stability estimate over seeded random piecewise-constant source pairs.
  {
    const auto t_start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20240901u);
    std::uniform_real_distribution<double> uval(0.0, 2.0);
    std::uniform_real_distribution<double> utime(0.0, 3.0);
    std::uniform_int_distribution<int> nbreaks(3, 8);
    const double alpha = 1.0, delta = 0.6;
    double worst = -1e300;
    for (int trial = 0; trial < 1000; ++trial) {
      auto draw_g = [&]() {
        const int nb = nbreaks(rng);
        std::vector<double> breaks{0.0};
        for (int i = 1; i < nb; ++i) breaks.push_back(utime(rng));
        std::sort(breaks.begin(), breaks.end());
        std::vector<double> values;
        for (int i = 0; i < nb; ++i) values.push_back(uval(rng));
        return TimeFunction::piecewise_constant(breaks, values);
      };
      const TimeFunction g1 = draw_g(), g2 = draw_g();
      const double z01 = uval(rng), z02 = uval(rng);
      const ScalarTrajectory z1 = solve_comparison(alpha, delta, g1, z01, 0.0, 3.0, 0.05);
      const ScalarTrajectory z2 = solve_comparison(alpha, delta, g2, z02, 0.0, 3.0, 0.05);
      std::uniform_int_distribution<std::size_t> pick(0, z1.times.size() - 1);
      for (int probe = 0; probe < 10; ++probe) {
        std::size_t i = pick(rng), j = pick(rng);
        if (i > j) std::swap(i, j);
        const auto [lhs, rhs] =
            stability_gap(z1, z2, g1, g2, z1.times[i], z1.times[j]);
        worst = std::max(worst, lhs - rhs);
      }
    }
    const double elapsed = seconds_since(t_start);
    out.push_back({"scalar-ode-stability",
                   worst <= 1e-8 && elapsed < 10.0,
                   fmt("max excess %.3e over 1000 pairs (tol 1e-8), %.2f s "
                       "(budget 10 s)",
                       worst, elapsed)});
  }

  // Comparison principle: the squared mass of an unforced saturated-damping
  // run is a subsolution of the scalar ODE with the grid interpolation rate.
  {
    PhysicalParams params;
    params.theta = 0.0;
    params.m = 0.0;
    params.a = 1.0;
    params.dim = 1;
    const Grid grid(1, 10.0, 127);
    const GnEstimate gn = estimate_cgn(0.0, grid, 64, 42);
    const DerivedConstants k = derived_constants(params, gn.c_gn, 0.0, 0.0);
    SpatialShape bump;
    bump.width = {1.0, 1.0, 1.0};
    SchemeConfig scheme;
    scheme.dt = 1e-3;
    scheme.t_end = 2.0;
    scheme.snapshot_stride = 20;
    const RunRecord run =
        simulate(bump.materialize(grid), params, zero_forcing(), scheme);

    ScalarTrajectory y;
    y.times = run.times;
    for (double mass : run.mass) y.values.push_back(mass * mass);
    const bool ok = comparison_check(y, 2.0 * k.alpha_envelope, k.delta,
                                     TimeFunction::zero(), 0.0, 1e-6);
    out.push_back({"scalar-ode-comparison", ok,
                   "simulated squared mass stays below the matched solution"});
  }
  return out;
}

std::vector<CheckResult> recipe_exponential_decay() {
  std::vector<CheckResult> out;
  PhysicalParams params;
  params.theta = 0.3;
  params.m = 1.0;
  params.a = 1.0;
  params.dim = 1;
  const Grid grid(1, 10.0, 127);
  SpatialShape init;
  init.width = {1.5, 1.5, 1.5};
  SchemeConfig scheme;
  scheme.dt = 2e-3;
  scheme.t_end = 20.0;
  scheme.snapshot_stride = 50;
  const RunRecord run = simulate(init.materialize(grid), params, zero_forcing(), scheme);

  const auto [excess, holds] = exp_decay_check(run, params, 0.0, 1e-8);
  out.push_back({"exp-decay-envelope", holds,
                 fmt("max excess over e^{-rate t} bound: %.3e (tol 1e-8)", excess)});
  const bool never_zero = !run.extinction_time.has_value() && run.mass.back() > 0.0;
  out.push_back({"exp-decay-no-extinction", never_zero,
                 fmt("mass at t_end: %.3e (must stay positive)", run.mass.back())});
  return out;
}

std::vector<CheckResult> recipe_finite_time_extinction(double theta) {
  std::vector<CheckResult> out;
  PhysicalParams params;
  params.theta = theta;
  params.m = 0.0;
  params.a = std::polar(1.0, -theta);  // a e^{i theta} = 1
  params.dim = 1;
  const Grid grid(1, 10.0, 255);

  const GnEstimate gn = estimate_cgn(0.0, grid, 64, 42);
  const DerivedConstants k = derived_constants(params, gn.c_gn, 0.0, 0.0);

  SpatialShape init;
  init.width = {1.0, 1.0, 1.0};
  const ComplexField u0 = init.materialize(grid);
  const double mass0 = mass_l2(u0);

  SchemeConfig scheme;
  scheme.dt = 1e-3;
  scheme.t_end = 4.0;
  scheme.snapshot_stride = 10;
  const RunRecord run = simulate(u0, params, zero_forcing(), scheme);
  const ExtinctionReport report = extinction_report(run, k, 1.1);

  char label[64];
  std::snprintf(label, sizeof label, "theta=%+.2f", theta);

  out.push_back({std::string("extinction-observed ") + label,
                 report.t_star_observed.has_value(),
                 report.t_star_observed
                     ? fmt("exact zero mass at t=%.6f", *report.t_star_observed)
                     : "mass never reached zero"});
  out.push_back({std::string("extinction-envelope ") + label,
                 report.envelope_max_violation <= 1e-3 * mass0,
                 fmt("max envelope violation %.3e (tol %.3e)",
                     report.envelope_max_violation, 1e-3 * mass0)});
  out.push_back(
      {std::string("extinction-bound ") + label, report.bound_satisfied,
       report.t_star_observed
           ? fmt("observed %.4f <= 1.1 x bound %.4f", *report.t_star_observed,
                 report.t_star_bound)
           : "no observed extinction"});
  return out;
}

std::vector<CheckResult> recipe_scheduled_extinction() {
  std::vector<CheckResult> out;
  const auto start = std::chrono::steady_clock::now();

  PhysicalParams params;
  params.theta = 0.0;
  params.m = 0.0;
  params.a = 1.0;
  params.dim = 1;
  const Grid grid(1, 10.0, 255);
  const double t0 = 2.0;

  const GnEstimate gn = estimate_cgn(0.0, grid, 64, 42);
  const DerivedConstants k = derived_constants(params, gn.c_gn, 0.0, t0);

  SpatialShape shape;
  shape.width = {1.0, 1.0, 1.0};
  const ForcingProfile forcing = scheduled_profile(params, k, shape);

  // Initial data scaled onto the admissibility boundary.
  SpatialShape init;
  init.width = {1.0, 1.0, 1.0};
  ComplexField u0 = init.materialize(grid);
  const double target_mass = forcing.max_initial_mass;
  const double scale = target_mass / mass_l2(u0);
  for (Complex& v : u0.values) v *= scale;

  SchemeConfig scheme;
  scheme.dt = 1e-3;
  scheme.t_end = t0;
  scheme.snapshot_stride = 10;
  const RunRecord run = simulate(u0, params, forcing, scheme);

  const double mass_at_t0 = run.mass.back();
  const double tol = 1e-6 * target_mass;
  const double elapsed = seconds_since(start);
  out.push_back({"scheduled-extinction-mass-at-t0",
                 mass_at_t0 <= tol && elapsed < 60.0,
                 fmt("mass %.3e at the target time (tol %.3e), %.1f s (budget 60 s)",
                     mass_at_t0, tol, elapsed)});
  out.push_back({"scheduled-extinction-schedule-valid",
                 check_profile(forcing, params, grid, &k).ok(),
                 "source obeys the power-law budget and the amplitude cap"});
  return out;
}

std::vector<CheckResult> recipe_vanishing_source() {
  std::vector<CheckResult> out;
  PhysicalParams params;
  params.theta = 0.2;
  params.m = 1.0;
  params.a = 1.0;
  params.dim = 1;
  const Grid grid(1, 10.0, 127);

  SpatialShape pulse;
  pulse.width = {2.0, 2.0, 2.0};
  pulse.amplitude = 0.5;
  const ForcingProfile forcing = cutoff_forcing(pulse, 10.0);

  SpatialShape init;
  init.width = {1.0, 1.0, 1.0};
  const ComplexField u0 = init.materialize(grid);
  const double mass0 = mass_l2(u0);

  SchemeConfig scheme;
  scheme.dt = 2e-3;
  scheme.t_end = 50.0;
  scheme.snapshot_stride = 100;
  const RunRecord run = simulate(u0, params, forcing, scheme);

  const double final_mass = run.mass.back();
  out.push_back({"vanishing-source-decay", final_mass <= 1e-6 * mass0,
                 fmt("mass %.3e at t=50 vs threshold %.3e", final_mass,
                     1e-6 * mass0)});
  return out;
}

std::vector<std::string> recipe_names() {
  return {"lemma3_2", "prop2_7", "thm2_9_1", "thm2_9_2", "thm2_6"};
}

std::vector<CheckResult> run_recipe(const std::string& name) {
  if (name == "lemma3_2") return recipe_scalar_ode();
  if (name == "prop2_7") return recipe_exponential_decay();
  if (name == "thm2_9_1") return recipe_finite_time_extinction(0.0);
  if (name == "thm2_9_2") return recipe_scheduled_extinction();
  if (name == "thm2_6") return recipe_vanishing_source();
  if (name == "all") {
    std::vector<CheckResult> all;
    for (const std::string& n : recipe_names()) {
      std::vector<CheckResult> part = run_recipe(n);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  throw Error("unknown recipe '" + name + "'");
}

namespace {

// Shared single-run pipeline: validate, derive constants, simulate, run the
// enabled diagnostics, emit artifacts. Returns the summary line a sweep needs.
struct PipelineOutcome {
  bool ok = false;
  int exit_code = 0;
  std::string message;
  std::optional<double> t_star_observed;
  double t_star_bound = std::nan("");
  double envelope_violation = std::nan("");
};

PipelineOutcome run_pipeline(RunConfig config, const std::string& out_dir) {
  PipelineOutcome outcome;

  const ValidationReport admissible = validate(config.params);
  if (!admissible.ok()) {
    outcome.exit_code = 2;
    outcome.message = "inadmissible parameters: " + admissible.str();
    return outcome;
  }

  try {
    fs::create_directories(out_dir);

    // Interpolation constant and derived constants (m < 1 only).
    std::optional<DerivedConstants> k;
    std::optional<GnEstimate> gn;
    if (config.params.m < 1.0) {
      double c_gn = config.c_gn;
      if (c_gn <= 0.0) {
        gn = estimate_cgn(config.params.m, config.grid, config.gn_family,
                          config.seed + 1);
        c_gn = gn->c_gn;
      }
      k = derived_constants(config.params, c_gn, 0.0, config.forcing_t0);
    }

    const ForcingProfile forcing =
        build_forcing(config, k ? &*k : nullptr);
    const ValidationReport profile_ok =
        check_profile(forcing, config.params, config.grid, k ? &*k : nullptr);
    if (!profile_ok.ok()) {
      outcome.exit_code = 2;
      outcome.message = "invalid forcing profile: " + profile_ok.str();
      return outcome;
    }

    // The ledger's source pairing needs the fields.
    if (config.diag_ledger && forcing.kind != ForcingKind::zero)
      config.scheme.store_fields = true;

    const ComplexField u0 = build_initial_condition(config);
    const RunRecord run = simulate(u0, config.params, forcing, config.scheme);
    if (run.aborted) {
      outcome.exit_code = 3;
      outcome.message = "run aborted: " + run.error;
      write_text(out_dir + "/run.json", run_record_to_json(run).dump(2) + "\n");
      return outcome;
    }

    Json report;
    report["params"] = params_to_json(config.params);
    report["forcing_kind"] = to_string(forcing.kind);
    if (gn) report["gn_estimate"] = gn_estimate_to_json(*gn);

    std::vector<EnergyLedgerRow> ledger;
    if (config.diag_ledger && run.times.size() >= 3) {
      ledger = energy_ledger(run, config.params, forcing);
      double max_residual = 0.0;
      for (const EnergyLedgerRow& row : ledger)
        max_residual = std::max(max_residual, std::abs(row.residual));
      report["ledger"] = {{"rows", ledger.size()},
                          {"max_abs_residual", max_residual}};
      write_text(out_dir + "/ledger.csv", ledger_csv(ledger));
    }

    if (config.diag_extinction && k) {
      DerivedConstants kb = *k;
      const ExtinctionReport ext =
          extinction_report(run, kb, config.safety_factor);
      kb.extinction_bound = ext.t_star_bound;
      report["derived_constants"] = derived_constants_to_json(kb);
      report["extinction"] = extinction_report_to_json(ext);
      outcome.t_star_observed = ext.t_star_observed;
      outcome.t_star_bound = ext.t_star_bound;
      outcome.envelope_violation = ext.envelope_max_violation;
    }

    if (config.diag_exp_decay && config.params.m == 1.0) {
      const auto [excess, holds] =
          exp_decay_check(run, config.params, config.forcing_t0);
      report["exp_decay"] = {{"max_excess", excess}, {"holds", holds}};
    }

    write_text(out_dir + "/run.json", run_record_to_json(run).dump(2) + "\n");
    write_text(out_dir + "/trajectory.csv",
               trajectory_csv(run, k ? &*k : nullptr,
                              ledger.empty() ? nullptr : &ledger));
    write_text(out_dir + "/report.json", report.dump(2) + "\n");

    outcome.ok = true;
    outcome.message = "ok";
    return outcome;
  } catch (const Error& e) {
    outcome.exit_code = 3;
    outcome.message = e.what();
    return outcome;
  }
}

}  // namespace

int cmd_simulate(const std::string& config_path, const std::string& out_override,
                 bool has_seed_override, std::uint64_t seed_override) {
  RunConfig config;
  try {
    config = load_run_config(config_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  if (!out_override.empty()) config.out_dir = out_override;
  if (has_seed_override) config.seed = seed_override;

  const PipelineOutcome outcome = run_pipeline(config, config.out_dir);
  if (!outcome.ok) {
    std::cerr << "error: " << outcome.message << "\n";
    return outcome.exit_code;
  }
  std::cout << "wrote " << config.out_dir << "/run.json\n";
  return 0;
}

namespace {

void apply_axis(RunConfig& config, const std::string& axis, double value) {
  if (axis == "theta") {
    config.params.theta = value;
  } else if (axis == "m") {
    config.params.m = value;
  } else if (axis == "a_modulus") {
    const double mod = std::abs(config.params.a);
    if (mod == 0.0) throw Error("sweep: cannot rescale a zero coefficient");
    config.params.a *= value / mod;
  } else if (axis == "mu") {
    config.mu = value;
  } else if (axis == "dt") {
    config.scheme.dt = value;
  } else if (axis == "h") {
    const int points = std::max(
        3, static_cast<int>(std::lround(2.0 * config.grid.half_width / value)) - 1);
    config.grid = Grid(config.grid.dim, config.grid.half_width, points);
  } else if (axis == "L") {
    config.grid = Grid(config.grid.dim, value, config.grid.points_per_axis);
  } else {
    throw Error("sweep: unknown axis '" + axis +
                "' (theta, m, a_modulus, mu, dt, h, L)");
  }
}

}  // namespace

int cmd_sweep(const std::string& config_path, const std::string& axis,
              const std::vector<double>& values, const std::string& out_override,
              int workers) {
  if (values.empty()) {
    std::cerr << "error: sweep needs a nonempty value list\n";
    return 2;
  }
  RunConfig base;
  try {
    base = load_run_config(config_path);
    RunConfig probe = base;
    apply_axis(probe, axis, values.front());  // fail fast on a bad axis
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  const std::string out_root = out_override.empty() ? base.out_dir : out_override;

  if (workers <= 0) {
    const char* env = std::getenv("GLX_WORKERS");
    if (env != nullptr) workers = std::atoi(env);
  }
  if (workers <= 0)
    workers = static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min<int>(workers, static_cast<int>(values.size())));

  struct Row {
    double value;
    PipelineOutcome outcome;
  };
  std::vector<Row> rows(values.size());

  std::vector<std::thread> pool;
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= values.size()) return;
      RunConfig config = base;
      std::string dir;
      try {
        apply_axis(config, axis, values[i]);
        dir = out_root + "/" + axis + "=" + format_double(values[i]);
        rows[i] = {values[i], run_pipeline(config, dir)};
      } catch (const Error& e) {
        PipelineOutcome bad;
        bad.exit_code = 3;
        bad.message = e.what();
        rows[i] = {values[i], bad};
      }
    }
  };
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (std::thread& t : pool) t.join();

  std::sort(rows.begin(), rows.end(),
            [](const Row& a, const Row& b) { return a.value < b.value; });

  std::string csv = "value,status,t_star_observed,t_star_bound,envelope_violation\n";
  bool any_failed = false;
  for (const Row& row : rows) {
    csv += format_double(row.value);
    csv += ',';
    csv += row.outcome.ok ? "ok" : "failed";
    csv += ',';
    csv += row.outcome.t_star_observed ? format_double(*row.outcome.t_star_observed)
                                       : "nan";
    csv += ',';
    csv += format_double(row.outcome.t_star_bound);
    csv += ',';
    csv += format_double(row.outcome.envelope_violation);
    csv += '\n';
    if (!row.outcome.ok) {
      any_failed = true;
      std::cerr << axis << "=" << row.value << ": " << row.outcome.message << "\n";
    }
  }
  try {
    fs::create_directories(out_root);
    write_text(out_root + "/sweep_summary.csv", csv);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  std::cout << "wrote " << out_root << "/sweep_summary.csv"
            << (any_failed ? " (some runs failed)" : "") << "\n";
  return 0;
}

int cmd_verify(const std::string& recipe) {
  std::vector<CheckResult> results;
  try {
    results = run_recipe(recipe);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  bool all_pass = true;
  for (const CheckResult& r : results) {
    std::cout << (r.pass ? "PASS" : "FAIL") << " " << r.name << ": " << r.detail
              << "\n";
    all_pass = all_pass && r.pass;
  }
  return all_pass ? 0 : 1;
}

int cmd_estimate_gn(double m, int dim, double half_width, int points, int family,
                    std::uint64_t seed, const std::string& out_path) {
  try {
    const Grid grid(dim, half_width, points);
    const GnEstimate estimate = estimate_cgn(m, grid, family, seed);
    const std::string text = gn_estimate_to_json(estimate).dump(2) + "\n";
    if (out_path.empty())
      std::cout << text;
    else
      write_text(out_path, text);
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

int cmd_solve_ode(const SolveOdeOptions& options) {
  try {
    fs::create_directories(options.out_dir);
    auto make_g = [&](double coef) {
      return coef == 0.0 ? TimeFunction::zero()
                         : TimeFunction::power_schedule(coef, options.g_cutoff,
                                                        options.g_exponent);
    };
    const TimeFunction g1 = make_g(options.g_coef);
    const ScalarTrajectory z1 =
        solve_comparison(options.alpha, options.delta, g1, options.z0,
                         options.t0, options.t_end, options.dt_out);
    write_text(options.out_dir + "/ode.csv", scalar_trajectory_csv(z1));
    if (options.pair) {
      const TimeFunction g2 = make_g(options.g_coef_b);
      const ScalarTrajectory z2 =
          solve_comparison(options.alpha, options.delta, g2, options.z0_b,
                           options.t0, options.t_end, options.dt_out);
      write_text(options.out_dir + "/stability.csv",
                 stability_csv(z1, z2, g1, g2));
    }
    std::cout << "wrote " << options.out_dir << "/ode.csv\n";
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

int cmd_check_admissible(const std::string& config_path) {
  try {
    const RunConfig config = load_run_config(config_path);
    const ValidationReport report = validate(config.params);
    if (report.ok()) {
      std::cout << "admissible\n";
      return 0;
    }
    std::cout << report.str() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace glx
