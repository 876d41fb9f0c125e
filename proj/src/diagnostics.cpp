#include "glx/diagnostics.hpp"

#include <cmath>

#include "glx/error.hpp"

namespace glx {

std::vector<EnergyLedgerRow> energy_ledger(const RunRecord& run,
                                           const PhysicalParams& params,
                                           const ForcingProfile& forcing) {
  const std::size_t n = run.times.size();
  if (n < 3) throw Error("energy_ledger: need at least 3 snapshots");

  const bool needs_fields = forcing.kind != ForcingKind::zero;
  if (needs_fields && run.fields.size() != n)
    throw Error("energy_ledger: nonzero forcing needs stored field snapshots");

  const double cos_theta = std::cos(params.theta);
  const double rate_a = params.a_rot().real();
  const double rate_b = params.b_rot().real();
  const double rate_gamma = params.gamma_rot().real();
  const Complex rotation = std::polar(1.0, params.theta);

  std::vector<EnergyLedgerRow> rows;
  rows.reserve(n - 2);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    EnergyLedgerRow row;
    row.t = run.times[i];
    row.mass_sq = run.mass[i] * run.mass[i];
    row.grad_term = run.grad_sq[i];
    row.lm1_term = std::pow(run.lm1[i], params.m + 1.0);
    row.lp1_term = std::pow(run.lp1[i], params.p + 1.0);
    row.gamma_term = rate_gamma * row.mass_sq;

    if (needs_fields) {
      const ComplexField f =
          eval_forcing(forcing, run.grid, run.times[i], &run.fields[i]);
      Complex pairing(0.0, 0.0);
      for (std::size_t j = 0; j < f.values.size(); ++j)
        pairing += f.values[j] * std::conj(run.fields[i].values[j]);
      row.forcing_term =
          (rotation * pairing * run.grid.cell_measure()).real();
    }

    // Three-point derivative of mass^2, valid on nonuniform snapshots.
    const double h1 = run.times[i] - run.times[i - 1];
    const double h2 = run.times[i + 1] - run.times[i];
    const double ym = run.mass[i - 1] * run.mass[i - 1];
    const double yp = run.mass[i + 1] * run.mass[i + 1];
    const double dydt = (h1 * h1 * yp - h2 * h2 * ym +
                         (h2 * h2 - h1 * h1) * row.mass_sq) /
                        (h1 * h2 * (h1 + h2));

    row.residual = 0.5 * dydt + cos_theta * row.grad_term +
                   rate_a * row.lm1_term + rate_b * row.lp1_term +
                   row.gamma_term - row.forcing_term;
    rows.push_back(row);
  }
  return rows;
}

ExtinctionReport extinction_report(const RunRecord& run,
                                   const DerivedConstants& k,
                                   double safety_factor) {
  if (run.times.empty()) throw Error("extinction_report: empty run");

  ExtinctionReport report;
  report.t_star_observed = run.extinction_time;
  report.m_used = k.big_m;
  report.safety_factor = safety_factor;

  // Measured mass at the reference time t0 (snapshot or interpolated).
  double mass_t0 = run.mass.front();
  if (k.t0 > run.times.front()) {
    mass_t0 = run.mass.back();
    for (std::size_t i = 0; i + 1 < run.times.size(); ++i) {
      if (run.times[i + 1] >= k.t0) {
        const double w =
            (k.t0 - run.times[i]) / (run.times[i + 1] - run.times[i]);
        mass_t0 = (1.0 - w) * run.mass[i] + w * run.mass[i + 1];
        break;
      }
    }
  }
  report.mass_at_t0 = mass_t0;
  report.t_star_bound = extinction_bound_time(mass_t0, k);

  double worst = 0.0;
  for (std::size_t i = 0; i < run.times.size(); ++i) {
    if (run.times[i] < k.t0) continue;
    const double env = envelope(run.times[i], mass_t0, k);
    worst = std::max(worst, run.mass[i] - env);
  }
  report.envelope_max_violation = worst;
  report.bound_satisfied =
      run.extinction_time.has_value() &&
      *run.extinction_time <= safety_factor * report.t_star_bound;
  return report;
}

std::pair<double, bool> exp_decay_check(const RunRecord& run,
                                        const PhysicalParams& params,
                                        double t0, double tol) {
  if (params.m != 1.0) throw Error("exp_decay_check: requires m = 1");
  const double rate = params.a_rot().real();

  double mass_t0 = -1.0;
  for (std::size_t i = 0; i < run.times.size(); ++i) {
    if (run.times[i] >= t0) { mass_t0 = run.mass[i]; break; }
  }
  if (mass_t0 < 0.0) throw Error("exp_decay_check: no snapshots at or after t0");

  double worst = 0.0;
  bool past_t0 = false;
  double anchor = t0;
  for (std::size_t i = 0; i < run.times.size(); ++i) {
    if (run.times[i] < t0) continue;
    if (!past_t0) { anchor = run.times[i]; past_t0 = true; }
    const double bound = mass_t0 * std::exp(-rate * (run.times[i] - anchor));
    worst = std::max(worst, run.mass[i] - bound);
  }
  return {worst, worst <= tol};
}

std::pair<double, bool> dependence_check(const RunRecord& run_a,
                                         const RunRecord& run_b,
                                         const ForcingProfile& forcing_a,
                                         const ForcingProfile& forcing_b,
                                         double tol) {
  if (run_a.grid != run_b.grid)
    throw Error("dependence_check: grid mismatch");
  if (run_a.times != run_b.times)
    throw Error("dependence_check: snapshot times differ");
  if (run_a.scheme.dt != run_b.scheme.dt)
    throw Error("dependence_check: schemes differ");
  const std::size_t n = run_a.times.size();
  if (run_a.fields.size() != n || run_b.fields.size() != n)
    throw Error("dependence_check: needs stored field snapshots on both runs");
  if (forcing_a.kind == ForcingKind::bangbang ||
      forcing_b.kind == ForcingKind::bangbang)
    throw Error("dependence_check: feedback forcing is not an external source");

  auto diff_mass = [&](std::size_t i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < run_a.fields[i].values.size(); ++j)
      sum += std::norm(run_a.fields[i].values[j] - run_b.fields[i].values[j]);
    return std::sqrt(run_a.grid.cell_measure() * sum);
  };

  // The scheme samples sources at step midpoints; integrate the source gap
  // the same way, accumulated per snapshot interval.
  const double dt = run_a.scheme.dt;
  std::vector<double> gap_integral(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    double acc = 0.0;
    const long long steps = static_cast<long long>(
        std::llround((run_a.times[i + 1] - run_a.times[i]) / dt));
    for (long long s = 0; s < std::max(steps, 1ll); ++s) {
      const double t_mid = run_a.times[i] + (s + 0.5) * dt;
      const ComplexField fa = eval_forcing(forcing_a, run_a.grid, t_mid);
      const ComplexField fb = eval_forcing(forcing_b, run_b.grid, t_mid);
      double sum = 0.0;
      for (std::size_t j = 0; j < fa.values.size(); ++j)
        sum += std::norm(fa.values[j] - fb.values[j]);
      acc += dt * std::sqrt(run_a.grid.cell_measure() * sum);
    }
    gap_integral[i + 1] = gap_integral[i] + acc;
  }

  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = diff_mass(i);

  double worst = 0.0;
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = s; t < n; ++t) {
      const double excess = d[t] - d[s] - (gap_integral[t] - gap_integral[s]);
      worst = std::max(worst, excess);
    }
  return {worst, worst <= tol};
}

}  // namespace glx
