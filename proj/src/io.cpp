#include "glx/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "glx/error.hpp"

namespace glx {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json params_to_json(const PhysicalParams& params) {
  return Json{{"theta", params.theta},
              {"m", params.m},
              {"p", params.p},
              {"a", {params.a.real(), params.a.imag()}},
              {"b", {params.b.real(), params.b.imag()}},
              {"gamma", {params.gamma.real(), params.gamma.imag()}},
              {"dim", params.dim}};
}

Json run_record_to_json(const RunRecord& run) {
  Json j;
  j["grid"] = {{"dim", run.grid.dim},
               {"half_width", run.grid.half_width},
               {"points_per_axis", run.grid.points_per_axis}};
  j["params"] = params_to_json(run.params);
  j["scheme"] = {{"dt", run.scheme.dt},
                 {"t_end", run.scheme.t_end},
                 {"snapshot_stride", run.scheme.snapshot_stride},
                 {"extinction_tolerance", run.scheme.extinction_tolerance},
                 {"splitting",
                  run.scheme.splitting == Splitting::strang ? "strang" : "lie"},
                 {"store_fields", run.scheme.store_fields}};
  j["forcing_kind"] = to_string(run.forcing_kind);
  j["times"] = run.times;
  j["mass"] = run.mass;
  j["grad_sq"] = run.grad_sq;
  j["lm1"] = run.lm1;
  j["lp1"] = run.lp1;
  if (run.extinction_time)
    j["extinction_time"] = *run.extinction_time;
  else
    j["extinction_time"] = nullptr;
  j["aborted"] = run.aborted;
  if (run.aborted) j["error"] = run.error;
  return j;
}

Json derived_constants_to_json(const DerivedConstants& k) {
  Json j{{"delta", k.delta},
         {"lambda", k.lambda},
         {"alpha_envelope", k.alpha_envelope},
         {"alpha_schedule", k.alpha_schedule},
         {"big_m", k.big_m},
         {"eps_star", k.eps_star},
         {"c_gn", k.c_gn},
         {"t0", k.t0}};
  if (k.extinction_bound) j["extinction_bound"] = *k.extinction_bound;
  return j;
}

Json extinction_report_to_json(const ExtinctionReport& report) {
  Json j;
  if (report.t_star_observed)
    j["t_star_observed"] = *report.t_star_observed;
  else
    j["t_star_observed"] = nullptr;
  j["t_star_bound"] = report.t_star_bound;
  j["envelope_max_violation"] = report.envelope_max_violation;
  j["bound_satisfied"] = report.bound_satisfied;
  j["m_used"] = report.m_used;
  j["safety_factor"] = report.safety_factor;
  j["mass_at_t0"] = report.mass_at_t0;
  return j;
}

Json gn_estimate_to_json(const GnEstimate& estimate) {
  return Json{{"m", estimate.m},
              {"dim", estimate.dim},
              {"c_gn", estimate.c_gn},
              {"family_size", estimate.family_size},
              {"worst_field", estimate.worst_field_descriptor}};
}

namespace {
const char* kNan = "nan";
}

std::string trajectory_csv(const RunRecord& run, const DerivedConstants* k,
                           const std::vector<EnergyLedgerRow>* ledger) {
  std::string out = "t,mass,grad_norm,lm1_norm,lp1_norm,envelope,residual\n";
  double mass_t0 = run.mass.empty() ? 0.0 : run.mass.front();
  if (k != nullptr) {
    for (std::size_t i = 0; i < run.times.size(); ++i)
      if (run.times[i] >= k->t0) { mass_t0 = run.mass[i]; break; }
  }
  for (std::size_t i = 0; i < run.times.size(); ++i) {
    out += format_double(run.times[i]);
    out += ',';
    out += format_double(run.mass[i]);
    out += ',';
    out += format_double(std::sqrt(run.grad_sq[i]));
    out += ',';
    out += format_double(run.lm1[i]);
    out += ',';
    out += format_double(run.lp1[i]);
    out += ',';
    if (k != nullptr && run.times[i] >= k->t0)
      out += format_double(envelope(run.times[i], mass_t0, *k));
    else
      out += kNan;
    out += ',';
    if (ledger != nullptr && i >= 1 && i <= ledger->size())
      out += format_double((*ledger)[i - 1].residual);
    else
      out += kNan;
    out += '\n';
  }
  return out;
}

std::string ledger_csv(const std::vector<EnergyLedgerRow>& rows) {
  std::string out = "t,mass_sq,grad,lm1,lp1,gamma,forcing,residual\n";
  for (const EnergyLedgerRow& r : rows) {
    out += format_double(r.t);
    out += ',';
    out += format_double(r.mass_sq);
    out += ',';
    out += format_double(r.grad_term);
    out += ',';
    out += format_double(r.lm1_term);
    out += ',';
    out += format_double(r.lp1_term);
    out += ',';
    out += format_double(r.gamma_term);
    out += ',';
    out += format_double(r.forcing_term);
    out += ',';
    out += format_double(r.residual);
    out += '\n';
  }
  return out;
}

std::string scalar_trajectory_csv(const ScalarTrajectory& z) {
  std::string out = "t,z\n";
  for (std::size_t i = 0; i < z.times.size(); ++i) {
    out += format_double(z.times[i]);
    out += ',';
    out += format_double(z.values[i]);
    out += '\n';
  }
  return out;
}

std::string stability_csv(const ScalarTrajectory& z1, const ScalarTrajectory& z2,
                          const TimeFunction& g1, const TimeFunction& g2) {
  if (z1.times != z2.times)
    throw Error("stability_csv: trajectories must share sample times");
  std::string out = "t,z1,z2,lhs,rhs\n";
  const double s = z1.times.front();
  for (std::size_t i = 0; i < z1.times.size(); ++i) {
    const auto [lhs, rhs] = stability_gap(z1, z2, g1, g2, s, z1.times[i]);
    out += format_double(z1.times[i]);
    out += ',';
    out += format_double(z1.values[i]);
    out += ',';
    out += format_double(z2.values[i]);
    out += ',';
    out += format_double(lhs);
    out += ',';
    out += format_double(rhs);
    out += '\n';
  }
  return out;
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("write_text: cannot open " + path);
  out << content;
  if (!out) throw Error("write_text: write failed for " + path);
}

}  // namespace glx
