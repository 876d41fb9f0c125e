#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "glx/dynamics.hpp"
#include "glx/forcing.hpp"
#include "glx/params.hpp"

namespace glx {

// One row of the discrete mass ledger
//   (mass^2)'/2 + cos(theta) ||grad u||^2 + Re(a e^{i theta}) ||u||_{m+1}^{m+1}
//   + Re(b e^{i theta}) ||u||_{p+1}^{p+1} + Re(gamma e^{i theta}) mass^2
//   = Re(e^{i theta} int f conj(u)),
// with the time derivative by centered differences on the snapshot grid.
// The residual collects everything on one side; it measures splitting and
// sampling error, not a bug, and should shrink under refinement.
struct EnergyLedgerRow {
  double t = 0.0;
  double mass_sq = 0.0;
  double grad_term = 0.0;
  double lm1_term = 0.0;   // ||u||_{m+1}^{m+1}
  double lp1_term = 0.0;   // ||u||_{p+1}^{p+1}
  double gamma_term = 0.0; // Re(gamma e^{i theta}) mass^2
  double forcing_term = 0.0;
  double residual = 0.0;
};

// One row per interior snapshot; needs at least 3 snapshots. Nonzero
// forcing kinds need stored field snapshots for the source pairing term.
std::vector<EnergyLedgerRow> energy_ledger(const RunRecord& run,
                                           const PhysicalParams& params,
                                           const ForcingProfile& forcing);

struct ExtinctionReport {
  std::optional<double> t_star_observed;
  double t_star_bound = 0.0;       // envelope-root bound from the constants
  double envelope_max_violation = 0.0;  // max over snapshots of (mass - envelope)_+
  bool bound_satisfied = false;    // observed <= safety_factor * bound
  double m_used = 0.0;             // the effective rate entering the bound
  double safety_factor = 1.0;
  double mass_at_t0 = 0.0;
};

ExtinctionReport extinction_report(const RunRecord& run,
                                   const DerivedConstants& k,
                                   double safety_factor = 1.1);

// Exponential decay for m = 1: max over snapshots t >= t0 of
// mass(t) - mass(t0) exp(-Re(a e^{i theta}) (t - t0)), and whether it stays
// within tol. Rejects m != 1.
std::pair<double, bool> exp_decay_check(const RunRecord& run,
                                        const PhysicalParams& params,
                                        double t0, double tol = 1e-8);

// Continuous dependence: for all snapshot pairs s <= t,
//   ||uA(t)-uB(t)|| <= ||uA(s)-uB(s)|| + int_s^t ||fA-fB|| + tol.
// Needs both runs on identical grids/schemes with stored fields; the source
// integral uses the scheme's own midpoint samples. Returns the worst excess.
std::pair<double, bool> dependence_check(const RunRecord& run_a,
                                         const RunRecord& run_b,
                                         const ForcingProfile& forcing_a,
                                         const ForcingProfile& forcing_b,
                                         double tol);

}  // namespace glx
