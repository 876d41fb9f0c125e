#pragma once

#include <optional>
#include <string>
#include <vector>

#include "glx/field.hpp"
#include "glx/forcing.hpp"
#include "glx/params.hpp"

namespace glx {

enum class Splitting { lie, strang };

struct SchemeConfig {
  double dt = 1e-3;
  double t_end = 1.0;
  int snapshot_stride = 1;          // record norms every this many steps
  double extinction_tolerance = 0.0;  // 0 means exact-zero detection
  Splitting splitting = Splitting::strang;
  bool store_fields = false;        // keep field snapshots (needed by some diagnostics)
};

// Norm trajectories of one run, sampled at snapshot times, plus the first
// time the discrete mass dropped to the extinction tolerance.
struct RunRecord {
  Grid grid;
  PhysicalParams params;
  SchemeConfig scheme;
  ForcingKind forcing_kind = ForcingKind::zero;

  std::vector<double> times;
  std::vector<double> mass;      // ||u||_{L2}
  std::vector<double> grad_sq;   // ||grad u||^2
  std::vector<double> lm1;       // ||u||_{L^{m+1}}
  std::vector<double> lp1;       // ||u||_{L^{p+1}}
  std::optional<double> extinction_time;

  ComplexField final_field;
  std::vector<ComplexField> fields;  // per snapshot, when store_fields

  bool aborted = false;
  std::string error;
};

// Pointwise damping flow over dt:
//   u' = -e^{i theta} (a|u|^{m-1}u + b|u|^{p-1}u + gamma u).
// Closed form (exact amplitude and phase) when b = gamma = 0; otherwise an
// adaptive embedded RK with extinction-aware termination. Zero is absorbing:
// once the amplitude reaches 0 the output is exactly 0.
Complex damping_substep(Complex u_point, double dt, const PhysicalParams& params);

// Crank-Nicolson step of the rotated diffusion u' = e^{i theta} Lap u over dt:
// (I - (dt/2) e^{i theta} Lap_h) u+ = (I + (dt/2) e^{i theta} Lap_h) u.
ComplexField diffusion_substep(const ComplexField& u, double dt, double theta);

// One full step of the splitting integrator at time t. Strang: half
// diffusion, damping+forcing over dt with the source sampled at t + dt/2,
// half diffusion. Deterministic: identical inputs give identical outputs.
ComplexField step(const ComplexField& u, double t, double dt,
                  const PhysicalParams& params, const ForcingProfile& forcing,
                  Splitting splitting = Splitting::strang);

RunRecord simulate(const ComplexField& u0, const PhysicalParams& params,
                   const ForcingProfile& forcing, const SchemeConfig& scheme);

namespace detail {
// Damping flow with a source held constant over the substep (the step
// routine samples the profile at the midpoint). Exposed for tests.
Complex damped_forced_substep(Complex u_point, Complex f_mid, double dt,
                              const PhysicalParams& params,
                              double bangbang_mu = 0.0);
}  // namespace detail

}  // namespace glx
