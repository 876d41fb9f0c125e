#include "glx/dynamics.hpp"

#include <cmath>
#include <cstdio>

#include "glx/error.hpp"

namespace glx {

namespace {

struct RotatedRates {
  Complex rotation;  // e^{i theta}
  Complex a_rot, b_rot, gamma_rot;
  double m, p;
  double bang_mu = 0.0;  // continuous feedback -i mu u/|u| when positive
  bool b_zero, gamma_zero;
};

RotatedRates make_rates(const PhysicalParams& params, double bang_mu = 0.0) {
  RotatedRates r;
  r.rotation = std::polar(1.0, params.theta);
  r.a_rot = params.a_rot();
  r.b_rot = params.b_rot();
  r.gamma_rot = params.gamma_rot();
  r.m = params.m;
  r.p = params.p;
  r.bang_mu = bang_mu;
  r.b_zero = params.b == Complex(0.0, 0.0);
  r.gamma_zero = params.gamma == Complex(0.0, 0.0);
  return r;
}

// Exact flow of u' = -a_rot |u|^{m-1} u over tau (b = gamma = 0).
// Amplitude: rho^{1-m} decays linearly for m < 1 and hits 0 exactly;
// exponential for m = 1. Phase: the matching closed-form integral.
Complex damping_closed_form(Complex u, double tau, Complex a_rot, double m) {
  const double rho = std::abs(u);
  if (rho == 0.0) return Complex(0.0, 0.0);
  const double rate = a_rot.real();
  const double twist = a_rot.imag();
  if (m == 1.0) {
    return u * std::polar(std::exp(-rate * tau), -twist * tau);
  }
  const double p0 = std::pow(rho, 1.0 - m);
  const double p1 = p0 - (1.0 - m) * rate * tau;
  if (p1 <= 0.0) return Complex(0.0, 0.0);
  const double scale = std::pow(p1, 1.0 / (1.0 - m)) / rho;
  if (twist == 0.0) return u * scale;
  const double dphi = twist / ((1.0 - m) * rate) * std::log(p1 / p0);
  return u * (scale * std::polar(1.0, dphi));
}

// Right-hand side of the pointwise substep ODE,
//   u' = -e^{i theta} (a|u|^{m-1}u + b|u|^{p-1}u + gamma u) + f_rot,
// with the saturated-section convention: the power terms vanish at u = 0.
// Powers are evaluated as rho^m * (u/rho) so nothing blows up near 0.
Complex pointwise_rhs(Complex u, Complex f_rot, const RotatedRates& r) {
  Complex out = f_rot - r.gamma_rot * u;
  const double rho = std::abs(u);
  if (rho > 0.0) {
    const Complex dir = u / rho;
    out -= r.a_rot * std::pow(rho, r.m) * dir;
    if (!r.b_zero) out -= r.b_rot * std::pow(rho, r.p) * dir;
    if (r.bang_mu > 0.0) out += r.rotation * Complex(0.0, -r.bang_mu) * dir;
  }
  return out;
}

// Two exact early-extinction certificates. Both compare the amplitude ODE
// against a one-sided bound whose zero is reached within the remaining time;
// once the amplitude hits 0 the state stays 0 for the rest of the substep
// (|U| <= 1 absorbs any source with |f| <= Re(a e^{i theta}) at zeros).
bool certainly_extinct(double rho, double f_abs, double tau_rem,
                       const RotatedRates& r) {
  if (r.bang_mu > 0.0) return false;  // feedback can pump amplitude off axis
  const double rate = r.a_rot.real();
  if (f_abs == 0.0 && r.m < 1.0) {
    // rho' <= -rate * rho^m, so rho^{1-m} <= rho0^{1-m} - (1-m) rate tau.
    if (std::pow(rho, 1.0 - r.m) <= (1.0 - r.m) * rate * tau_rem) return true;
  }
  if (r.m == 0.0 && f_abs <= rate) {
    // rho' <= -(rate - |f|) while rho > 0, and 0 is invariant afterwards.
    if (rho <= (rate - f_abs) * tau_rem) return true;
  }
  return false;
}

// Cash-Karp 4(5) embedded pair.
constexpr double ck_c[6] = {0.0, 1.0 / 5, 3.0 / 10, 3.0 / 5, 1.0, 7.0 / 8};
constexpr double ck_a[6][5] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {3.0 / 10, -9.0 / 10, 6.0 / 5},
    {-11.0 / 54, 5.0 / 2, -70.0 / 27, 35.0 / 27},
    {1631.0 / 55296, 175.0 / 512, 575.0 / 13824, 44275.0 / 110592, 253.0 / 4096}};
constexpr double ck_b5[6] = {37.0 / 378,  0.0, 250.0 / 621,
                             125.0 / 594, 0.0, 512.0 / 1771};
constexpr double ck_b4[6] = {2825.0 / 27648,  0.0,           18575.0 / 48384,
                             13525.0 / 55296, 277.0 / 14336, 1.0 / 4};

Complex adaptive_pointwise(Complex u, Complex f_rot, double tau_total,
                           const RotatedRates& r) {
  const double f_abs = std::abs(f_rot);
  const double scale_ref = std::max({std::abs(u), f_abs, 1e-3});
  const double abs_tol = 1e-13 * scale_ref;
  const double rel_tol = 1e-10;
  double t = 0.0;
  double h = tau_total;

  while (t < tau_total) {
    if (certainly_extinct(std::abs(u), f_abs, tau_total - t, r))
      return Complex(0.0, 0.0);
    if (tau_total - t <= 1e-13 * tau_total) break;  // endpoint dust
    if (h > tau_total - t) h = tau_total - t;
    if (h < 1e-14 * tau_total) {
      char msg[128];
      std::snprintf(msg, sizeof msg,
                    "damping substep: step size underflow at local time %.6e (|u|=%.3e)",
                    t, std::abs(u));
      throw Error(msg);
    }

    Complex k[6];
    k[0] = pointwise_rhs(u, f_rot, r);
    for (int s = 1; s < 6; ++s) {
      Complex us = u;
      for (int j = 0; j < s; ++j) us += h * ck_a[s][j] * k[j];
      k[s] = pointwise_rhs(us, f_rot, r);
    }
    Complex u5 = u, u4 = u;
    for (int s = 0; s < 6; ++s) {
      u5 += h * ck_b5[s] * k[s];
      u4 += h * ck_b4[s] * k[s];
    }
    const double err = std::abs(u5 - u4);
    const double tol = abs_tol + rel_tol * std::max(std::abs(u), std::abs(u5));
    if (err <= tol) {
      u = u5;
      t += h;
      // Snap to the absorbing state when the trajectory has collapsed to
      // rounding level and the damping dominates the source.
      if (std::abs(u) <= abs_tol && f_abs <= r.a_rot.real() && r.m == 0.0)
        u = Complex(0.0, 0.0);
    }
    const double grow = err > 0.0 ? 0.9 * std::pow(tol / err, 0.2) : 5.0;
    h *= std::min(5.0, std::max(0.2, grow));
  }
  return u;
}

Complex pointwise_substep(Complex u, Complex f_mid_rot, double dt,
                          const RotatedRates& r) {
  if (f_mid_rot == Complex(0.0, 0.0) && r.b_zero && r.gamma_zero &&
      r.bang_mu == 0.0)
    return damping_closed_form(u, dt, r.a_rot, r.m);
  // Exact equilibrium: every term of the ODE vanishes at u = 0 when f = 0.
  if (u == Complex(0.0, 0.0) && f_mid_rot == Complex(0.0, 0.0)) return u;
  return adaptive_pointwise(u, f_mid_rot, dt, r);
}

}  // namespace

Complex damping_substep(Complex u_point, double dt, const PhysicalParams& params) {
  const ValidationReport report = validate(params);
  if (!report.ok()) throw Error("damping_substep: invalid params: " + report.str());
  if (!(dt >= 0.0)) throw Error("damping_substep: dt must be nonnegative");
  return pointwise_substep(u_point, Complex(0.0, 0.0), dt, make_rates(params));
}

namespace detail {
Complex damped_forced_substep(Complex u_point, Complex f_mid, double dt,
                              const PhysicalParams& params, double bangbang_mu) {
  const Complex f_rot = f_mid * std::polar(1.0, params.theta);
  return pointwise_substep(u_point, f_rot, dt, make_rates(params, bangbang_mu));
}
}  // namespace detail

ComplexField diffusion_substep(const ComplexField& u, double dt, double theta) {
  if (dt == 0.0) return u;
  const Complex sigma = 0.5 * dt * std::polar(1.0, theta);
  ComplexField rhs = apply_laplacian(u);
  for (std::size_t i = 0; i < rhs.values.size(); ++i)
    rhs.values[i] = u.values[i] + sigma * rhs.values[i];
  return solve_helmholtz(rhs, sigma);
}

ComplexField step(const ComplexField& u, double t, double dt,
                  const PhysicalParams& params, const ForcingProfile& forcing,
                  Splitting splitting) {
  const Complex rotation = std::polar(1.0, params.theta);
  const RotatedRates rates =
      make_rates(params, forcing.kind == ForcingKind::bangbang ? forcing.mu : 0.0);

  ComplexField v = splitting == Splitting::strang
                       ? diffusion_substep(u, dt / 2.0, params.theta)
                       : diffusion_substep(u, dt, params.theta);

  // Midpoint sample of the external source, held constant across the
  // pointwise substep. Bangbang feedback instead lives inside the ODE.
  ComplexField f_mid = ComplexField::zeros(u.grid);
  if (forcing.kind != ForcingKind::zero && forcing.kind != ForcingKind::bangbang)
    f_mid = eval_forcing(forcing, u.grid, t + dt / 2.0);

  for (std::size_t i = 0; i < v.values.size(); ++i)
    v.values[i] =
        pointwise_substep(v.values[i], f_mid.values[i] * rotation, dt, rates);

  if (splitting == Splitting::strang)
    v = diffusion_substep(v, dt / 2.0, params.theta);
  return v;
}

RunRecord simulate(const ComplexField& u0, const PhysicalParams& params,
                   const ForcingProfile& forcing, const SchemeConfig& scheme) {
  const ValidationReport report = validate(params);
  if (!report.ok()) throw Error("simulate: invalid params: " + report.str());
  if (!(scheme.dt > 0.0)) throw Error("simulate: dt must be positive");
  if (scheme.t_end < 0.0) throw Error("simulate: t_end must be nonnegative");
  if (scheme.snapshot_stride < 1) throw Error("simulate: snapshot stride must be >= 1");
  if (!u0.all_finite()) throw Error("simulate: initial data contains NaN/Inf");

  RunRecord rec;
  rec.grid = u0.grid;
  rec.params = params;
  rec.scheme = scheme;
  rec.forcing_kind = forcing.kind;

  const double lm1_q = params.m + 1.0;
  const double lp1_q = params.p + 1.0;
  auto snapshot = [&](double t, const ComplexField& u) {
    rec.times.push_back(t);
    rec.mass.push_back(mass_l2(u));
    rec.grad_sq.push_back(grad_norm_sq(u));
    rec.lm1.push_back(norm_lq(u, lm1_q));
    rec.lp1.push_back(norm_lq(u, lp1_q));
    if (scheme.store_fields) rec.fields.push_back(u);
  };

  ComplexField u = u0;
  snapshot(0.0, u);
  if (mass_l2(u) <= scheme.extinction_tolerance) rec.extinction_time = 0.0;

  const long long nsteps =
      static_cast<long long>(std::ceil(scheme.t_end / scheme.dt - 1e-12));
  for (long long k = 0; k < nsteps; ++k) {
    const double t = k * scheme.dt;
    const double dt = std::min(scheme.dt, scheme.t_end - t);
    try {
      u = step(u, t, dt, params, forcing, scheme.splitting);
    } catch (const Error& e) {
      rec.aborted = true;
      char ctx[96];
      std::snprintf(ctx, sizeof ctx, " (at t=%.9g, step %lld)", t,
                    static_cast<long long>(k));
      rec.error = e.what() + std::string(ctx);
      rec.final_field = u;
      return rec;
    }
    const double t_next = t + dt;
    if (!rec.extinction_time && mass_l2(u) <= scheme.extinction_tolerance)
      rec.extinction_time = t_next;
    if ((k + 1) % scheme.snapshot_stride == 0 || k + 1 == nsteps)
      snapshot(t_next, u);
  }
  rec.final_field = u;
  return rec;
}

}  // namespace glx
