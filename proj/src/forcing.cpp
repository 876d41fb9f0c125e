#include "glx/forcing.hpp"

#include <cmath>

#include "glx/error.hpp"

namespace glx {

double SpatialShape::operator()(const double* x, int dim) const {
  double r2 = 0.0;
  for (int d = 0; d < dim; ++d) {
    const double s = (x[d] - center[d]) / width[d];
    r2 += s * s;
  }
  switch (kind) {
    case Kind::gaussian:
      return amplitude * std::exp(-0.5 * r2);
    case Kind::bump:
      if (r2 >= 1.0) return 0.0;
      return amplitude * std::exp(1.0 - 1.0 / (1.0 - r2));
  }
  return 0.0;
}

ComplexField SpatialShape::materialize(const Grid& grid) const {
  return ComplexField::from_function(
      grid, [&](const double* x) { return Complex((*this)(x, grid.dim), 0.0); });
}

std::string to_string(ForcingKind kind) {
  switch (kind) {
    case ForcingKind::zero: return "zero";
    case ForcingKind::cutoff: return "cutoff";
    case ForcingKind::bounded: return "bounded";
    case ForcingKind::scheduled: return "scheduled";
    case ForcingKind::bangbang: return "bangbang";
  }
  return "?";
}

double ForcingProfile::scheduled_mass_sq(double t) const {
  const double rem = t0 - t;
  if (rem <= 0.0) return 0.0;
  return eps * std::pow(rem, schedule_exponent);
}

ForcingProfile zero_forcing() { return ForcingProfile{}; }

ForcingProfile cutoff_forcing(const SpatialShape& shape, double t0) {
  ForcingProfile p;
  p.kind = ForcingKind::cutoff;
  p.shape = shape;
  p.t0 = t0;
  return p;
}

ForcingProfile bounded_forcing(const SpatialShape& shape,
                               const PhysicalParams& params, double t0) {
  const double rate_a = params.a_rot().real();
  if (!(std::abs(shape.amplitude) < rate_a))
    throw Error("bounded_forcing: sup|f| must stay strictly below Re(a e^{i theta})");
  ForcingProfile p;
  p.kind = ForcingKind::bounded;
  p.shape = shape;
  p.t0 = t0;
  return p;
}

ForcingProfile scheduled_profile(const PhysicalParams& params,
                                 const DerivedConstants& k,
                                 const SpatialShape& shape, double eps) {
  if (params.m >= 1.0)
    throw Error("scheduled_profile: requires m < 1");
  if (!(k.t0 > 0.0))
    throw Error("scheduled_profile: the target extinction time t0 must be positive");
  if (eps < 0.0) eps = k.eps_star;
  if (eps > k.eps_star)
    throw Error("scheduled_profile: eps exceeds the admissible threshold eps_star");
  ForcingProfile p;
  p.kind = ForcingKind::scheduled;
  p.shape = shape;
  p.t0 = k.t0;
  p.eps = eps;
  p.schedule_exponent = (2.0 * k.delta - 1.0) / (1.0 - k.delta);
  p.max_initial_mass = max_scheduled_initial_mass(k);
  return p;
}

ForcingProfile bangbang_forcing(double mu) {
  if (mu < 0.0) throw Error("bangbang_forcing: gain must be nonnegative");
  ForcingProfile p;
  p.kind = ForcingKind::bangbang;
  p.mu = mu;
  return p;
}

ComplexField eval_forcing(const ForcingProfile& profile, const Grid& grid,
                          double t, const ComplexField* u_current) {
  switch (profile.kind) {
    case ForcingKind::zero:
      return ComplexField::zeros(grid);
    case ForcingKind::cutoff:
      if (t > profile.t0) return ComplexField::zeros(grid);
      return profile.shape.materialize(grid);
    case ForcingKind::bounded:
      return profile.shape.materialize(grid);
    case ForcingKind::scheduled: {
      const double target_sq = profile.scheduled_mass_sq(t);
      if (target_sq <= 0.0) return ComplexField::zeros(grid);
      ComplexField f = profile.shape.materialize(grid);
      const double norm = mass_l2(f);
      if (norm == 0.0)
        throw Error("eval_forcing: scheduled shape vanishes on this grid");
      const double scale = std::sqrt(target_sq) / norm;
      for (Complex& v : f.values) v *= scale;
      return f;
    }
    case ForcingKind::bangbang: {
      if (u_current == nullptr)
        throw Error("eval_forcing: bangbang forcing requires the current state");
      ComplexField f = ComplexField::zeros(grid);
      const Complex gain(0.0, -profile.mu);
      for (std::size_t i = 0; i < u_current->values.size(); ++i) {
        const Complex u = u_current->values[i];
        const double rho = std::abs(u);
        if (rho > 0.0) f.values[i] = gain * (u / rho);
      }
      return f;
    }
  }
  return ComplexField::zeros(grid);
}

ValidationReport check_profile(const ForcingProfile& profile,
                               const PhysicalParams& params, const Grid& grid,
                               const DerivedConstants* k) {
  ValidationReport report;
  auto fail = [&](const std::string& field, const std::string& msg) {
    report.violations.push_back({field, msg});
  };

  const int samples = 512;
  const double horizon = profile.t0 > 0.0 ? 2.0 * profile.t0 : 2.0;

  switch (profile.kind) {
    case ForcingKind::zero:
      break;
    case ForcingKind::cutoff: {
      double worst = 0.0;
      for (int i = 1; i <= samples; ++i) {
        const double t = profile.t0 + i * (horizon / samples);
        ComplexField f = eval_forcing(profile, grid, t);
        worst = std::max(worst, norm_lq(f, 2.0));
      }
      if (worst > 0.0)
        fail("cutoff", "source does not vanish after t0 (max mass " +
                           std::to_string(worst) + ")");
      break;
    }
    case ForcingKind::bounded: {
      const double rate_a = params.a_rot().real();
      double sup = 0.0;
      for (int i = 0; i <= samples; ++i) {
        const double t = profile.t0 + i * (horizon / samples);
        ComplexField f = eval_forcing(profile, grid, t);
        for (const Complex& v : f.values) sup = std::max(sup, std::abs(v));
      }
      sup = std::max(sup, std::abs(profile.shape.amplitude));
      if (!(sup < rate_a))
        fail("bounded", "sup|f| must be strictly below Re(a e^{i theta})");
      break;
    }
    case ForcingKind::scheduled: {
      if (k != nullptr && profile.eps > k->eps_star)
        fail("scheduled", "eps exceeds eps_star");
      double worst = 0.0;
      for (int i = 0; i <= samples; ++i) {
        const double t = i * (horizon / samples);
        ComplexField f = eval_forcing(profile, grid, t);
        const double mass_sq = std::pow(mass_l2(f), 2.0);
        const double budget = profile.scheduled_mass_sq(t);
        worst = std::max(worst, mass_sq - budget * (1.0 + 1e-12));
      }
      if (worst > 0.0)
        fail("scheduled", "||f(t)||^2 exceeds the schedule by " +
                              std::to_string(worst));
      break;
    }
    case ForcingKind::bangbang:
      if (profile.mu < 0.0) fail("bangbang", "gain must be nonnegative");
      break;
  }
  return report;
}

}  // namespace glx
