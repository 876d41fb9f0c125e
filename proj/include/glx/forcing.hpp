#pragma once

#include <array>
#include <string>

#include "glx/field.hpp"
#include "glx/params.hpp"

namespace glx {

// Smooth spatial profiles used for sources and initial data.
struct SpatialShape {
  enum class Kind { gaussian, bump };
  Kind kind = Kind::gaussian;
  std::array<double, 3> center{0.0, 0.0, 0.0};
  std::array<double, 3> width{1.0, 1.0, 1.0};
  double amplitude = 1.0;

  // Pointwise value; peak |amplitude| at the center. The bump variant is the
  // classic compactly supported mollifier, zero outside the width ellipsoid.
  double operator()(const double* x, int dim) const;
  ComplexField materialize(const Grid& grid) const;
};

enum class ForcingKind { zero, cutoff, bounded, scheduled, bangbang };

std::string to_string(ForcingKind kind);

// Time-dependent source f(t, x).
//  zero       f = 0
//  cutoff     f = shape(x) for t <= t0, exactly 0 after
//  bounded    f = shape(x) for all t, sup|f| strictly below Re(a e^{i theta})
//  scheduled  f = sqrt(eps (t0 - t)_+^expo) * shape(x)/||shape||_{L2}
//  bangbang   f = -i mu u/|u| where u != 0, and 0 where u = 0
struct ForcingProfile {
  ForcingKind kind = ForcingKind::zero;
  double t0 = 0.0;
  SpatialShape shape;
  double mu = 0.0;   // bangbang gain
  double eps = 0.0;  // scheduled amplitude coefficient, <= eps_star
  double schedule_exponent = 0.0;  // (2 delta - 1)/(1 - delta)
  // Largest initial L2 norm admissible for scheduled extinction at t0.
  double max_initial_mass = 0.0;

  // Squared L2 norm of the scheduled source at time t.
  double scheduled_mass_sq(double t) const;
};

ForcingProfile zero_forcing();
ForcingProfile cutoff_forcing(const SpatialShape& shape, double t0);
// Validates sup|f| < Re(a e^{i theta}) at construction.
ForcingProfile bounded_forcing(const SpatialShape& shape,
                               const PhysicalParams& params, double t0 = 0.0);
// eps < 0 selects the extreme admissible amplitude eps_star.
ForcingProfile scheduled_profile(const PhysicalParams& params,
                                 const DerivedConstants& k,
                                 const SpatialShape& shape, double eps = -1.0);
ForcingProfile bangbang_forcing(double mu);

// Materializes the source at time t. The bangbang kind is feedback and
// requires the current state.
ComplexField eval_forcing(const ForcingProfile& profile, const Grid& grid,
                          double t, const ComplexField* u_current = nullptr);

// Verifies the kind-specific invariant by dense time sampling on the given
// grid; reports the worst violation. Total: never throws on bad profiles.
ValidationReport check_profile(const ForcingProfile& profile,
                               const PhysicalParams& params, const Grid& grid,
                               const DerivedConstants* k = nullptr);

}  // namespace glx
