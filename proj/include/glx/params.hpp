#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace glx {

using Complex = std::complex<double>;

// Physical coefficients of the damped complex Ginzburg-Landau equation
//   e^{-i theta} du/dt - Lap u + a|u|^{-(1-m)}u + b|u|^{p-1}u + gamma u = f
// on (-L,L)^dim with homogeneous Dirichlet walls.
struct PhysicalParams {
  double theta = 0.0;   // rotation angle, strictly inside (-pi/2, pi/2)
  double m = 0.0;       // damping exponent in [0,1]; m<1 is the singular regime
  double p = 3.0;       // superlinear exponent in (1, inf)
  Complex a{1.0, 0.0};  // singular/saturated damping coefficient
  Complex b{0.0, 0.0};  // superlinear damping coefficient (may be exactly 0)
  Complex gamma{0.0, 0.0};
  int dim = 1;          // spatial dimension N

  // Rotated coefficients; the real parts are the dissipation rates of the
  // mass identity.
  Complex a_rot() const { return a * std::polar(1.0, theta); }
  Complex b_rot() const { return b * std::polar(1.0, theta); }
  Complex gamma_rot() const { return gamma * std::polar(1.0, theta); }
};

// Admissibility cone: Re(z e^{i theta}) > 0 and
// 2 sqrt(m) Re(z e^{i theta}) >= |1-m| |Im(z e^{i theta})|.
// The first comparison is strict, the second is not; both are exact IEEE
// comparisons, so boundary cases resolve by floating point, not by tolerance.
bool in_c_theta(Complex z, double theta, double m);

struct Violation {
  std::string field;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string str() const;
};

// Checks every admissibility condition and reports all failures; never throws.
ValidationReport validate(const PhysicalParams& params);

// Constants derived from (m, N) and the run data that make the decay
// envelope and the extinction-time bound concrete.
struct DerivedConstants {
  double delta = 0.0;   // ((N+2) - m(N-2)) / (N(1-m)+4), in (1/2,1) for m<1
  double lambda = 0.0;  // 2(1-delta) = 4(1-m)/(N(1-m)+4)
  // Decay rate of the unforced envelope: big_m * c_gn^{-4/(N(1-m)+4)}.
  double alpha_envelope = 0.0;
  // Rate used by the scheduled-extinction construction:
  // min{cos theta, Re(a e^{i theta})} * c_gn^{-4/(N(1-m)+4)}.
  double alpha_schedule = 0.0;
  double big_m = 0.0;     // min{cos theta, Re(a e^{i theta}) - f_sup}
  double eps_star = 0.0;  // admissible amplitude of the scheduled forcing
  double c_gn = 0.0;
  double t0 = 0.0;        // time after which the forcing hypotheses hold
  // Extinction-time bound; populated when a reference mass is supplied.
  std::optional<double> extinction_bound;
};

// c_gn: interpolation constant on the run grid (module gn, or user supplied).
// f_sup: sup norm of the forcing past t0; nonzero only admissible when m = 0,
// and must stay strictly below Re(a e^{i theta}).
// Rejects m = 1 (the delta-dependent algebra needs m < 1) with a typed error.
DerivedConstants derived_constants(const PhysicalParams& params, double c_gn,
                                   double f_sup, double t0);
DerivedConstants derived_constants(const PhysicalParams& params, double c_gn,
                                   double f_sup, double t0, double mass_at_t0);

// Decay envelope for the L2 norm from time k.t0 on:
//   (mass_at_t0^lambda - lambda * alpha_envelope * (t - t0))_+^{1/lambda}.
// Exactly 0 once the inner expression is nonpositive.
double envelope(double t, double mass_at_t0, const DerivedConstants& k);

// Root of the envelope: t0 + mass_at_t0^lambda / (lambda * alpha_envelope).
double extinction_bound_time(double mass_at_t0, const DerivedConstants& k);

double delta_exponent(double m, int dim);
double lambda_exponent(double m, int dim);

// Largest initial L2 norm for which the scheduled-extinction construction
// applies: mass^{2(1-delta)} <= eps_star * t0.
double max_scheduled_initial_mass(const DerivedConstants& k);

}  // namespace glx
