#include "glx/params.hpp"

#include <cmath>
#include <sstream>

#include "glx/error.hpp"

namespace glx {

bool in_c_theta(Complex z, double theta, double m) {
  // Exact IEEE comparisons, no tolerance. The rotation is written with named
  // single-rounded products so that z = e^{-i theta} lands exactly on the
  // m = 0 ray: the two cross terms of the imaginary part are then identical
  // and cancel bit-exactly (expression-level FMA contraction would break that).
  const double c = std::cos(theta), s = std::sin(theta);
  const double p1 = z.real() * c;
  const double p2 = z.imag() * s;
  const double p3 = z.real() * s;
  const double p4 = z.imag() * c;
  const double re = p1 - p2;
  const double im = p3 + p4;
  return re > 0.0 && 2.0 * std::sqrt(m) * re >= std::abs(1.0 - m) * std::abs(im);
}

std::string ValidationReport::str() const {
  if (ok()) return "ok";
  std::ostringstream os;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) os << "; ";
    os << violations[i].field << ": " << violations[i].message;
  }
  return os.str();
}

ValidationReport validate(const PhysicalParams& params) {
  ValidationReport report;
  auto fail = [&](const std::string& field, const std::string& msg) {
    report.violations.push_back({field, msg});
  };

  const double half_pi = std::asin(1.0);
  if (!(params.theta > -half_pi && params.theta < half_pi))
    fail("theta", "theta out of range: must lie strictly inside (-pi/2, pi/2)");
  if (!(params.m >= 0.0 && params.m <= 1.0))
    fail("m", "m must lie in [0, 1]");
  if (!(params.p > 1.0))
    fail("p", "p must be greater than 1");
  if (params.dim < 1)
    fail("dim", "spatial dimension must be a positive integer");

  // Cone membership only means anything for an in-range theta.
  if (params.theta > -half_pi && params.theta < half_pi) {
    if (!in_c_theta(params.a, params.theta, params.m))
      fail("a", "a not in C_theta(m)");
    if (params.b != Complex(0.0, 0.0) &&
        !in_c_theta(params.b, params.theta, params.p))
      fail("b", "b not in C_theta(p) nor exactly 0");
    if (!((params.gamma * std::polar(1.0, params.theta)).real() >= 0.0))
      fail("gamma", "Re(gamma e^{i theta}) must be nonnegative");
  }
  return report;
}

double delta_exponent(double m, int dim) {
  if (m >= 1.0) throw Error("delta_exponent: requires m < 1");
  const double n = static_cast<double>(dim);
  return ((n + 2.0) - m * (n - 2.0)) / (n * (1.0 - m) + 4.0);
}

double lambda_exponent(double m, int dim) {
  return 2.0 * (1.0 - delta_exponent(m, dim));
}

DerivedConstants derived_constants(const PhysicalParams& params, double c_gn,
                                   double f_sup, double t0) {
  const ValidationReport report = validate(params);
  if (!report.ok()) throw Error("derived_constants: invalid params: " + report.str());
  if (params.m >= 1.0)
    throw Error("derived_constants: m = 1 has no finite-time extinction algebra (requires m < 1)");
  if (!(c_gn > 0.0)) throw Error("derived_constants: c_gn must be positive");
  if (f_sup < 0.0) throw Error("derived_constants: f_sup must be nonnegative");
  if (t0 < 0.0) throw Error("derived_constants: t0 must be nonnegative");

  const double rate_a = params.a_rot().real();
  if (f_sup > 0.0) {
    if (params.m != 0.0)
      throw Error("derived_constants: a nonzero forcing sup norm is only admissible when m = 0");
    if (f_sup >= rate_a)
      throw Error("derived_constants: forcing sup norm must stay strictly below Re(a e^{i theta})");
  }

  DerivedConstants k;
  k.c_gn = c_gn;
  k.t0 = t0;
  k.delta = delta_exponent(params.m, params.dim);
  k.lambda = 2.0 * (1.0 - k.delta);
  k.big_m = std::min(std::cos(params.theta), rate_a - f_sup);

  const double n = static_cast<double>(params.dim);
  const double q = 4.0 / (n * (1.0 - params.m) + 4.0);
  k.alpha_envelope = k.big_m * std::pow(c_gn, -q);
  k.alpha_schedule = std::min(std::cos(params.theta), rate_a) * std::pow(c_gn, -q);

  const double d = k.delta;
  const double alpha = k.alpha_schedule;
  const double first = std::pow(2.0 * d - 1.0, -(2.0 * d - 1.0) / d) *
                       std::pow(alpha * d, 1.0 / (1.0 - d)) *
                       std::pow(1.0 - d, (2.0 * d - 1.0) / (d * (1.0 - d)));
  k.eps_star = std::min(first, alpha * d * (1.0 - d));
  return k;
}

DerivedConstants derived_constants(const PhysicalParams& params, double c_gn,
                                   double f_sup, double t0, double mass_at_t0) {
  DerivedConstants k = derived_constants(params, c_gn, f_sup, t0);
  k.extinction_bound = extinction_bound_time(mass_at_t0, k);
  return k;
}

double envelope(double t, double mass_at_t0, const DerivedConstants& k) {
  if (t < k.t0) throw Error("envelope: t must not precede t0");
  const double inner =
      std::pow(mass_at_t0, k.lambda) - k.lambda * k.alpha_envelope * (t - k.t0);
  if (inner <= 0.0) return 0.0;
  return std::pow(inner, 1.0 / k.lambda);
}

double extinction_bound_time(double mass_at_t0, const DerivedConstants& k) {
  if (mass_at_t0 < 0.0) throw Error("extinction_bound_time: mass must be nonnegative");
  return k.t0 + std::pow(mass_at_t0, k.lambda) / (k.lambda * k.alpha_envelope);
}

double max_scheduled_initial_mass(const DerivedConstants& k) {
  return std::pow(k.eps_star * k.t0, 1.0 / k.lambda);
}

}  // namespace glx
