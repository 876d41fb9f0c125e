#include "doctest.h"

#include <cmath>
#include <random>

#include "glx/dynamics.hpp"
#include "glx/error.hpp"
#include "glx/forcing.hpp"
#include "glx/gn.hpp"
#include "glx/params.hpp"

using namespace glx;

namespace {
const double kPi = 3.14159265358979323846;
}

TEST_CASE("admissibility cone membership") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> utheta(-1.5, 1.5);

  SUBCASE("m = 0 cone is the ray mu e^{-i theta}") {
    // Power-of-two scalings are exact in IEEE, so these points sit exactly
    // on the measure-zero ray; arbitrary scalings would round off it.
    std::uniform_int_distribution<int> upow(-40, 40);
    for (int i = 0; i < 200; ++i) {
      const double theta = utheta(rng);
      const double mu = std::ldexp(1.0, upow(rng));
      CHECK(in_c_theta(mu * std::polar(1.0, -theta), theta, 0.0));
    }
  }
  SUBCASE("rotating off the ray leaves the m = 0 cone") {
    const double theta = 0.7;
    CHECK_FALSE(in_c_theta(Complex(0, 1) * std::polar(1.0, -theta), theta, 0.0));
    for (int i = 0; i < 200; ++i) {
      std::uniform_real_distribution<double> uphi(1e-6, kPi - 1e-6);
      const double phi = uphi(rng) * (i % 2 ? 1.0 : -1.0);
      CHECK_FALSE(in_c_theta(std::polar(2.0, -theta + phi), theta, 0.0));
    }
  }
  SUBCASE("m = 1 only needs a positive rotated real part") {
    const double theta = -0.3;
    CHECK(in_c_theta(Complex(1.0, 1e6) * std::polar(1.0, -theta), theta, 1.0));
    CHECK_FALSE(in_c_theta(Complex(-1.0, 1e6) * std::polar(1.0, -theta), theta, 1.0));
  }
  SUBCASE("cone property: membership survives positive scaling") {
    std::uniform_real_distribution<double> ux(1e-3, 10.0), us(1e-6, 1e6);
    std::uniform_real_distribution<double> um(0.0, 1.0), uy(-1.0, 1.0);
    for (int i = 0; i < 500; ++i) {
      const double theta = utheta(rng), m = um(rng);
      const double x = ux(rng);
      // y within the admissible slab (slightly inside to be safe)
      const double y_max =
          m > 0 ? 2.0 * std::sqrt(m) * x / std::abs(1.0 - m) : 0.0;
      const double y = m > 0 ? uy(rng) * 0.99 * y_max : 0.0;
      const Complex z = Complex(x, y) * std::polar(1.0, -theta);
      REQUIRE(in_c_theta(z, theta, m));
      CHECK(in_c_theta(us(rng) * z, theta, m));
    }
  }
}

TEST_CASE("parameter validation") {
  PhysicalParams ok;
  ok.theta = 0.0;
  ok.m = 0.0;
  ok.a = 1.0;
  ok.b = 0.0;
  ok.gamma = 0.0;
  CHECK(validate(ok).ok());

  SUBCASE("purely imaginary a fails the strict real-part condition") {
    PhysicalParams bad = ok;
    bad.a = Complex(0.0, 1.0);
    const ValidationReport report = validate(bad);
    REQUIRE_FALSE(report.ok());
    CHECK(report.violations.front().field == "a");
  }
  SUBCASE("theta at the closed endpoint is out of range") {
    PhysicalParams bad = ok;
    bad.theta = kPi / 2.0;
    const ValidationReport report = validate(bad);
    REQUIRE_FALSE(report.ok());
    CHECK(report.violations.front().field == "theta");
  }
  SUBCASE("b may be exactly zero but not otherwise outside its cone") {
    PhysicalParams p = ok;
    p.b = Complex(-1.0, 0.0);
    CHECK_FALSE(validate(p).ok());
    p.b = 0.0;
    CHECK(validate(p).ok());
  }
  SUBCASE("gamma needs a nonnegative rotated real part") {
    PhysicalParams p = ok;
    p.gamma = Complex(-0.1, 0.0);
    CHECK_FALSE(validate(p).ok());
    p.gamma = Complex(0.0, 5.0);  // Re(gamma e^{i0}) = 0 is allowed
    CHECK(validate(p).ok());
  }
  SUBCASE("every violation is reported, not just the first") {
    PhysicalParams p = ok;
    p.m = 2.0;
    p.p = 0.5;
    CHECK(validate(p).violations.size() >= 2);
  }
}

TEST_CASE("derived exponents") {
  CHECK(delta_exponent(0.0, 1) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(lambda_exponent(0.0, 1) == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(delta_exponent(0.0, 2) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(lambda_exponent(0.0, 2) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

  SUBCASE("exponent identity and range, exhaustively over m and N") {
    for (int n = 1; n <= 3; ++n) {
      for (int i = 0; i <= 9; ++i) {
        const double m = 0.1 * i;
        const double d = delta_exponent(m, n);
        CHECK(d > 0.5);
        CHECK(d < 1.0);
        const double lhs = (2.0 * d - 1.0) / (1.0 - d);
        const double rhs = (n * (1.0 - m) + 4.0 * m) / (2.0 * (1.0 - m));
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs));
        CHECK(lambda_exponent(m, n) ==
              doctest::Approx(2.0 * (1.0 - d)).epsilon(1e-15));
      }
    }
  }
  SUBCASE("m = 1 is rejected") {
    CHECK_THROWS_AS(delta_exponent(1.0, 1), Error);
  }
}

TEST_CASE("derived constants") {
  PhysicalParams params;
  params.theta = 0.0;
  params.m = 0.0;
  params.a = 1.0;
  params.dim = 1;

  SUBCASE("unit constants, m = 0, N = 1") {
    const DerivedConstants k = derived_constants(params, 1.0, 0.0, 0.0);
    CHECK(k.delta == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(k.lambda == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(k.big_m == doctest::Approx(1.0));
    CHECK(k.alpha_envelope == doctest::Approx(1.0));
    CHECK(k.alpha_schedule == doctest::Approx(1.0));
    // Bound formula: mass^lambda / (lambda M) + t0.
    CHECK(extinction_bound_time(1.0, k) == doctest::Approx(1.25).epsilon(1e-14));
    CHECK(extinction_bound_time(0.7, k) ==
          doctest::Approx(std::pow(0.7, 0.8) / 0.8).epsilon(1e-14));
  }
  SUBCASE("m = 1 is a typed error") {
    PhysicalParams p = params;
    p.m = 1.0;
    CHECK_THROWS_AS(derived_constants(p, 1.0, 0.0, 0.0), Error);
  }
  SUBCASE("forcing sup norm gates") {
    CHECK_THROWS_AS(derived_constants(params, 1.0, 1.0, 0.0), Error);
    PhysicalParams p = params;
    p.m = 0.5;
    CHECK_THROWS_AS(derived_constants(p, 1.0, 0.1, 0.0), Error);
    const DerivedConstants k = derived_constants(params, 1.0, 0.25, 0.0);
    CHECK(k.big_m == doctest::Approx(0.75));
  }
  SUBCASE("the two rate variants differ exactly by the sup-norm subtraction") {
    const DerivedConstants k = derived_constants(params, 2.0, 0.25, 0.0);
    const double q = 4.0 / 5.0;
    CHECK(k.alpha_envelope ==
          doctest::Approx(0.75 * std::pow(2.0, -q)).epsilon(1e-14));
    CHECK(k.alpha_schedule ==
          doctest::Approx(1.0 * std::pow(2.0, -q)).epsilon(1e-14));
  }
  SUBCASE("scheduled-amplitude threshold formula") {
    const DerivedConstants k = derived_constants(params, 1.0, 0.0, 2.0);
    const double d = k.delta, alpha = k.alpha_schedule;
    const double first = std::pow(2 * d - 1, -(2 * d - 1) / d) *
                         std::pow(alpha * d, 1 / (1 - d)) *
                         std::pow(1 - d, (2 * d - 1) / (d * (1 - d)));
    CHECK(k.eps_star ==
          doctest::Approx(std::min(first, alpha * d * (1 - d))).epsilon(1e-14));
    const double mass_max = max_scheduled_initial_mass(k);
    CHECK(std::pow(mass_max, 2.0 * (1.0 - d)) ==
          doctest::Approx(k.eps_star * k.t0).epsilon(1e-12));
  }
}

TEST_CASE("decay envelope") {
  PhysicalParams params;
  params.theta = 0.0;
  params.m = 0.0;
  params.a = 1.0;
  params.dim = 1;
  const DerivedConstants k = derived_constants(params, 1.0, 0.0, 0.0);

  CHECK(envelope(0.0, 1.0, k) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(envelope(5.0, 0.0, k) == 0.0);
  CHECK_THROWS_AS(envelope(-0.1, 1.0, k), Error);

  SUBCASE("exact zero at the predicted root, positive just before") {
    const double root = extinction_bound_time(1.0, k);
    CHECK(root == doctest::Approx(1.25));
    CHECK(envelope(root, 1.0, k) == 0.0);
    CHECK(envelope(root + 100.0, 1.0, k) == 0.0);
    CHECK(envelope(root - 1e-9, 1.0, k) > 0.0);
  }
  SUBCASE("nonincreasing and nonnegative") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ut(0.0, 3.0);
    for (int i = 0; i < 300; ++i) {
      double t1 = ut(rng), t2 = ut(rng);
      if (t1 > t2) std::swap(t1, t2);
      const double e1 = envelope(t1, 0.9, k), e2 = envelope(t2, 0.9, k);
      CHECK(e1 >= e2);
      CHECK(e2 >= 0.0);
    }
  }
}

// Bound formula cross-checked against the simulated extinction time on a
// coarse grid (the full-resolution version lives in the acceptance suite).
TEST_CASE("extinction bound dominates a simulated run") {
  PhysicalParams params;
  params.theta = 0.0;
  params.m = 0.0;
  params.a = 1.0;
  params.dim = 1;
  const Grid grid(1, 10.0, 63);
  const GnEstimate gn = estimate_cgn(0.0, grid, 40, 402);
  const DerivedConstants k = derived_constants(params, gn.c_gn, 0.0, 0.0);

  SpatialShape init;
  const ComplexField u0 = init.materialize(grid);
  SchemeConfig scheme;
  scheme.dt = 2e-3;
  scheme.t_end = 3.0;
  scheme.snapshot_stride = 25;
  const RunRecord run = simulate(u0, params, zero_forcing(), scheme);
  REQUIRE(run.extinction_time.has_value());
  CHECK(*run.extinction_time <= extinction_bound_time(mass_l2(u0), k));
}
