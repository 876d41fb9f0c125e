#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "glx/error.hpp"
#include "glx/field.hpp"
#include "oracles.hpp"

using namespace glx;

namespace {
const double kPi = 3.14159265358979323846;

ComplexField first_sine_mode(const Grid& grid) {
  const double L = grid.half_width;
  return ComplexField::from_function(grid, [&](const double* x) {
    double v = 1.0;
    for (int d = 0; d < grid.dim; ++d)
      v *= std::sin(kPi * (x[d] + L) / (2.0 * L));
    return Complex(v, 0.0);
  });
}
}  // namespace

TEST_CASE("grid geometry") {
  const Grid g(1, 1.0, 3);
  CHECK(g.spacing() == doctest::Approx(0.5));
  CHECK(g.point_count() == 3);
  CHECK(g.coordinate(0) == doctest::Approx(-0.5));
  CHECK(g.coordinate(2) == doctest::Approx(0.5));
  CHECK(Grid(2, 1.0, 5).point_count() == 25);
  CHECK_THROWS_AS(Grid(4, 1.0, 5), Error);
  CHECK_THROWS_AS(Grid(1, -1.0, 5), Error);
  CHECK_THROWS_AS(Grid(1, 1.0, 2), Error);
}

TEST_CASE("discrete L2 mass") {
  const Grid g(1, 1.0, 3);  // h = 0.5
  ComplexField u = ComplexField::zeros(g);
  CHECK(mass_l2(u) == 0.0);

  u.values[1] = Complex(1.0, 0.0);
  CHECK(mass_l2(u) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));

  SUBCASE("first sine mode has an exact discrete mass") {
    const Grid fine(1, 10.0, 255);
    // sum of sin^2 over the interior equals (n+1)/2 exactly
    CHECK(mass_l2(first_sine_mode(fine)) ==
          doctest::Approx(std::sqrt(10.0)).epsilon(1e-13));
  }
  SUBCASE("gaussian bump matches the continuum integral") {
    const Grid fine(1, 10.0, 255);
    const ComplexField bump = ComplexField::from_function(
        fine, [](const double* x) { return Complex(std::exp(-0.5 * x[0] * x[0]), 0.0); });
    const double exact =
        oracle::integrate([](double x) { return std::exp(-x * x); }, -10.0, 10.0);
    CHECK(std::abs(mass_l2(bump) * mass_l2(bump) - exact) <= 1e-10);
  }
}

TEST_CASE("Lq norms") {
  const Grid g(1, 2.0, 7);  // h = 0.5
  ComplexField u = ComplexField::zeros(g);
  for (std::size_t i = 0; i < u.values.size(); ++i)
    u.values[i] = std::polar(1.5, 0.3 * static_cast<double>(i));

  SUBCASE("q = 2 agrees with the mass exactly") {
    CHECK(norm_lq(u, 2.0) == doctest::Approx(mass_l2(u)).epsilon(1e-15));
  }
  SUBCASE("constant modulus closed form") {
    CHECK(norm_lq(u, 3.0) ==
          doctest::Approx(1.5 * std::pow(7 * 0.5, 1.0 / 3.0)).epsilon(1e-14));
  }
  SUBCASE("direct-summation oracle and power-mean monotonicity") {
    const ComplexField r = oracle::random_field(g, 99);
    for (double q : {1.0, 1.5, 2.0, 3.0, 4.5}) {
      double sum = 0.0;
      for (const Complex& v : r.values) sum += std::pow(std::abs(v), q);
      CHECK(norm_lq(r, q) ==
            doctest::Approx(std::pow(0.5 * sum, 1.0 / q)).epsilon(1e-13));
    }
    // Normalized by total measure, the norm is the power mean: monotone in q.
    const double measure = 7 * 0.5;
    double prev = 0.0;
    for (double q : {1.0, 2.0, 3.0, 6.0}) {
      const double mean = norm_lq(r, q) / std::pow(measure, 1.0 / q);
      CHECK(mean >= prev - 1e-14);
      prev = mean;
    }
  }
  SUBCASE("q below 1 is rejected") {
    CHECK_THROWS_AS(norm_lq(u, 0.5), Error);
  }
}

TEST_CASE("gradient seminorm") {
  SUBCASE("single interior point sees both walls") {
    const Grid g(1, 1.0, 3);  // h = 0.5
    ComplexField u = ComplexField::zeros(g);
    u.values[1] = Complex(0.0, 2.0);
    CHECK(grad_norm_sq(u) == doctest::Approx(2.0 * 4.0 / 0.5).epsilon(1e-14));
  }
  SUBCASE("first eigenmode: exact discrete identity and continuum limit") {
    for (int n : {63, 127, 255}) {
      const Grid g(1, 10.0, n);
      const ComplexField u = first_sine_mode(g);
      const double mu = oracle::sine_mode_eigenvalue(1, n, g.spacing());
      const double mass_sq = mass_l2(u) * mass_l2(u);
      CHECK(grad_norm_sq(u) == doctest::Approx(mu * mass_sq).epsilon(1e-12));
      const double lambda1 = (kPi / 20.0) * (kPi / 20.0);
      CHECK(std::abs(grad_norm_sq(u) - lambda1 * mass_sq) <=
            2.0 * lambda1 * g.spacing() * g.spacing());
    }
  }
  SUBCASE("zero field") {
    CHECK(grad_norm_sq(ComplexField::zeros(Grid(2, 1.0, 5))) == 0.0);
  }
}

TEST_CASE("discrete Laplacian") {
  SUBCASE("stencil on a lone interior value") {
    const Grid g(1, 2.0, 7);
    const double inv_h2 = 1.0 / (g.spacing() * g.spacing());
    ComplexField u = ComplexField::zeros(g);
    u.values[3] = Complex(2.0, -1.0);
    const ComplexField lap = apply_laplacian(u);
    CHECK(lap.values[2] == u.values[3] * inv_h2);
    CHECK(lap.values[4] == u.values[3] * inv_h2);
    CHECK(lap.values[3] == -2.0 * u.values[3] * inv_h2);
    CHECK(lap.values[0] == Complex(0.0, 0.0));
  }
  SUBCASE("sine mode is an eigenvector") {
    const Grid g(1, 10.0, 127);
    const ComplexField u = first_sine_mode(g);
    const ComplexField lap = apply_laplacian(u);
    const double mu = oracle::sine_mode_eigenvalue(1, 127, g.spacing());
    // Rounding floor of the stencil is eps / h^2, not eps * mu.
    const double floor = 1e-13 / (g.spacing() * g.spacing());
    for (std::size_t i = 0; i < u.values.size(); ++i)
      CHECK(std::abs(lap.values[i] + mu * u.values[i]) <= floor);
  }
  SUBCASE("linearity") {
    const Grid g(2, 3.0, 9);
    const ComplexField u = oracle::random_field(g, 5), v = oracle::random_field(g, 6);
    const Complex ca(1.3, -0.4), cb(-0.2, 2.1);
    ComplexField w = ComplexField::zeros(g);
    for (std::size_t i = 0; i < w.values.size(); ++i)
      w.values[i] = ca * u.values[i] + cb * v.values[i];
    const ComplexField lw = apply_laplacian(w);
    const ComplexField lu = apply_laplacian(u), lv = apply_laplacian(v);
    for (std::size_t i = 0; i < w.values.size(); ++i)
      CHECK(std::abs(lw.values[i] - ca * lu.values[i] - cb * lv.values[i]) <=
            1e-12 * std::abs(lw.values[i]) + 1e-12);
  }
  SUBCASE("integration by parts is exact: -<Lap u, u> = |grad u|^2") {
    for (int dim : {1, 2, 3}) {
      const Grid g(dim, 2.0, dim == 3 ? 7 : 21);
      const ComplexField u = oracle::random_field(g, 17 + dim);
      const ComplexField lap = apply_laplacian(u);
      const double lhs = -inner_real(lap, u);
      const double rhs = grad_norm_sq(u);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * rhs);
    }
  }
}

TEST_CASE("shifted solves") {
  SUBCASE("zero right-hand side and identity shift") {
    const Grid g(1, 1.0, 9);
    const ComplexField zero = ComplexField::zeros(g);
    CHECK(mass_l2(solve_helmholtz(zero, Complex(0.1, 0.2))) == 0.0);
    const ComplexField rhs = oracle::random_field(g, 3);
    const ComplexField same = solve_helmholtz(rhs, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < rhs.values.size(); ++i)
      CHECK(same.values[i] == rhs.values[i]);
  }
  SUBCASE("residual contract in 1D and 2D") {
    for (int dim : {1, 2}) {
      const Grid g(dim, 2.0, dim == 1 ? 101 : 17);
      const ComplexField rhs = oracle::random_field(g, 31 + dim);
      const Complex sigma = 0.01 * std::polar(1.0, 0.6);
      const ComplexField w = solve_helmholtz(rhs, sigma);
      ComplexField residual = apply_laplacian(w);
      double acc = 0.0, ref = 0.0;
      for (std::size_t i = 0; i < w.values.size(); ++i) {
        const Complex r = w.values[i] - sigma * residual.values[i] - rhs.values[i];
        acc += std::norm(r);
        ref += std::norm(rhs.values[i]);
      }
      CHECK(std::sqrt(acc) <= 1e-10 * std::sqrt(ref));
    }
  }
  SUBCASE("solve inverts the forward operator") {
    const Grid g(1, 5.0, 63);
    const ComplexField u = oracle::random_field(g, 77);
    const Complex sigma = 0.05 * std::polar(1.0, -0.8);
    ComplexField forward = apply_laplacian(u);
    for (std::size_t i = 0; i < forward.values.size(); ++i)
      forward.values[i] = u.values[i] - sigma * forward.values[i];
    const ComplexField back = solve_helmholtz(forward, sigma);
    for (std::size_t i = 0; i < u.values.size(); ++i)
      CHECK(std::abs(back.values[i] - u.values[i]) <= 1e-10);
  }
}

TEST_CASE("norm homogeneity") {
  const Grid g(2, 1.5, 11);
  const ComplexField u = oracle::random_field(g, 8);
  const Complex c(0.7, -2.2);
  ComplexField cu = u;
  for (Complex& v : cu.values) v *= c;
  CHECK(mass_l2(cu) == doctest::Approx(std::abs(c) * mass_l2(u)).epsilon(1e-13));
  CHECK(norm_lq(cu, 3.5) ==
        doctest::Approx(std::abs(c) * norm_lq(u, 3.5)).epsilon(1e-13));
  CHECK(std::sqrt(grad_norm_sq(cu)) ==
        doctest::Approx(std::abs(c) * std::sqrt(grad_norm_sq(u))).epsilon(1e-13));
}

TEST_CASE("field snapshots round-trip bit-exactly") {
  namespace fs = std::filesystem;
  fs::create_directories("test_tmp");
  for (int dim : {1, 2}) {
    const Grid g(dim, 3.25, dim == 1 ? 33 : 9);
    const ComplexField u = oracle::random_field(g, 123 + dim);
    const std::string path = "test_tmp/field_" + std::to_string(dim) + ".bin";
    save_field(u, path);
    const ComplexField v = load_field(path);
    REQUIRE(v.grid == u.grid);
    for (std::size_t i = 0; i < u.values.size(); ++i)
      CHECK(v.values[i] == u.values[i]);
  }
  const Grid g(1, 1.0, 5);
  save_field_csv(oracle::random_field(g, 9), "test_tmp/field.csv");
  CHECK(fs::exists("test_tmp/field.csv"));
  CHECK_THROWS_AS(load_field("test_tmp/no_such_file.bin"), Error);
}
