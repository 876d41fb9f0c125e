#pragma once

// Test-only oracles, independent of the library's solution paths: quadrature
// for continuum integrals, the analytic sine eigenbasis of the 1D Dirichlet
// Laplacian, and brute-force fine-step RK4 for the pointwise damping ODE.

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "glx/field.hpp"
#include "glx/params.hpp"

namespace oracle {

using glx::Complex;

inline double simpson_rec(const std::function<double(double)>& f, double a,
                          double b, double fa, double fm, double fb,
                          double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double flm = f(0.5 * (a + m)), frm = f(0.5 * (m + b));
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-13) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  return simpson_rec(f, a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb),
                     tol, 50);
}

// Discrete Dirichlet sine modes on a 1D interior grid: mode k has entries
// sin(k pi (j+1)/(n+1)) and -Laplacian eigenvalue (2/h^2)(1 - cos(k pi/(n+1))).
inline double sine_mode_entry(int k, int j, int n) {
  const double pi = 3.14159265358979323846;
  return std::sin(k * pi * (j + 1) / (n + 1));
}

inline double sine_mode_eigenvalue(int k, int n, double h) {
  const double pi = 3.14159265358979323846;
  return 2.0 / (h * h) * (1.0 - std::cos(k * pi / (n + 1)));
}

// Exact solution of u' = e^{i theta} Lap_h u over dt on a 1D grid, by
// expanding in the analytic eigenbasis. Independent of the library solver.
inline glx::ComplexField diffusion_exact_1d(const glx::ComplexField& u,
                                            double dt, double theta) {
  const int n = u.grid.points_per_axis;
  const double h = u.grid.spacing();
  glx::ComplexField out = glx::ComplexField::zeros(u.grid);
  for (int k = 1; k <= n; ++k) {
    Complex coef(0.0, 0.0);
    for (int j = 0; j < n; ++j)
      coef += u.values[j] * sine_mode_entry(k, j, n);
    coef *= 2.0 / (n + 1);
    const double mu = sine_mode_eigenvalue(k, n, h);
    const Complex decay = std::exp(-dt * std::polar(1.0, theta) * mu);
    for (int j = 0; j < n; ++j)
      out.values[j] += coef * decay * sine_mode_entry(k, j, n);
  }
  return out;
}

// Fixed-step RK4 on the pointwise ODE
//   u' = -e^{i theta}(a|u|^{m-1}u + b|u|^{p-1}u + gamma u) + e^{i theta} f.
inline Complex rk4_pointwise(Complex u, Complex f, double t_total, int steps,
                             const glx::PhysicalParams& params) {
  const Complex rot = std::polar(1.0, params.theta);
  const Complex a_rot = params.a * rot, b_rot = params.b * rot,
                g_rot = params.gamma * rot, f_rot = f * rot;
  auto rhs = [&](Complex z) {
    const double rho = std::abs(z);
    Complex out = f_rot - g_rot * z;
    if (rho > 0.0) {
      const Complex dir = z / rho;
      out -= a_rot * std::pow(rho, params.m) * dir;
      out -= b_rot * std::pow(rho, params.p) * dir;
    }
    return out;
  };
  const double h = t_total / steps;
  for (int i = 0; i < steps; ++i) {
    const Complex k1 = rhs(u);
    const Complex k2 = rhs(u + 0.5 * h * k1);
    const Complex k3 = rhs(u + 0.5 * h * k2);
    const Complex k4 = rhs(u + h * k3);
    u += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return u;
}

inline glx::ComplexField random_field(const glx::Grid& grid, std::uint64_t seed,
                                      double scale = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, scale);
  glx::ComplexField u = glx::ComplexField::zeros(grid);
  for (Complex& v : u.values) v = Complex(gauss(rng), gauss(rng));
  return u;
}

}  // namespace oracle
