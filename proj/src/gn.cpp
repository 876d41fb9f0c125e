#include "glx/gn.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "glx/error.hpp"

namespace glx {

double gn_ratio(const ComplexField& u, double m) {
  const double n = static_cast<double>(u.grid.dim);
  const double s = ((n + 2.0) - m * (n - 2.0)) / 2.0;
  const double mass = mass_l2(u);
  if (mass == 0.0) throw Error("gn_ratio: zero field");
  const double lm1 = norm_lq(u, m + 1.0);
  const double grad = std::sqrt(grad_norm_sq(u));
  const double denom =
      std::pow(lm1, m + 1.0) * std::pow(grad, n * (1.0 - m) / 2.0);
  return std::pow(mass, s) / denom;
}

namespace {

// splitmix64; decorrelates the per-probe streams from a single seed.
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

ComplexField probe_field(const Grid& grid, int index, std::uint64_t seed,
                         std::string& descriptor) {
  const double L = grid.half_width;
  const double h = grid.spacing();
  const int variant = index % 5;
  const int level = index / 5;
  // Widths sweep a log range between a few cells and the box size.
  const double w_lo = 2.0 * h, w_hi = 0.45 * L;
  const double frac = (level % 7) / 6.0;
  const double width = w_lo * std::pow(w_hi / w_lo, frac);
  char buf[96];

  switch (variant) {
    case 0: {
      std::snprintf(buf, sizeof buf, "gaussian(width=%.6g)", width);
      descriptor = buf;
      return ComplexField::from_function(grid, [&](const double* x) {
        double r2 = 0.0;
        for (int d = 0; d < grid.dim; ++d) r2 += x[d] * x[d];
        return Complex(std::exp(-0.5 * r2 / (width * width)), 0.0);
      });
    }
    case 1: {
      const double radius = std::min(0.9 * L, 3.0 * width);
      std::snprintf(buf, sizeof buf, "bump(radius=%.6g)", radius);
      descriptor = buf;
      return ComplexField::from_function(grid, [&](const double* x) {
        double r2 = 0.0;
        for (int d = 0; d < grid.dim; ++d) r2 += x[d] * x[d];
        r2 /= radius * radius;
        return Complex(r2 < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - r2)) : 0.0, 0.0);
      });
    }
    case 2: {
      // Flat top with a smooth shoulder; probes the plateau shapes the
      // saturated damping produces near extinction.
      const double radius = std::min(0.8 * L, 4.0 * width);
      const double shoulder = std::max(2.0 * h, 0.25 * radius);
      std::snprintf(buf, sizeof buf, "flattop(radius=%.6g,shoulder=%.6g)",
                    radius, shoulder);
      descriptor = buf;
      return ComplexField::from_function(grid, [&](const double* x) {
        double r2 = 0.0;
        for (int d = 0; d < grid.dim; ++d) r2 += x[d] * x[d];
        const double r = std::sqrt(r2);
        return Complex(0.5 * (1.0 + std::tanh((radius - r) / shoulder)), 0.0);
      });
    }
    case 3: {
      std::mt19937_64 rng(mix(seed ^ (0xabcdull + index)));
      std::uniform_int_distribution<int> mode(1, 4);
      std::uniform_real_distribution<double> coef(-1.0, 1.0);
      const int k1 = mode(rng), k2 = mode(rng);
      const double c = coef(rng);
      std::snprintf(buf, sizeof buf, "sine_mix(k1=%d,k2=%d,c=%.4f)", k1, k2, c);
      descriptor = buf;
      return ComplexField::from_function(grid, [&](const double* x) {
        double v = 1.0;
        for (int d = 0; d < grid.dim; ++d) {
          const double xi = (x[d] + L) / (2.0 * L);  // in (0,1)
          const double pi = 3.14159265358979323846;
          v *= std::sin(k1 * pi * xi) + c * std::sin(k2 * pi * xi);
        }
        return Complex(v, 0.0);
      });
    }
    default: {
      // Random smooth field: low sine modes with 1/k^2 decay per axis.
      std::mt19937_64 rng(mix(seed ^ (0x5eedull + index)));
      std::normal_distribution<double> gauss(0.0, 1.0);
      const int kmax = 6;
      std::vector<double> coefs;
      for (int d = 0; d < grid.dim; ++d)
        for (int k = 1; k <= kmax; ++k) coefs.push_back(gauss(rng) / (k * k));
      std::snprintf(buf, sizeof buf, "random_smooth(index=%d)", index);
      descriptor = buf;
      return ComplexField::from_function(grid, [&](const double* x) {
        const double pi = 3.14159265358979323846;
        double v = 1.0;
        for (int d = 0; d < grid.dim; ++d) {
          const double xi = (x[d] + L) / (2.0 * L);
          double axis = 0.0;
          for (int k = 1; k <= kmax; ++k)
            axis += coefs[static_cast<std::size_t>(d * kmax + k - 1)] *
                    std::sin(k * pi * xi);
          v *= axis;
        }
        return Complex(v, 0.0);
      });
    }
  }
}

}  // namespace

GnEstimate estimate_cgn(double m, const Grid& grid, int family_size,
                        std::uint64_t seed) {
  if (!(m >= 0.0 && m < 1.0)) throw Error("estimate_cgn: requires m in [0, 1)");
  if (family_size < 1) throw Error("estimate_cgn: empty probe family");

  GnEstimate best;
  best.m = m;
  best.dim = grid.dim;
  best.family_size = family_size;
  for (int i = 0; i < family_size; ++i) {
    std::string descriptor;
    ComplexField u = probe_field(grid, i, seed, descriptor);
    if (mass_l2(u) == 0.0) continue;  // degenerate probe on a coarse grid
    const double ratio = gn_ratio(u, m);
    if (ratio > best.c_gn) {
      best.c_gn = ratio;
      best.worst_field_descriptor = descriptor;
      best.worst_field = std::move(u);
    }
  }
  if (best.c_gn <= 0.0) throw Error("estimate_cgn: every probe degenerated");
  return best;
}

std::pair<double, bool> check_gn(const ComplexField& u, double m, double c_gn) {
  if (!(c_gn > 0.0)) throw Error("check_gn: c_gn must be positive");
  const double mass = mass_l2(u);
  if (mass == 0.0) throw Error("check_gn: zero field");
  const double n = static_cast<double>(u.grid.dim);
  const double delta = ((n + 2.0) - m * (n - 2.0)) / (n * (1.0 - m) + 4.0);
  const double lhs = std::pow(mass, 2.0 * delta);
  const double rhs = std::pow(c_gn, 4.0 / (n * (1.0 - m) + 4.0)) *
                     (grad_norm_sq(u) + std::pow(norm_lq(u, m + 1.0), m + 1.0));
  return {gn_ratio(u, m) / c_gn, lhs <= rhs};
}

}  // namespace glx
