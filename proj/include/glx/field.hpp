#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "glx/params.hpp"

namespace glx {

// Uniform interior grid on the box (-L, L)^dim with homogeneous Dirichlet
// walls. Only interior points are stored; the boundary is implicitly 0.
struct Grid {
  int dim = 1;               // 1, 2 or 3
  double half_width = 1.0;   // L
  int points_per_axis = 3;   // interior points per axis, >= 3

  Grid() = default;
  Grid(int dim_, double half_width_, int points_per_axis_);

  double spacing() const { return 2.0 * half_width / (points_per_axis + 1); }
  std::size_t point_count() const;
  // Coordinate of interior index i on one axis, i in [0, points_per_axis).
  double coordinate(int i) const { return -half_width + (i + 1) * spacing(); }
  double cell_measure() const;  // h^dim

  bool operator==(const Grid&) const = default;
};

struct ComplexField {
  Grid grid;
  std::vector<Complex> values;  // row-major over interior points

  static ComplexField zeros(const Grid& grid);
  // Fills from a pointwise function of the coordinates (only the first
  // grid.dim entries of the coordinate array are meaningful).
  template <typename F>
  static ComplexField from_function(const Grid& grid, F&& f);

  std::size_t index(int i, int j = 0, int k = 0) const;
  bool all_finite() const;
};

// Discrete L2 norm, (h^dim sum |u_i|^2)^{1/2}.
double mass_l2(const ComplexField& u);

// Discrete Lq norm, (h^dim sum |u_i|^q)^{1/q}, q >= 1.
double norm_lq(const ComplexField& u, double q);

// Squared H1_0 seminorm by forward differences including the boundary cells,
// h^dim sum_axes sum |(u_{i+1}-u_i)/h|^2 with zero padding. This pairing
// makes -<Lap_h u, u> equal grad_norm_sq(u) exactly.
double grad_norm_sq(const ComplexField& u);

// Real L2 inner product h^dim sum Re(u_i conj(v_i)).
double inner_real(const ComplexField& u, const ComplexField& v);

// Standard (2*dim+1)-point Laplacian stencil with Dirichlet closure.
ComplexField apply_laplacian(const ComplexField& u);

// Solves (I - sigma Lap_h) w = rhs. Direct tridiagonal solve in 1D;
// BiCGStab with diagonal preconditioning in 2D/3D. The contract is the
// residual: ||(I - sigma Lap_h) w - rhs|| <= rel_tol * ||rhs||.
ComplexField solve_helmholtz(const ComplexField& rhs, Complex sigma,
                             double rel_tol = 1e-10, int max_iter = 10000);

// Flat binary snapshot: uint32 dim, uint32 points_per_axis, float64 L,
// then interleaved re/im float64 per point, all little-endian.
void save_field(const ComplexField& u, const std::string& path);
ComplexField load_field(const std::string& path);
// CSV with one row per point (coordinates, re, im); meant for small grids.
void save_field_csv(const ComplexField& u, const std::string& path);

template <typename F>
ComplexField ComplexField::from_function(const Grid& grid, F&& f) {
  ComplexField u = zeros(grid);
  const int n = grid.points_per_axis;
  double x[3] = {0.0, 0.0, 0.0};
  std::size_t idx = 0;
  const int nj = grid.dim > 1 ? n : 1;
  const int nk = grid.dim > 2 ? n : 1;
  for (int i = 0; i < n; ++i) {
    x[0] = grid.coordinate(i);
    for (int j = 0; j < nj; ++j) {
      if (grid.dim > 1) x[1] = grid.coordinate(j);
      for (int k = 0; k < nk; ++k) {
        if (grid.dim > 2) x[2] = grid.coordinate(k);
        u.values[idx++] = f(x);
      }
    }
  }
  return u;
}

}  // namespace glx
