#include "glx/field.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "glx/error.hpp"

namespace glx {

Grid::Grid(int dim_, double half_width_, int points_per_axis_)
    : dim(dim_), half_width(half_width_), points_per_axis(points_per_axis_) {
  if (dim < 1 || dim > 3) throw Error("Grid: dim must be 1, 2 or 3");
  if (!(half_width > 0.0)) throw Error("Grid: half width must be positive");
  if (points_per_axis < 3) throw Error("Grid: need at least 3 interior points per axis");
}

std::size_t Grid::point_count() const {
  std::size_t count = 1;
  for (int d = 0; d < dim; ++d) count *= static_cast<std::size_t>(points_per_axis);
  return count;
}

double Grid::cell_measure() const {
  double measure = 1.0;
  for (int d = 0; d < dim; ++d) measure *= spacing();
  return measure;
}

ComplexField ComplexField::zeros(const Grid& grid) {
  ComplexField u;
  u.grid = grid;
  u.values.assign(grid.point_count(), Complex(0.0, 0.0));
  return u;
}

std::size_t ComplexField::index(int i, int j, int k) const {
  const std::size_t n = static_cast<std::size_t>(grid.points_per_axis);
  switch (grid.dim) {
    case 1: return static_cast<std::size_t>(i);
    case 2: return static_cast<std::size_t>(i) * n + j;
    default: return (static_cast<std::size_t>(i) * n + j) * n + k;
  }
}

bool ComplexField::all_finite() const {
  for (const Complex& v : values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

double mass_l2(const ComplexField& u) {
  double sum = 0.0;
  for (const Complex& v : u.values) sum += std::norm(v);
  return std::sqrt(u.grid.cell_measure() * sum);
}

double norm_lq(const ComplexField& u, double q) {
  if (!(q >= 1.0)) throw Error("norm_lq: q must be >= 1");
  double sum = 0.0;
  for (const Complex& v : u.values) sum += std::pow(std::abs(v), q);
  return std::pow(u.grid.cell_measure() * sum, 1.0 / q);
}

double inner_real(const ComplexField& u, const ComplexField& v) {
  if (u.grid != v.grid) throw Error("inner_real: grid mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < u.values.size(); ++i)
    sum += u.values[i].real() * v.values[i].real() +
           u.values[i].imag() * v.values[i].imag();
  return u.grid.cell_measure() * sum;
}

namespace {

// Walks all axis-aligned neighbor pairs, passing (center, neighbor-or-0).
// stride(dim d) for row-major: product of n over trailing axes.
std::size_t axis_stride(const Grid& grid, int axis) {
  std::size_t s = 1;
  for (int d = axis + 1; d < grid.dim; ++d)
    s *= static_cast<std::size_t>(grid.points_per_axis);
  return s;
}

}  // namespace

double grad_norm_sq(const ComplexField& u) {
  const Grid& g = u.grid;
  const int n = g.points_per_axis;
  const double h = g.spacing();
  double sum = 0.0;
  for (int axis = 0; axis < g.dim; ++axis) {
    const std::size_t stride = axis_stride(g, axis);
    // Iterate lines along `axis`: n+1 forward differences per line,
    // boundary values are 0 on both ends.
    const std::size_t total = g.point_count();
    const std::size_t block = stride * static_cast<std::size_t>(n);
    for (std::size_t base = 0; base < total; ++base) {
      // `base` enumerates all points; pick only those with axis-index 0 as
      // line starts.
      if ((base % block) / stride != 0) continue;
      Complex prev(0.0, 0.0);
      std::size_t idx = base;
      for (int i = 0; i < n; ++i, idx += stride) {
        sum += std::norm(u.values[idx] - prev);
        prev = u.values[idx];
      }
      sum += std::norm(prev);  // last interior point against the far wall
    }
  }
  return g.cell_measure() * sum / (h * h);
}

ComplexField apply_laplacian(const ComplexField& u) {
  const Grid& g = u.grid;
  const int n = g.points_per_axis;
  const double inv_h2 = 1.0 / (g.spacing() * g.spacing());
  ComplexField out = ComplexField::zeros(g);
  const std::size_t total = g.point_count();
  for (int axis = 0; axis < g.dim; ++axis) {
    const std::size_t stride = axis_stride(g, axis);
    const std::size_t block = stride * static_cast<std::size_t>(n);
    for (std::size_t idx = 0; idx < total; ++idx) {
      const int i = static_cast<int>((idx % block) / stride);
      Complex left = i > 0 ? u.values[idx - stride] : Complex(0.0, 0.0);
      Complex right = i < n - 1 ? u.values[idx + stride] : Complex(0.0, 0.0);
      out.values[idx] += (left - 2.0 * u.values[idx] + right) * inv_h2;
    }
  }
  return out;
}

namespace {

// w - sigma * Lap_h w, fused so Krylov iterations avoid a temporary field.
void apply_helmholtz(const ComplexField& w, Complex sigma, ComplexField& out) {
  out = apply_laplacian(w);
  for (std::size_t i = 0; i < w.values.size(); ++i)
    out.values[i] = w.values[i] - sigma * out.values[i];
}

ComplexField solve_helmholtz_1d(const ComplexField& rhs, Complex sigma) {
  const Grid& g = rhs.grid;
  const int n = g.points_per_axis;
  const double inv_h2 = 1.0 / (g.spacing() * g.spacing());
  const Complex diag = 1.0 + 2.0 * sigma * inv_h2;
  const Complex off = -sigma * inv_h2;

  // Thomas algorithm; the system is strictly diagonally dominant for
  // Re(sigma) >= 0, so no pivoting is needed.
  std::vector<Complex> c(n), d(n);
  Complex denom = diag;
  c[0] = off / denom;
  d[0] = rhs.values[0] / denom;
  for (int i = 1; i < n; ++i) {
    denom = diag - off * c[i - 1];
    c[i] = off / denom;
    d[i] = (rhs.values[i] - off * d[i - 1]) / denom;
  }
  ComplexField w = ComplexField::zeros(g);
  w.values[n - 1] = d[n - 1];
  for (int i = n - 2; i >= 0; --i) w.values[i] = d[i] - c[i] * w.values[i + 1];
  return w;
}

Complex dotc(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  Complex s(0.0, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double norm2(const std::vector<Complex>& a) {
  double s = 0.0;
  for (const Complex& v : a) s += std::norm(v);
  return std::sqrt(s);
}

ComplexField solve_helmholtz_krylov(const ComplexField& rhs, Complex sigma,
                                    double rel_tol, int max_iter) {
  const Grid& g = rhs.grid;
  const double rhs_norm = norm2(rhs.values);
  ComplexField x = ComplexField::zeros(g);
  if (rhs_norm == 0.0) return x;

  // Constant-diagonal Jacobi preconditioner.
  const double inv_h2 = 1.0 / (g.spacing() * g.spacing());
  const Complex diag = 1.0 + 2.0 * static_cast<double>(g.dim) * sigma * inv_h2;
  const Complex pc = 1.0 / diag;

  ComplexField tmp = ComplexField::zeros(g);
  std::vector<Complex> r = rhs.values;
  std::vector<Complex> r0 = r;
  std::vector<Complex> p(r.size(), Complex(0, 0)), v(r.size(), Complex(0, 0));
  std::vector<Complex> s(r.size()), t(r.size()), phat(r.size()), shat(r.size());
  Complex rho_prev(1, 0), alpha(1, 0), omega(1, 0);

  for (int iter = 1; iter <= max_iter; ++iter) {
    const Complex rho = dotc(r0, r);
    if (std::abs(rho) == 0.0) break;  // breakdown; restart would go here
    if (iter == 1) {
      p = r;
    } else {
      const Complex beta = (rho / rho_prev) * (alpha / omega);
      for (std::size_t i = 0; i < p.size(); ++i)
        p[i] = r[i] + beta * (p[i] - omega * v[i]);
    }
    for (std::size_t i = 0; i < p.size(); ++i) phat[i] = pc * p[i];
    tmp.values = phat;
    ComplexField av = ComplexField::zeros(g);
    apply_helmholtz(tmp, sigma, av);
    v = av.values;
    alpha = rho / dotc(r0, v);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = r[i] - alpha * v[i];
    if (norm2(s) <= rel_tol * rhs_norm) {
      for (std::size_t i = 0; i < x.values.size(); ++i)
        x.values[i] += alpha * phat[i];
      return x;
    }
    for (std::size_t i = 0; i < s.size(); ++i) shat[i] = pc * s[i];
    tmp.values = shat;
    ComplexField as = ComplexField::zeros(g);
    apply_helmholtz(tmp, sigma, as);
    t = as.values;
    omega = dotc(t, s) / dotc(t, t);
    for (std::size_t i = 0; i < x.values.size(); ++i)
      x.values[i] += alpha * phat[i] + omega * shat[i];
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = s[i] - omega * t[i];
    const double res = norm2(r);
    if (res <= rel_tol * rhs_norm) return x;
    rho_prev = rho;
  }

  ComplexField check = ComplexField::zeros(g);
  apply_helmholtz(x, sigma, check);
  for (std::size_t i = 0; i < check.values.size(); ++i)
    check.values[i] -= rhs.values[i];
  char msg[160];
  std::snprintf(msg, sizeof msg,
                "solve_helmholtz: no convergence after %d iterations, relative residual %.3e",
                max_iter, norm2(check.values) / rhs_norm);
  throw Error(msg);
}

}  // namespace

ComplexField solve_helmholtz(const ComplexField& rhs, Complex sigma,
                             double rel_tol, int max_iter) {
  if (sigma == Complex(0.0, 0.0)) return rhs;
  if (rhs.grid.dim == 1) return solve_helmholtz_1d(rhs, sigma);
  return solve_helmholtz_krylov(rhs, sigma, rel_tol, max_iter);
}

void save_field(const ComplexField& u, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("save_field: cannot open " + path);
  const std::uint32_t dim = static_cast<std::uint32_t>(u.grid.dim);
  const std::uint32_t n = static_cast<std::uint32_t>(u.grid.points_per_axis);
  const double L = u.grid.half_width;
  out.write(reinterpret_cast<const char*>(&dim), sizeof dim);
  out.write(reinterpret_cast<const char*>(&n), sizeof n);
  out.write(reinterpret_cast<const char*>(&L), sizeof L);
  for (const Complex& v : u.values) {
    const double re = v.real(), im = v.imag();
    out.write(reinterpret_cast<const char*>(&re), sizeof re);
    out.write(reinterpret_cast<const char*>(&im), sizeof im);
  }
  if (!out) throw Error("save_field: write failed for " + path);
}

ComplexField load_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("load_field: cannot open " + path);
  std::uint32_t dim = 0, n = 0;
  double L = 0.0;
  in.read(reinterpret_cast<char*>(&dim), sizeof dim);
  in.read(reinterpret_cast<char*>(&n), sizeof n);
  in.read(reinterpret_cast<char*>(&L), sizeof L);
  if (!in) throw Error("load_field: truncated header in " + path);
  ComplexField u = ComplexField::zeros(Grid(static_cast<int>(dim), L, static_cast<int>(n)));
  for (Complex& v : u.values) {
    double re = 0.0, im = 0.0;
    in.read(reinterpret_cast<char*>(&re), sizeof re);
    in.read(reinterpret_cast<char*>(&im), sizeof im);
    v = Complex(re, im);
  }
  if (!in) throw Error("load_field: truncated data in " + path);
  return u;
}

void save_field_csv(const ComplexField& u, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("save_field_csv: cannot open " + path);
  const int n = u.grid.points_per_axis;
  const int nj = u.grid.dim > 1 ? n : 1;
  const int nk = u.grid.dim > 2 ? n : 1;
  for (int d = 0; d < u.grid.dim; ++d) out << "x" << d << ",";
  out << "re,im\n";
  char buf[64];
  std::size_t idx = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < nj; ++j)
      for (int k = 0; k < nk; ++k, ++idx) {
        const int coords[3] = {i, j, k};
        for (int d = 0; d < u.grid.dim; ++d) {
          std::snprintf(buf, sizeof buf, "%.17g,", u.grid.coordinate(coords[d]));
          out << buf;
        }
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", u.values[idx].real(),
                      u.values[idx].imag());
        out << buf;
      }
}

}  // namespace glx
