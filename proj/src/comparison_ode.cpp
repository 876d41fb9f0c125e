#include "glx/comparison_ode.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "glx/error.hpp"

namespace glx {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double ScalarTrajectory::at(double t) const {
  if (times.empty()) throw Error("ScalarTrajectory::at: empty trajectory");
  if (t < times.front() - 1e-12 || t > times.back() + 1e-12)
    throw Error("ScalarTrajectory::at: time outside sampled range");
  const auto it = std::lower_bound(times.begin(), times.end(), t);
  if (it == times.end()) return values.back();
  const std::size_t j = static_cast<std::size_t>(it - times.begin());
  if (j == 0 || times[j] == t) return values[j];
  const double w = (t - times[j - 1]) / (times[j] - times[j - 1]);
  return (1.0 - w) * values[j - 1] + w * values[j];
}

TimeFunction TimeFunction::zero() {
  TimeFunction f;
  f.kind_ = Kind::zero;
  f.zero_after_ = -kInf;
  return f;
}

TimeFunction TimeFunction::constant(double value) {
  if (value == 0.0) return zero();
  return piecewise_constant({0.0}, {value});
}

TimeFunction TimeFunction::piecewise_constant(std::vector<double> breaks,
                                              std::vector<double> values) {
  if (breaks.size() != values.size() || breaks.empty())
    throw Error("piecewise_constant: need one value per breakpoint");
  if (!std::is_sorted(breaks.begin(), breaks.end()))
    throw Error("piecewise_constant: breakpoints must be sorted");
  for (double v : values)
    if (v < 0.0) throw Error("piecewise_constant: g must be nonnegative");
  TimeFunction f;
  f.kind_ = Kind::piecewise;
  f.breaks_ = std::move(breaks);
  f.values_ = std::move(values);
  f.zero_after_ = kInf;
  // Trailing run of zeros fixes the extinction switch point.
  std::size_t i = f.values_.size();
  while (i > 0 && f.values_[i - 1] == 0.0) --i;
  if (i == 0)
    f.zero_after_ = -kInf;
  else if (i < f.values_.size())
    f.zero_after_ = f.breaks_[i];
  return f;
}

TimeFunction TimeFunction::power_schedule(double coef, double cutoff,
                                          double exponent) {
  if (coef < 0.0) throw Error("power_schedule: g must be nonnegative");
  if (exponent <= 0.0) throw Error("power_schedule: exponent must be positive");
  TimeFunction f;
  f.kind_ = Kind::power;
  f.coef_ = coef;
  f.cutoff_ = cutoff;
  f.exponent_ = exponent;
  f.zero_after_ = coef == 0.0 ? -kInf : cutoff;
  return f;
}

TimeFunction TimeFunction::callable(std::function<double(double)> fn,
                                    double zero_after) {
  TimeFunction f;
  f.kind_ = Kind::callable;
  f.fn_ = std::move(fn);
  f.zero_after_ = zero_after;
  return f;
}

double TimeFunction::operator()(double t) const {
  switch (kind_) {
    case Kind::zero:
      return 0.0;
    case Kind::piecewise: {
      auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
      if (it == breaks_.begin()) return values_.front();
      return values_[static_cast<std::size_t>(it - breaks_.begin()) - 1];
    }
    case Kind::power: {
      const double rem = cutoff_ - t;
      return rem > 0.0 ? coef_ * std::pow(rem, exponent_) : 0.0;
    }
    case Kind::callable:
      if (t >= zero_after_) return 0.0;
      return fn_(t);
  }
  return 0.0;
}

double TimeFunction::next_breakpoint(double t) const {
  switch (kind_) {
    case Kind::piecewise: {
      auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
      return it == breaks_.end() ? kInf : *it;
    }
    case Kind::power:
      return t < cutoff_ ? cutoff_ : kInf;
    default:
      return kInf;
  }
}

namespace {

double simpson(const std::function<double(double)>& f, double a, double b,
               double fa, double fm, double fb, double whole, double tol,
               int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol) {
  if (b <= a) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

// Separable closed form of z' = -alpha z^delta over an interval of length dt.
double unforced_decay(double z, double alpha, double delta, double dt) {
  if (z <= 0.0) return 0.0;
  if (delta == 1.0) return z * std::exp(-alpha * dt);
  const double q = 1.0 - delta;
  const double inner = std::pow(z, q) - alpha * q * dt;
  if (q > 0.0) return inner <= 0.0 ? 0.0 : std::pow(inner, 1.0 / q);
  return std::pow(inner, 1.0 / q);  // q < 0: inner grows, never hits 0
}

// Dormand-Prince style embedded step is overkill here; Cash-Karp 4(5).
constexpr double ck_a[6][5] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {3.0 / 10, -9.0 / 10, 6.0 / 5},
    {-11.0 / 54, 5.0 / 2, -70.0 / 27, 35.0 / 27},
    {1631.0 / 55296, 175.0 / 512, 575.0 / 13824, 44275.0 / 110592, 253.0 / 4096}};
constexpr double ck_c[6] = {0.0, 1.0 / 5, 3.0 / 10, 3.0 / 5, 1.0, 7.0 / 8};
constexpr double ck_b5[6] = {37.0 / 378,  0.0, 250.0 / 621,
                             125.0 / 594, 0.0, 512.0 / 1771};
constexpr double ck_b4[6] = {2825.0 / 27648,  0.0,           18575.0 / 48384,
                             13525.0 / 55296, 277.0 / 14336, 1.0 / 4};

// Advances z from t to t_target with adaptive error control, honoring the
// breakpoints and the g == 0 closed form.
double advance(double z, double& t, double t_target, double alpha, double delta,
               const TimeFunction& g) {
  const double rel_tol = 1e-11, abs_tol = 1e-13;
  auto rhs = [&](double time, double zz) {
    return g(time) - alpha * std::pow(std::max(zz, 0.0), delta);
  };
  while (t < t_target) {
    if (t >= g.zero_after()) {
      z = unforced_decay(z, alpha, delta, t_target - t);
      t = t_target;
      return z;
    }
    double segment_end = std::min(t_target, g.next_breakpoint(t));
    if (segment_end <= t) segment_end = t_target;
    double h = segment_end - t;
    while (t < segment_end) {
      // Swallow endpoint dust left by t += h rounding.
      if (segment_end - t <= 1e-13 * std::max(1.0, std::abs(segment_end))) {
        t = segment_end;
        break;
      }
      if (h > segment_end - t) h = segment_end - t;
      if (h < 1e-15 * std::max(1.0, std::abs(segment_end))) {
        char msg[128];
        std::snprintf(msg, sizeof msg,
                      "solve_comparison: step size underflow at t=%.9g (z=%.3e)", t, z);
        throw Error(msg);
      }
      double k[6];
      k[0] = rhs(t, z);
      for (int s = 1; s < 6; ++s) {
        double zs = z;
        for (int j = 0; j < s; ++j) zs += h * ck_a[s][j] * k[j];
        k[s] = rhs(t + ck_c[s] * h, zs);
      }
      double z5 = z, z4 = z;
      for (int s = 0; s < 6; ++s) {
        z5 += h * ck_b5[s] * k[s];
        z4 += h * ck_b4[s] * k[s];
      }
      const double err = std::abs(z5 - z4);
      const double tol = abs_tol + rel_tol * std::max(std::abs(z), std::abs(z5));
      if (err <= tol) {
        t += h;
        z = std::max(z5, 0.0);
      }
      const double grow = err > 0.0 ? 0.9 * std::pow(tol / err, 0.2) : 5.0;
      h *= std::min(5.0, std::max(0.2, grow));
    }
  }
  return z;
}

}  // namespace

ScalarTrajectory solve_comparison_at(double alpha, double delta,
                                     const TimeFunction& g, double z0,
                                     const std::vector<double>& times) {
  if (!(alpha > 0.0)) throw Error("solve_comparison: alpha must be positive");
  if (!(delta > 0.0)) throw Error("solve_comparison: delta must be positive");
  if (z0 < 0.0) throw Error("solve_comparison: z0 must be nonnegative");
  if (times.empty()) throw Error("solve_comparison: no sample times");
  if (!std::is_sorted(times.begin(), times.end()))
    throw Error("solve_comparison: sample times must increase");

  ScalarTrajectory out;
  out.times = times;
  out.values.reserve(times.size());
  double z = z0;
  double t = times.front();
  out.values.push_back(z);
  for (std::size_t i = 1; i < times.size(); ++i) {
    z = advance(z, t, times[i], alpha, delta, g);
    out.values.push_back(z);
  }
  return out;
}

ScalarTrajectory solve_comparison(double alpha, double delta,
                                  const TimeFunction& g, double z0, double t0,
                                  double t_end, double dt_out) {
  if (!(dt_out > 0.0)) throw Error("solve_comparison: dt_out must be positive");
  if (!(t_end > t0)) throw Error("solve_comparison: empty time range");
  std::vector<double> times;
  const long long n = static_cast<long long>(std::ceil((t_end - t0) / dt_out - 1e-12));
  times.reserve(static_cast<std::size_t>(n) + 1);
  for (long long i = 0; i < n; ++i) times.push_back(t0 + i * dt_out);
  times.push_back(t_end);
  return solve_comparison_at(alpha, delta, g, z0, times);
}

double TimeFunction::integral_abs_diff(const TimeFunction& a,
                                       const TimeFunction& b, double s,
                                       double t) {
  if (t <= s) return 0.0;
  if (a.kind_ == Kind::piecewise || a.kind_ == Kind::zero) {
    if (b.kind_ == Kind::piecewise || b.kind_ == Kind::zero) {
      // Exact: merge breakpoints, both sides constant in between.
      std::vector<double> cuts{s, t};
      for (const TimeFunction* f : {&a, &b})
        for (double c : f->breaks_)
          if (c > s && c < t) cuts.push_back(c);
      std::sort(cuts.begin(), cuts.end());
      double total = 0.0;
      for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
        total += std::abs(a(mid) - b(mid)) * (cuts[i + 1] - cuts[i]);
      }
      return total;
    }
  }
  auto integrand = [&](double x) { return std::abs(a(x) - b(x)); };
  // Split at breakpoints so Simpson only sees smooth pieces.
  std::vector<double> cuts{s, t};
  for (const TimeFunction* f : {&a, &b}) {
    double c = s;
    while ((c = f->next_breakpoint(c)) < t) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    total += adaptive_simpson(integrand, cuts[i], cuts[i + 1], 1e-13);
  return total;
}

std::pair<double, double> stability_gap(const ScalarTrajectory& z1,
                                        const ScalarTrajectory& z2,
                                        const TimeFunction& g1,
                                        const TimeFunction& g2, double s,
                                        double t) {
  if (t < s) throw Error("stability_gap: t must not precede s");
  const double lhs = std::abs(z1.at(t) - z2.at(t));
  const double rhs =
      std::abs(z1.at(s) - z2.at(s)) + TimeFunction::integral_abs_diff(g1, g2, s, t);
  return {lhs, rhs};
}

bool comparison_check(const ScalarTrajectory& y, double alpha, double delta,
                      const TimeFunction& g, double t_star, double tol) {
  if (y.times.empty()) throw Error("comparison_check: empty trajectory");
  std::vector<double> times;
  times.push_back(t_star);
  for (std::size_t i = 0; i < y.times.size(); ++i)
    if (y.times[i] > t_star) times.push_back(y.times[i]);
  if (times.size() < 2) return true;  // nothing after t_star
  const ScalarTrajectory z =
      solve_comparison_at(alpha, delta, g, y.at(t_star), times);
  for (std::size_t i = 1; i < times.size(); ++i)
    if (y.at(times[i]) > z.values[i] + tol) return false;
  return true;
}

double young_split(double alpha, double delta, double f_l2) {
  if (!(delta > 0.5 && delta < 1.0))
    throw Error("young_split: delta must lie in (1/2, 1)");
  if (!(alpha > 0.0)) throw Error("young_split: alpha must be positive");
  if (f_l2 < 0.0) throw Error("young_split: the norm must be nonnegative");
  if (f_l2 == 0.0) return 0.0;
  const double w = 2.0 * delta - 1.0;
  return (w / delta) * std::pow(alpha * delta, -1.0 / w) *
         std::pow(f_l2, 2.0 * delta / w);
}

}  // namespace glx
