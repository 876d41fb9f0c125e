#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace glx {

// Sampled nonnegative scalar function of time.
struct ScalarTrajectory {
  std::vector<double> times;   // strictly increasing
  std::vector<double> values;  // nonnegative

  // Linear interpolation; t must lie within [times.front(), times.back()].
  double at(double t) const;
};

// Nonnegative right-hand side g(t) for the scalar ODE family. Structured so
// the solver can stop at breakpoints and switch to the separable closed form
// once g is identically zero.
class TimeFunction {
 public:
  static TimeFunction zero();
  static TimeFunction constant(double value);
  // values[i] on [breaks[i], breaks[i+1]); values.back() from breaks.back()
  // on; values.front() before breaks.front().
  static TimeFunction piecewise_constant(std::vector<double> breaks,
                                         std::vector<double> values);
  // coef * (cutoff - t)_+^exponent; identically 0 from the cutoff on.
  static TimeFunction power_schedule(double coef, double cutoff, double exponent);
  static TimeFunction callable(std::function<double(double)> fn,
                               double zero_after);

  double operator()(double t) const;
  // Time from which the function is identically zero (+inf when unknown).
  double zero_after() const { return zero_after_; }
  // Next discontinuity or kink strictly after t (+inf when none).
  double next_breakpoint(double t) const;

  // Integral of |a - b| over [s, t]; exact for piecewise-constant pairs,
  // adaptive Simpson otherwise.
  static double integral_abs_diff(const TimeFunction& a, const TimeFunction& b,
                                  double s, double t);

 private:
  enum class Kind { zero, piecewise, power, callable };
  Kind kind_ = Kind::zero;
  std::vector<double> breaks_, values_;
  double coef_ = 0.0, cutoff_ = 0.0, exponent_ = 0.0;
  std::function<double(double)> fn_;
  double zero_after_ = 0.0;
};

// Solves z' + alpha z^delta = g, z(t0) = z0, z >= 0, sampled every dt_out up
// to t_end. Integration is extinction-aware: on intervals where g vanishes
// identically the separable closed form is used, so hitting 0 is exact and 0
// persists until g reactivates the solution.
ScalarTrajectory solve_comparison(double alpha, double delta,
                                  const TimeFunction& g, double z0, double t0,
                                  double t_end, double dt_out);

// Same solve, sampled at caller-chosen times (strictly increasing,
// times.front() >= t0 serves as the initial time).
ScalarTrajectory solve_comparison_at(double alpha, double delta,
                                     const TimeFunction& g, double z0,
                                     const std::vector<double>& times);

// Both sides of the stability estimate
//   |z1(t) - z2(t)| <= |z1(s) - z2(s)| + int_s^t |g1 - g2|.
std::pair<double, double> stability_gap(const ScalarTrajectory& z1,
                                        const ScalarTrajectory& z2,
                                        const TimeFunction& g1,
                                        const TimeFunction& g2, double s,
                                        double t);

// Comparison principle: solves z with z(t_star) = y(t_star) and checks
// y(t) <= z(t) + tol at every later sample of y.
bool comparison_check(const ScalarTrajectory& y, double alpha, double delta,
                      const TimeFunction& g, double t_star, double tol = 1e-8);

// Young splitting of the forced mass inequality: the smallest g with
//   2 f_l2 sqrt(y) <= g + alpha y^delta for all y >= 0,
// namely ((2 delta - 1)/delta) (alpha delta)^{-1/(2 delta - 1)}
//        f_l2^{2 delta/(2 delta - 1)}. Requires delta in (1/2, 1).
double young_split(double alpha, double delta, double f_l2);

}  // namespace glx
