#pragma once

// Analytic fixtures shared across test files.
//
// The damped-oscillator problem L = x1'^2/2 - x1^2/2 - z with x(0) = 1 on
// [0,1] has extremals satisfying x'' + x' + x = 0 with the natural boundary
// condition x'(1) = 0. The closed-form solution of that linear BVP is
//   x(t) = e^{-t/2} (cos wt + B sin wt),   w = sqrt(3)/2,
//   B = (w sin w + cos(w)/2) / (w cos w - sin(w)/2),
// and the multipliers are psi_z(t) = e^{t-1}, psi_1(t) = -psi_z(t) x'(t).

#include <cmath>
#include <functional>

#include "herglotz/ode.hpp"
#include "herglotz/problem.hpp"
#include "herglotz/trajectory.hpp"

namespace fixtures {

inline herglotz::HerglotzProblem oscillator_problem() {
  herglotz::HerglotzProblem p;
  p.n = 1;
  p.m = 1;
  p.a = 0.0;
  p.b = 1.0;
  p.L = herglotz::parse("x1'^2/2 - x1^2/2 - z", herglotz::ParseBounds{1, 1, false});
  p.alpha = {{1.0}};
  p.gamma = 0.0;
  return p;
}

inline double osc_w() { return std::sqrt(3.0) / 2.0; }

inline double osc_B() {
  const double w = osc_w();
  return (w * std::sin(w) + 0.5 * std::cos(w)) / (w * std::cos(w) - 0.5 * std::sin(w));
}

inline double osc_x(double t) {
  const double w = osc_w();
  return std::exp(-t / 2) * (std::cos(w * t) + osc_B() * std::sin(w * t));
}

inline double osc_xp(double t) {
  const double w = osc_w();
  const double B = osc_B();
  return std::exp(-t / 2) *
         ((B * w - 0.5) * std::cos(w * t) - (w + 0.5 * B) * std::sin(w * t));
}

// Trajectory whose x columns come from an analytic family and whose z column
// is integrated from z' = L along it (rk4), starting at gamma.
inline herglotz::GridFunction analytic_trajectory(
    const herglotz::HerglotzProblem& p, const herglotz::Grid& g,
    const std::function<double(double, int)>& x_deriv) {
  using namespace herglotz;
  const TrajectoryLayout lay = TrajectoryLayout::of(p);
  GridFunction traj(g, lay.comps());
  for (std::size_t i = 0; i < g.nodes; ++i)
    for (int k = 1; k <= p.m; ++k)
      for (int j = 0; j <= p.n; ++j) traj.at(i, lay.x_comp(k, j)) = x_deriv(g.t(i), j);

  EvalPoint pt(p.m, p.n);
  const VectorField zdot = [&](double t, std::span<const double> y,
                               std::span<double> dy) {
    pt.t = t;
    pt.z = y[0];
    for (int j = 0; j <= p.n; ++j) pt.set_x(1, j, x_deriv(t, j));
    dy[0] = eval(p.L, pt);
  };
  const double z0[] = {p.gamma};
  const GridFunction z = rk4(zdot, p.a, z0, g, Direction::Forward);
  for (std::size_t i = 0; i < g.nodes; ++i) traj.at(i, lay.z_comp()) = z.at(i, 0);
  return traj;
}

inline herglotz::GridFunction oscillator_extremal(const herglotz::Grid& g) {
  return analytic_trajectory(oscillator_problem(), g, [](double t, int j) {
    return j == 0 ? osc_x(t) : osc_xp(t);
  });
}

}  // namespace fixtures
