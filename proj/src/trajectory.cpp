#include "herglotz/trajectory.hpp"

#include <algorithm>
#include <cmath>

namespace herglotz {

void fill_eval_point_at(const GridFunction& traj, const TrajectoryLayout& lay,
                        std::size_t node, EvalPoint& pt) {
  pt.dim = lay.m;
  pt.order = lay.n;
  pt.x.resize(static_cast<std::size_t>(lay.m) * (lay.n + 1));
  pt.t = traj.grid().t(node);
  pt.z = traj.at(node, lay.z_comp());
  pt.s = 0.0;
  for (int k = 1; k <= lay.m; ++k)
    for (int j = 0; j <= lay.n; ++j) pt.set_x(k, j, traj.at(node, lay.x_comp(k, j)));
}

EvalPoint eval_point_at(const GridFunction& traj, const TrajectoryLayout& lay,
                        std::size_t node) {
  EvalPoint pt;
  fill_eval_point_at(traj, lay, node, pt);
  return pt;
}

TrajectoryColumns::TrajectoryColumns(const GridFunction& traj, TrajectoryLayout lay)
    : traj_(&traj), lay_(lay), times_(grid_times(traj.grid())) {
  if (traj.comps() != lay.comps())
    throw DimensionMismatch("trajectory component count does not match its layout");
}

std::span<const double> TrajectoryColumns::column(const VarRef& v) const {
  switch (v.kind) {
    case VarKind::Time:
      return times_;
    case VarKind::Z:
      return traj_->comp(lay_.z_comp());
    case VarKind::State:
      if (v.index < 1 || v.index > lay_.m || v.order < 0 || v.order > lay_.n)
        throw DimensionMismatch("variable outside the trajectory layout bounds");
      return traj_->comp(lay_.x_comp(v.index, v.order));
    case VarKind::Param:
      break;
  }
  throw Error("internal: parameter column requested from a trajectory");
}

double GridSampler::value(double t, std::size_t comp) const {
  const Grid& g = f_->grid();
  const std::size_t N = g.nodes;
  const double h = g.h();
  const double r = (t - g.a) / h;

  const double nearest = std::nearbyint(r);
  if (nearest >= 0.0 && nearest < static_cast<double>(N) &&
      std::fabs(t - g.t(static_cast<std::size_t>(nearest))) <=
          1e-12 * (1.0 + std::fabs(t)))
    return f_->at(static_cast<std::size_t>(nearest), comp);

  // Lagrange window (4 points when available) clamped to the grid
  const std::size_t win = std::min<std::size_t>(4, N);
  long long i0 = static_cast<long long>(std::floor(r)) - 1;
  i0 = std::clamp<long long>(i0, 0, static_cast<long long>(N - win));
  const std::size_t base = static_cast<std::size_t>(i0);

  double result = 0.0;
  for (std::size_t a = 0; a < win; ++a) {
    double w = 1.0;
    const double ta = g.t(base + a);
    for (std::size_t b = 0; b < win; ++b) {
      if (a == b) continue;
      const double tb = g.t(base + b);
      w *= (t - tb) / (ta - tb);
    }
    result += w * f_->at(base + a, comp);
  }
  return result;
}

void GridSampler::row(double t, std::span<double> out) const {
  for (std::size_t c = 0; c < f_->comps(); ++c) out[c] = value(t, c);
}

std::vector<double> grid_times(const Grid& g) {
  std::vector<double> t(g.nodes);
  for (std::size_t i = 0; i < g.nodes; ++i) t[i] = g.t(i);
  return t;
}

}  // namespace herglotz
