#pragma once

#include <vector>

#include "herglotz/expr.hpp"
#include "herglotz/ode.hpp"
#include "herglotz/problem.hpp"

namespace herglotz {

// Component layout of a trajectory GridFunction: for each state component k
// the derivatives j = 0..n are contiguous, followed by a single z column.
// Mirrors EvalPoint's x packing and the CSV column order.
struct TrajectoryLayout {
  int n = 1;
  int m = 1;

  std::size_t comps() const { return static_cast<std::size_t>(m) * (n + 1) + 1; }
  std::size_t x_comp(int k, int j) const {
    return static_cast<std::size_t>(k - 1) * (n + 1) + j;
  }
  std::size_t z_comp() const { return static_cast<std::size_t>(m) * (n + 1); }

  static TrajectoryLayout of(const HerglotzProblem& p) { return {p.n, p.m}; }
};

// Fills pt with the trajectory row at a node (t from the grid).
void fill_eval_point_at(const GridFunction& traj, const TrajectoryLayout& lay,
                        std::size_t node, EvalPoint& pt);
EvalPoint eval_point_at(const GridFunction& traj, const TrajectoryLayout& lay,
                        std::size_t node);

// Binds a trajectory's columns to the expression grid evaluator. The time
// column is materialized from the grid; the family parameter is a settable
// scalar (used by invariance checks).
class TrajectoryColumns : public ColumnProvider {
 public:
  TrajectoryColumns(const GridFunction& traj, TrajectoryLayout lay);

  std::span<const double> column(const VarRef& v) const override;
  std::size_t rows() const override { return traj_->nodes(); }
  double param_s() const override { return s_; }
  void set_param(double s) { s_ = s; }

 private:
  const GridFunction* traj_;
  TrajectoryLayout lay_;
  std::vector<double> times_;
  double s_ = 0.0;
};

// Off-node access to a GridFunction by 4-point Lagrange interpolation
// (O(h^4), matching rk4's order). Node times return stored values exactly.
class GridSampler {
 public:
  explicit GridSampler(const GridFunction& f) : f_(&f) {}

  double value(double t, std::size_t comp) const;
  // Writes all components at time t into out (size comps()).
  void row(double t, std::span<double> out) const;

 private:
  const GridFunction* f_;
};

// The grid's node times as a vector (t column for providers and CSV).
std::vector<double> grid_times(const Grid& g);

}  // namespace herglotz
