#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "herglotz/errors.hpp"

namespace herglotz {

// Uniform time grid. t(0) = a and t(N-1) = b exactly; interior nodes are
// a + i*h with h = (b-a)/(N-1).
struct Grid {
  double a = 0.0;
  double b = 1.0;
  std::size_t nodes = 0;

  static Grid uniform(double a, double b, std::size_t nodes);

  double h() const { return (b - a) / static_cast<double>(nodes - 1); }
  double t(std::size_t i) const {
    return i + 1 == nodes ? b : a + static_cast<double>(i) * h();
  }

  friend bool operator==(const Grid& x, const Grid& y) {
    return x.a == y.a && x.b == y.b && x.nodes == y.nodes;
  }
};

// d real-valued functions sampled on a grid. Storage is column-major: each
// component is contiguous, so components feed straight into the arithmetic
// kernels and eval_grid.
class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(Grid g, std::size_t comps, double init = 0.0)
      : grid_(g), comps_(comps), data_(g.nodes * comps, init) {}

  const Grid& grid() const { return grid_; }
  std::size_t nodes() const { return grid_.nodes; }
  std::size_t comps() const { return comps_; }

  double at(std::size_t node, std::size_t comp) const {
    return data_[comp * grid_.nodes + node];
  }
  double& at(std::size_t node, std::size_t comp) {
    return data_[comp * grid_.nodes + node];
  }

  std::span<const double> comp(std::size_t c) const {
    return {data_.data() + c * grid_.nodes, grid_.nodes};
  }
  std::span<double> comp(std::size_t c) {
    return {data_.data() + c * grid_.nodes, grid_.nodes};
  }

  std::vector<double> node_values(std::size_t node) const {
    std::vector<double> row(comps_);
    for (std::size_t c = 0; c < comps_; ++c) row[c] = at(node, c);
    return row;
  }
  void set_node(std::size_t node, std::span<const double> row) {
    for (std::size_t c = 0; c < comps_; ++c) at(node, c) = row[c];
  }

 private:
  Grid grid_;
  std::size_t comps_ = 0;
  std::vector<double> data_;
};

enum class Direction { Forward, Backward };

// dy/dt = F(t, y); F writes the derivative into its third argument.
using VectorField =
    std::function<void(double t, std::span<const double> y, std::span<double> dy)>;

// Classical fixed-step RK4 on the grid. Forward starts from t0 = grid.a at
// node 0; Backward starts from t0 = grid.b at node N-1 and steps with
// negative h. Throws NonFiniteState naming the first bad node on blow-up.
GridFunction rk4(const VectorField& F, double t0, std::span<const double> y0,
                 const Grid& grid, Direction dir);

// Composite Simpson over nodes [from, to] when the interval count is even;
// otherwise Simpson on all but the last interval plus a trapezoid on it.
// from == to gives 0.
double quad(std::span<const double> f, double h, std::size_t from, std::size_t to);
double quad(const GridFunction& f, std::size_t from, std::size_t to,
            std::size_t comp = 0);

// I[i] = quad(f, 0, i): running integral from the left endpoint.
std::vector<double> cumulative_quad(std::span<const double> f, double h);

// One application of the O(h^2) first-derivative stencil: central differences
// in the interior, one-sided three-point stencils at both ends.
std::vector<double> fd_derivative_once(std::span<const double> f, double h);

// Order-i derivative by i-fold application of the first-derivative stencil,
// component by component. Requires N >= 2i+1.
GridFunction fd_derivative(const GridFunction& f, int order);

}  // namespace herglotz
