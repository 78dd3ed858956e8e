#include "herglotz/ode.hpp"

#include <cmath>

#include "herglotz/kernels.hpp"

namespace herglotz {

Grid Grid::uniform(double a, double b, std::size_t nodes) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
    throw InvalidInterval("grid requires finite endpoints with a < b");
  if (nodes < 3) throw GridTooCoarse("grid needs at least 3 nodes");
  return Grid{a, b, nodes};
}

namespace {

bool all_finite(std::span<const double> v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace

GridFunction rk4(const VectorField& F, double t0, std::span<const double> y0,
                 const Grid& grid, Direction dir) {
  const double start = dir == Direction::Forward ? grid.a : grid.b;
  if (std::fabs(t0 - start) > 1e-12 * (1.0 + std::fabs(start)))
    throw InvalidInterval("rk4 initial time does not match the grid endpoint");
  const std::size_t N = grid.nodes;
  const std::size_t d = y0.size();

  GridFunction out(grid, d);
  std::vector<double> y(y0.begin(), y0.end());
  std::vector<double> k1(d), k2(d), k3(d), k4(d), tmp(d);

  const std::size_t first = dir == Direction::Forward ? 0 : N - 1;
  if (!all_finite(y)) throw NonFiniteState("rk4 initial state is non-finite", first);
  out.set_node(first, y);

  for (std::size_t step = 0; step + 1 < N; ++step) {
    const std::size_t i = dir == Direction::Forward ? step : N - 1 - step;
    const std::size_t j = dir == Direction::Forward ? i + 1 : i - 1;
    const double ti = grid.t(i);
    const double dt = grid.t(j) - ti;

    F(ti, y, k1);
    for (std::size_t c = 0; c < d; ++c) tmp[c] = y[c] + 0.5 * dt * k1[c];
    F(ti + 0.5 * dt, tmp, k2);
    for (std::size_t c = 0; c < d; ++c) tmp[c] = y[c] + 0.5 * dt * k2[c];
    F(ti + 0.5 * dt, tmp, k3);
    for (std::size_t c = 0; c < d; ++c) tmp[c] = y[c] + dt * k3[c];
    F(ti + dt, tmp, k4);
    for (std::size_t c = 0; c < d; ++c)
      y[c] += dt / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);

    if (!all_finite(y))
      throw NonFiniteState("rk4 state became non-finite", j);
    out.set_node(j, y);
  }
  return out;
}

double quad(std::span<const double> f, double h, std::size_t from, std::size_t to) {
  if (from > to || to >= f.size()) throw Error("quad: bad node range");
  const std::size_t count = to - from;
  if (count == 0) return 0.0;
  if (count == 1) return 0.5 * h * (f[from] + f[to]);

  // Simpson weight pattern 1,4,2,4,...,4,1 (scaled h/3) over the even-count
  // prefix; an odd count tacks a trapezoid onto the final interval.
  const std::size_t simpson_to = (count % 2 == 0) ? to : to - 1;
  std::vector<double> w(count + 1, 0.0);
  const double c = h / 3.0;
  w[0] = c;
  w[simpson_to - from] = c;
  for (std::size_t i = 1; i + from < simpson_to; ++i) w[i] = (i % 2 == 1) ? 4.0 * c : 2.0 * c;
  if (count % 2 == 1) {
    w[count - 1] += 0.5 * h;
    w[count] += 0.5 * h;
  }
  return kernels::dot(f.data() + from, w.data(), count + 1);
}

double quad(const GridFunction& f, std::size_t from, std::size_t to, std::size_t comp) {
  return quad(f.comp(comp), f.grid().h(), from, to);
}

std::vector<double> cumulative_quad(std::span<const double> f, double h) {
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = quad(f, h, 0, i);
  return out;
}

std::vector<double> fd_derivative_once(std::span<const double> f, double h) {
  const std::size_t N = f.size();
  if (N < 3) throw GridTooCoarse("derivative stencil needs at least 3 nodes");
  std::vector<double> out(N);
  const double inv2h = 1.0 / (2.0 * h);
  // interior: (f[i+1] - f[i-1]) / (2h), vectorized over shifted views
  kernels::axpby(inv2h, f.data() + 2, -inv2h, f.data(), out.data() + 1, N - 2);
  out[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * inv2h;
  out[N - 1] = (3.0 * f[N - 1] - 4.0 * f[N - 2] + f[N - 3]) * inv2h;
  return out;
}

GridFunction fd_derivative(const GridFunction& f, int order) {
  if (order < 1) throw Error("fd_derivative: order must be >= 1");
  if (f.nodes() < 2 * static_cast<std::size_t>(order) + 1)
    throw GridTooCoarse("grid too coarse for the requested derivative order");
  GridFunction out(f.grid(), f.comps());
  const double h = f.grid().h();
  for (std::size_t c = 0; c < f.comps(); ++c) {
    std::vector<double> cur(f.comp(c).begin(), f.comp(c).end());
    for (int k = 0; k < order; ++k) cur = fd_derivative_once(cur, h);
    kernels::copy(cur.data(), out.comp(c).data(), f.nodes());
  }
  return out;
}

}  // namespace herglotz
