#include "herglotz/multipliers.hpp"

#include <cmath>

#include "herglotz/kernels.hpp"

namespace herglotz {

namespace {

void fill_point_from_row(std::span<const double> row, const TrajectoryLayout& lay,
                         double t, EvalPoint& pt) {
  pt.dim = lay.m;
  pt.order = lay.n;
  pt.x.resize(static_cast<std::size_t>(lay.m) * (lay.n + 1));
  pt.t = t;
  pt.z = row[lay.z_comp()];
  pt.s = 0.0;
  for (int k = 1; k <= lay.m; ++k)
    for (int j = 0; j <= lay.n; ++j) pt.set_x(k, j, row[lay.x_comp(k, j)]);
}

}  // namespace

GridFunction psi_z_quadrature(const HerglotzProblem& p, const GridFunction& traj,
                              PsiZPath path) {
  const ValidationInfo info = validate(p);
  const Grid& g = traj.grid();
  if (path == PsiZPath::Auto && info.classical) return GridFunction(g, 1, 1.0);

  const TrajectoryLayout lay = TrajectoryLayout::of(p);
  const TrajectoryColumns cols(traj, lay);
  const std::vector<double> dz = eval_grid(diff(p.L, VarRef::z()), cols);

  GridFunction out(g, 1);
  const std::size_t N = g.nodes;
  for (std::size_t i = 0; i < N; ++i)
    out.at(i, 0) = std::exp(quad(dz, g.h(), i, N - 1));
  return out;
}

MultiplierSet psi_backward_ode(const HerglotzProblem& p, const GridFunction& traj) {
  const OcpSystem sys = reduce_to_ocp(p);
  const TrajectoryLayout lay = TrajectoryLayout::of(p);
  if (traj.comps() != lay.comps())
    throw DimensionMismatch("trajectory does not match the problem's layout");
  const GridSampler sampler(traj);
  const int n = p.n;
  const int m = p.m;
  const std::size_t dim = static_cast<std::size_t>(n) * m + 1;

  std::vector<double> row(lay.comps());
  EvalPoint pt;
  const VectorField rhs = [&](double t, std::span<const double> y,
                              std::span<double> dy) {
    sampler.row(t, row);
    fill_point_from_row(row, lay, t, pt);
    const double psi_z = y[dim - 1];
    for (int k = 1; k <= m; ++k)
      dy[k - 1] = -psi_z * eval(sys.dx(0, k), pt);
    for (int j = 2; j <= n; ++j)
      for (int k = 1; k <= m; ++k) {
        const std::size_t idx = static_cast<std::size_t>(j - 1) * m + (k - 1);
        dy[idx] = -y[idx - m] - psi_z * eval(sys.dx(j - 1, k), pt);
      }
    dy[dim - 1] = -psi_z * eval(sys.dz(), pt);
  };

  std::vector<double> terminal(dim, 0.0);
  terminal[dim - 1] = 1.0;
  const GridFunction sol = rk4(rhs, traj.grid().b, terminal, traj.grid(), Direction::Backward);

  MultiplierSet mult;
  mult.n = n;
  mult.m = m;
  mult.psi = GridFunction(traj.grid(), static_cast<std::size_t>(n) * m);
  mult.psi_z = GridFunction(traj.grid(), 1);
  for (std::size_t c = 0; c + 1 < dim; ++c)
    kernels::copy(sol.comp(c).data(), mult.psi.comp(c).data(), sol.nodes());
  kernels::copy(sol.comp(dim - 1).data(), mult.psi_z.comp(0).data(), sol.nodes());
  return mult;
}

MultiplierSet psi_closed_form(const HerglotzProblem& p, const GridFunction& traj,
                              const GridFunction& psi_z) {
  const OcpSystem sys = reduce_to_ocp(p);
  const TrajectoryLayout lay = TrajectoryLayout::of(p);
  const TrajectoryColumns cols(traj, lay);
  const Grid& g = traj.grid();
  const std::size_t N = g.nodes;
  const int n = p.n;
  const int m = p.m;
  if (n >= 2 && N < 2 * static_cast<std::size_t>(n - 1) + 1)
    throw GridTooCoarse("grid too coarse for the closed-form multiplier sum");

  MultiplierSet mult;
  mult.n = n;
  mult.m = m;
  mult.psi = GridFunction(g, static_cast<std::size_t>(n) * m);
  mult.psi_z = psi_z;

  std::vector<double> term(N);
  for (int j = 1; j <= n; ++j)
    for (int k = 1; k <= m; ++k) {
      auto acc = mult.psi.comp(mult.psi_comp(j, k));
      for (int i = 0; i <= n - j; ++i) {
        term = eval_grid(sys.dx(i + j, k), cols);
        kernels::mul(term.data(), psi_z.comp(0).data(), term.data(), N);
        for (int d = 0; d < i; ++d) term = fd_derivative_once(term, g.h());
        const double sign = (i % 2 == 0) ? -1.0 : 1.0;
        kernels::axpby(1.0, acc.data(), sign, term.data(), acc.data(), N);
      }
    }
  return mult;
}

HamiltonianValue hamiltonian(const HerglotzProblem& p, const GridFunction& traj,
                             const MultiplierSet& mult, std::size_t node) {
  const TrajectoryLayout lay = TrajectoryLayout::of(p);
  const EvalPoint pt = eval_point_at(traj, lay, node);

  HamiltonianValue out;
  double h = 0.0;
  for (int j = 1; j <= p.n; ++j)
    for (int k = 1; k <= p.m; ++k)
      h += mult.psi.at(node, mult.psi_comp(j, k)) * pt.x_at(k, j);
  const double pz = mult.psi_z.at(node, 0);
  out.H = h + pz * eval(p.L, pt);
  out.partial_t = pz * eval(diff(p.L, VarRef::time()), pt);
  return out;
}

}  // namespace herglotz
