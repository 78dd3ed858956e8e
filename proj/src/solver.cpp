#include "herglotz/solver.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "herglotz/linalg.hpp"

namespace herglotz {

namespace {

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

// In-place damped Newton for psi_n + psi_z dL/du = 0; u starts at the guess.
void control_newton(const OcpSystem& sys, double t, std::span<const double> X,
                    std::span<const double> psi_n, double psi_z,
                    std::vector<double>& u) {
  const int m = sys.control_dim();
  const int n = sys.problem().n;
  thread_local EvalPoint pt;
  std::vector<double> r(m), r_trial(m), u_trial(m), J(static_cast<std::size_t>(m) * m),
      step(m);

  const double scale = 1.0 + max_abs(psi_n) + std::fabs(psi_z);
  const double tol = 1e-12 * scale;

  const auto residual_into = [&](const std::vector<double>& uu,
                                 std::vector<double>& rr) {
    sys.fill_eval_point(t, X, uu, pt);
    double mx = 0.0;
    for (int k = 1; k <= m; ++k) {
      rr[k - 1] = psi_n[k - 1] + psi_z * eval(sys.dx(n, k), pt);
      mx = std::max(mx, std::fabs(rr[k - 1]));
    }
    return mx;
  };

  double rn = residual_into(u, r);
  for (int it = 0; it < 60; ++it) {
    if (rn <= tol) return;
    sys.fill_eval_point(t, X, u, pt);
    for (int k = 1; k <= m; ++k)
      for (int l = 1; l <= m; ++l)
        J[static_cast<std::size_t>(k - 1) * m + (l - 1)] = psi_z * eval(sys.huu(k, l), pt);
    for (int k = 0; k < m; ++k) step[k] = -r[k];
    if (!linalg::lu_solve(J, step, m))
      throw SingularControl(
          "control Hessian is singular: Lagrangians affine in the highest "
          "derivative are unsupported");
    double lam = 1.0;
    bool accepted = false;
    for (int d = 0; d < 20; ++d) {
      for (int k = 0; k < m; ++k) u_trial[k] = u[k] + lam * step[k];
      const double rt = residual_into(u_trial, r_trial);
      if (rt < rn) {
        u.swap(u_trial);
        r.swap(r_trial);
        rn = rt;
        accepted = true;
        break;
      }
      lam *= 0.5;
    }
    if (!accepted) throw NoConvergence("control extraction stalled");
  }
  throw NoConvergence("control extraction did not reach tolerance");
}

// Integrates the coupled state-costate system forward. Y packs the OCP state
// (n*m + 1) followed by the costates (psi_1..psi_n, psi_z).
class CoupledSystem {
 public:
  CoupledSystem(const OcpSystem& sys, const Grid& grid) : sys_(sys), grid_(grid) {}

  GridFunction integrate(std::span<const double> v) const {
    const HerglotzProblem& p = sys_.problem();
    const int n = p.n;
    const int m = p.m;
    const std::size_t sd = static_cast<std::size_t>(n) * m + 1;

    std::vector<double> y0(2 * sd);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < m; ++k) y0[static_cast<std::size_t>(j) * m + k] = p.alpha[j][k];
    y0[sd - 1] = p.gamma;
    for (std::size_t i = 0; i < sd; ++i) y0[sd + i] = v[i];

    std::vector<double> u(m, 0.0);
    EvalPoint pt;
    const VectorField F = [&](double t, std::span<const double> y,
                              std::span<double> dy) {
      const auto X = y.first(sd);
      const auto psi = y.subspan(sd);
      const double psi_z = psi[sd - 1];
      control_newton(sys_, t, X, psi.subspan(static_cast<std::size_t>(n - 1) * m, m),
                     psi_z, u);
      sys_.rhs(t, X, u, dy.first(sd));

      sys_.fill_eval_point(t, X, u, pt);
      auto dpsi = dy.subspan(sd);
      for (int k = 1; k <= m; ++k) dpsi[k - 1] = -psi_z * eval(sys_.dx(0, k), pt);
      for (int j = 2; j <= n; ++j)
        for (int k = 1; k <= m; ++k) {
          const std::size_t idx = static_cast<std::size_t>(j - 1) * m + (k - 1);
          dpsi[idx] = -psi[idx - m] - psi_z * eval(sys_.dx(j - 1, k), pt);
        }
      dpsi[sd - 1] = -psi_z * eval(sys_.dz(), pt);
    };
    return rk4(F, grid_.a, y0, grid_, Direction::Forward);
  }

  // (psi_1(b)..psi_n(b), psi_z(b) - 1)
  std::vector<double> residual(const GridFunction& sol) const {
    const std::size_t sd = static_cast<std::size_t>(sys_.problem().n) * sys_.problem().m + 1;
    const std::size_t last = sol.nodes() - 1;
    std::vector<double> r(sd);
    for (std::size_t i = 0; i < sd; ++i) r[i] = sol.at(last, sd + i);
    r[sd - 1] -= 1.0;
    return r;
  }

  std::vector<double> residual_at(std::span<const double> v) const {
    return residual(integrate(v));
  }

 private:
  const OcpSystem& sys_;
  const Grid& grid_;
};

}  // namespace

std::vector<double> control_from_costate(const OcpSystem& sys, double t,
                                         std::span<const double> X,
                                         std::span<const double> psi_n, double psi_z,
                                         std::span<const double> u_guess) {
  std::vector<double> u(u_guess.begin(), u_guess.end());
  control_newton(sys, t, X, psi_n, psi_z, u);
  return u;
}

Extremal shoot(const HerglotzProblem& p, const ShootingConfig& cfg) {
  const ValidationInfo info = validate(p);
  if (info.singular_control)
    throw SingularControl(
        "the Lagrangian is affine in the highest derivative; the optimality "
        "condition cannot be solved for the control");
  const OcpSystem sys(p);
  const CoupledSystem coupled(sys, cfg.grid);
  const int n = p.n;
  const int m = p.m;
  const std::size_t sd = static_cast<std::size_t>(n) * m + 1;

  std::vector<double> best_v;
  double best_norm = std::numeric_limits<double>::infinity();
  int best_iters = 0;
  bool best_converged = false;
  std::string last_failure = "every shooting start failed";

  for (int start = 0; start < cfg.multistart && !best_converged; ++start) {
    std::vector<double> v(sd, 0.0);
    v[sd - 1] = 1.0;  // psi_z(a) guess
    if (start > 0) {
      std::mt19937_64 gen(cfg.seed + static_cast<std::uint64_t>(start));
      std::normal_distribution<double> gauss(0.0, 1.0);
      for (std::size_t i = 0; i + 1 < sd; ++i) v[i] = gauss(gen);
    }

    try {
      std::vector<double> r = coupled.residual_at(v);
      double norm = max_abs(r);
      int iters = 0;
      const auto record = [&] {
        if (norm < best_norm) {
          best_norm = norm;
          best_v = v;
          best_iters = iters;
          best_converged = norm <= cfg.tol;
        }
      };
      record();

      while (iters < cfg.max_iter && norm > cfg.tol) {
        // finite-difference Jacobian, forward differences
        std::vector<double> J(sd * sd);
        for (std::size_t col = 0; col < sd; ++col) {
          std::vector<double> vp = v;
          const double step = cfg.fd_eps * (1.0 + std::fabs(v[col]));
          vp[col] += step;
          const std::vector<double> rp = coupled.residual_at(vp);
          for (std::size_t row = 0; row < sd; ++row)
            J[row * sd + col] = (rp[row] - r[row]) / step;
        }
        std::vector<double> delta(r);
        for (double& x : delta) x = -x;
        if (!linalg::lu_solve(J, delta, sd)) {
          last_failure = "singular shooting Jacobian";
          break;
        }

        double lam = 1.0;
        bool accepted = false;
        for (int d = 0; d < 20; ++d) {
          std::vector<double> vt = v;
          for (std::size_t i = 0; i < sd; ++i) vt[i] += lam * delta[i];
          try {
            std::vector<double> rt = coupled.residual_at(vt);
            const double nt = max_abs(rt);
            if (nt < norm) {
              v = std::move(vt);
              r = std::move(rt);
              norm = nt;
              accepted = true;
              break;
            }
          } catch (const Error&) {
            // trial state blew up or lost the control root: damp harder
          }
          lam *= 0.5;
        }
        if (!accepted) {
          last_failure = "Newton stagnated";
          break;
        }
        ++iters;
        record();
      }
    } catch (const Error& e) {
      last_failure = e.what();
      continue;
    }
  }

  if (best_v.empty()) throw NoConvergence(last_failure);

  // assemble the winner
  const GridFunction sol = coupled.integrate(best_v);
  const TrajectoryLayout lay = TrajectoryLayout::of(p);
  const std::size_t N = cfg.grid.nodes;

  Extremal out;
  out.traj = GridFunction(cfg.grid, lay.comps());
  for (int k = 1; k <= m; ++k)
    for (int j = 0; j < n; ++j)
      std::ranges::copy(sol.comp(static_cast<std::size_t>(j) * m + (k - 1)),
                        out.traj.comp(lay.x_comp(k, j)).begin());
  std::ranges::copy(sol.comp(sd - 1), out.traj.comp(lay.z_comp()).begin());

  // highest derivative column: re-extract the control at every node
  {
    std::vector<double> u(m, 0.0);
    std::vector<double> X(sd), psi_n(m);
    for (std::size_t i = 0; i < N; ++i) {
      for (std::size_t c = 0; c < sd; ++c) X[c] = sol.at(i, c);
      for (int k = 0; k < m; ++k)
        psi_n[k] = sol.at(i, sd + static_cast<std::size_t>(n - 1) * m + k);
      const double psi_z = sol.at(i, 2 * sd - 1);
      control_newton(sys, cfg.grid.t(i), X, psi_n, psi_z, u);
      for (int k = 1; k <= m; ++k) out.traj.at(i, lay.x_comp(k, n)) = u[k - 1];
    }
  }

  out.mult.n = n;
  out.mult.m = m;
  out.mult.psi = GridFunction(cfg.grid, static_cast<std::size_t>(n) * m);
  out.mult.psi_z = GridFunction(cfg.grid, 1);
  for (std::size_t c = 0; c + 1 < sd; ++c)
    std::ranges::copy(sol.comp(sd + c), out.mult.psi.comp(c).begin());
  std::ranges::copy(sol.comp(2 * sd - 1), out.mult.psi_z.comp(0).begin());

  out.converged = best_converged;
  out.residual_norm = best_norm;
  out.z_b = out.traj.at(N - 1, lay.z_comp());
  out.iterations = best_iters;
  return out;
}

// --- direct transcription oracle --------------------------------------------

namespace {

struct NelderMeadResult {
  std::vector<double> x;
  double f = std::numeric_limits<double>::infinity();
  int evals = 0;
  bool converged = false;
};

// Standard Nelder-Mead with global-best tracking; the first vertex of the
// initial simplex is x0 itself, so the result can never be worse than x0.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<double>& x0, double step,
                             std::mt19937_64* jitter, int max_evals) {
  const std::size_t P = x0.size();
  NelderMeadResult res;
  res.x = x0;

  std::vector<std::vector<double>> xs(P + 1, x0);
  std::vector<double> fs(P + 1);
  std::normal_distribution<double> gauss(0.0, step / 10.0);
  for (std::size_t i = 1; i <= P; ++i) {
    xs[i][i - 1] += step;
    if (jitter)
      for (std::size_t j = 0; j < P; ++j) xs[i][j] += gauss(*jitter);
  }
  for (std::size_t i = 0; i <= P; ++i) {
    fs[i] = f(xs[i]);
    ++res.evals;
  }

  std::vector<std::size_t> order(P + 1);
  const auto sort_order = [&] {
    for (std::size_t i = 0; i <= P; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
  };
  const auto track = [&](const std::vector<double>& x, double fx) {
    if (fx < res.f) {
      res.f = fx;
      res.x = x;
    }
  };
  for (std::size_t i = 0; i <= P; ++i) track(xs[i], fs[i]);

  std::vector<double> centroid(P), xr(P), xe(P), xc(P);
  while (res.evals < max_evals) {
    sort_order();
    const std::size_t lo = order[0], hi = order[P], second_hi = order[P - 1];
    if (std::fabs(fs[hi] - fs[lo]) <= 1e-10 * (1.0 + std::fabs(fs[lo]))) {
      res.converged = true;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= P; ++i) {
      if (i == hi) continue;
      for (std::size_t j = 0; j < P; ++j) centroid[j] += xs[i][j];
    }
    for (double& c : centroid) c /= static_cast<double>(P);

    for (std::size_t j = 0; j < P; ++j) xr[j] = centroid[j] + (centroid[j] - xs[hi][j]);
    const double fr = f(xr);
    ++res.evals;
    track(xr, fr);

    if (fr < fs[lo]) {
      for (std::size_t j = 0; j < P; ++j)
        xe[j] = centroid[j] + 2.0 * (centroid[j] - xs[hi][j]);
      const double fe = f(xe);
      ++res.evals;
      track(xe, fe);
      if (fe < fr) {
        xs[hi] = xe;
        fs[hi] = fe;
      } else {
        xs[hi] = xr;
        fs[hi] = fr;
      }
    } else if (fr < fs[second_hi]) {
      xs[hi] = xr;
      fs[hi] = fr;
    } else {
      const bool outside = fr < fs[hi];
      const std::vector<double>& base = outside ? xr : xs[hi];
      for (std::size_t j = 0; j < P; ++j) xc[j] = centroid[j] + 0.5 * (base[j] - centroid[j]);
      const double fc = f(xc);
      ++res.evals;
      track(xc, fc);
      if (fc < (outside ? fr : fs[hi])) {
        xs[hi] = xc;
        fs[hi] = fc;
      } else {
        // shrink toward the best vertex
        for (std::size_t i = 0; i <= P; ++i) {
          if (i == lo) continue;
          for (std::size_t j = 0; j < P; ++j)
            xs[i][j] = xs[lo][j] + 0.5 * (xs[i][j] - xs[lo][j]);
          fs[i] = f(xs[i]);
          ++res.evals;
          track(xs[i], fs[i]);
        }
      }
    }
  }
  return res;
}

}  // namespace

Extremal direct_oracle(const HerglotzProblem& p, const OracleConfig& cfg) {
  const OcpSystem sys = reduce_to_ocp(p);
  if (cfg.coarse_nodes < 2) throw Error("direct_oracle needs at least 2 coarse nodes");
  const Grid fine = Grid::uniform(p.a, p.b, cfg.fine_nodes);
  const int n = p.n;
  const int m = p.m;
  const std::size_t sd = static_cast<std::size_t>(n) * m + 1;
  const std::size_t P = cfg.coarse_nodes * static_cast<std::size_t>(m);
  const double hc = (p.b - p.a) / static_cast<double>(cfg.coarse_nodes - 1);

  const auto control_at = [&](const std::vector<double>& theta, double t,
                              std::vector<double>& u) {
    double s = (t - p.a) / hc;
    auto seg = static_cast<long long>(std::floor(s));
    seg = std::clamp<long long>(seg, 0, static_cast<long long>(cfg.coarse_nodes) - 2);
    const double w = s - static_cast<double>(seg);
    for (int k = 0; k < m; ++k) {
      const std::size_t at = static_cast<std::size_t>(seg) * m + k;
      u[k] = (1.0 - w) * theta[at] + w * theta[at + m];
    }
  };

  std::vector<double> y0(sd, 0.0);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < m; ++k) y0[static_cast<std::size_t>(j) * m + k] = p.alpha[j][k];
  y0[sd - 1] = p.gamma;

  const auto integrate = [&](const std::vector<double>& theta) {
    std::vector<double> u(m);
    const VectorField F = [&](double t, std::span<const double> X,
                              std::span<double> dX) {
      control_at(theta, t, u);
      sys.rhs(t, X, u, dX);
    };
    return rk4(F, p.a, y0, fine, Direction::Forward);
  };

  const double sense_sign = p.sense == Sense::Minimize ? 1.0 : -1.0;
  const auto objective = [&](const std::vector<double>& theta) -> double {
    try {
      const GridFunction sol = integrate(theta);
      return sense_sign * sol.at(fine.nodes - 1, sd - 1);
    } catch (const Error&) {
      return 1e300;  // invalid control: repel the simplex
    }
  };

  std::mt19937_64 rng(cfg.seed);
  std::vector<double> best(P, 0.0);
  double best_f = objective(best);
  int total_evals = 1;
  bool converged = false;

  for (int r = 0; r < cfg.restarts; ++r) {
    const double step = 0.5 * std::pow(0.5, r);
    NelderMeadResult nm =
        nelder_mead(objective, best, step, r == 0 ? nullptr : &rng, cfg.max_evals);
    total_evals += nm.evals;
    const double improvement = best_f - nm.f;
    if (nm.f < best_f) {
      best = nm.x;
      best_f = nm.f;
    }
    converged = nm.converged;
    if (r >= 1 && improvement <= 1e-9 * (1.0 + std::fabs(best_f))) break;
  }

  const GridFunction sol = integrate(best);
  const TrajectoryLayout lay = TrajectoryLayout::of(p);

  Extremal out;
  out.traj = GridFunction(fine, lay.comps());
  for (int k = 1; k <= m; ++k)
    for (int j = 0; j < n; ++j)
      std::ranges::copy(sol.comp(static_cast<std::size_t>(j) * m + (k - 1)),
                        out.traj.comp(lay.x_comp(k, j)).begin());
  std::ranges::copy(sol.comp(sd - 1), out.traj.comp(lay.z_comp()).begin());
  {
    std::vector<double> u(m);
    for (std::size_t i = 0; i < fine.nodes; ++i) {
      control_at(best, fine.t(i), u);
      for (int k = 1; k <= m; ++k) out.traj.at(i, lay.x_comp(k, n)) = u[k - 1];
    }
  }
  out.mult = psi_backward_ode(p, out.traj);
  out.converged = converged;
  out.residual_norm = 0.0;
  out.z_b = sol.at(fine.nodes - 1, sd - 1);
  out.iterations = total_evals;
  return out;
}

}  // namespace herglotz
