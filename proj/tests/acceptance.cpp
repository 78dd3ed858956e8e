// Acceptance suite: nine end-to-end criteria, one [PASS]/[FAIL] line each.
// Exits nonzero if any criterion fails. Every numerical claim is checked
// against an oracle that does not share machinery with the code under test:
// closed-form ODE solutions, hand-integrable polynomials, a derivative-free
// direct-transcription solver, and raw finite differences.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "herglotz/multipliers.hpp"
#include "herglotz/problem_file.hpp"
#include "herglotz/solver.hpp"
#include "herglotz/verify.hpp"

using namespace herglotz;

namespace {

int g_failures = 0;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

void report(int idx, const char* name, bool pass, const std::string& detail) {
  std::printf("[%s] %d %s%s%s\n", pass ? "PASS" : "FAIL", idx, name,
              detail.empty() ? "" : "  -- ", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

template <class Fn>
void criterion(int idx, const char* name, Fn fn) {
  std::string detail;
  bool pass = false;
  try {
    pass = fn(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
    pass = false;
  }
  report(idx, name, pass, detail);
}

double aux_value(const CheckReport& rep, const std::string& key, double fallback) {
  for (const auto& [k, v] : rep.aux)
    if (k == key) return v;
  return fallback;
}

// ---------------------------------------------------------------------------
// Bundled problems, each solved once by shooting at N = 1001 and cached.

const char* const kBundled[] = {"oscillator.prob", "free_particle.prob",
                                "bending_energy.prob", "time_dependent.prob"};

struct Solved {
  ProblemFile pf;
  Extremal ext;
  double seconds = 0.0;
};

const Solved& solved(const std::string& file) {
  static std::map<std::string, Solved> cache;
  auto it = cache.find(file);
  if (it != cache.end()) return it->second;

  Solved s;
  s.pf = load_problem_file(std::string(HERGLOTZ_PROBLEMS_DIR) + "/" + file);
  ShootingConfig cfg;
  cfg.grid = Grid::uniform(s.pf.problem.a, s.pf.problem.b, 1001);
  cfg.tol = s.pf.tolerance;
  cfg.max_iter = s.pf.max_iterations;
  cfg.multistart = s.pf.multistart;
  cfg.seed = s.pf.seed;
  const auto t0 = std::chrono::steady_clock::now();
  s.ext = shoot(s.pf.problem, cfg);
  s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return cache.emplace(file, std::move(s)).first->second;
}

// Interior infinity norm of the difference between two multiplier sets,
// excluding `band` nodes at each end.
double psi_gap(const MultiplierSet& a, const MultiplierSet& b, std::size_t band) {
  double gap = 0.0;
  const std::size_t N = a.psi.nodes();
  for (std::size_t c = 0; c < a.psi.comps(); ++c)
    for (std::size_t i = band; i + band < N; ++i)
      gap = std::max(gap, std::abs(a.psi.at(i, c) - b.psi.at(i, c)));
  return gap;
}

// Cross-method multiplier disagreement on the shooting extremal of `file`
// computed on a fresh grid of N nodes. The shot is driven well below the
// default tolerance so the grid error, not the residual of the Newton
// iteration, is what the two methods disagree by.
double cross_method_error(const std::string& file, std::size_t N) {
  const Solved& s = solved(file);
  const HerglotzProblem& p = s.pf.problem;
  ShootingConfig cfg;
  cfg.grid = Grid::uniform(p.a, p.b, N);
  cfg.tol = 1e-12;
  const Extremal ext = shoot(p, cfg);
  const MultiplierSet ode = psi_backward_ode(p, ext.traj);
  const MultiplierSet closed =
      psi_closed_form(p, ext.traj, psi_z_quadrature(p, ext.traj));
  return psi_gap(ode, closed, static_cast<std::size_t>(p.n));
}

// ---------------------------------------------------------------------------
// Criterion 9 helper: random expression trees checked against central FD.

Expr random_expr(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> leaf(0, 4);
  std::uniform_real_distribution<double> coef(0.5, 2.0);
  if (depth == 0) {
    switch (leaf(rng)) {
      case 0: return Expr::constant(coef(rng));
      case 1: return Expr::var(VarRef::time());
      case 2: return Expr::var(VarRef::state(1, 0));
      case 3: return Expr::var(VarRef::state(1, 1));
      default: return Expr::var(VarRef::z());
    }
  }
  std::uniform_int_distribution<int> op(0, 7);
  switch (op(rng)) {
    case 0: return Expr::add(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 1: return Expr::sub(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 2: return Expr::mul(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 3:  // keep denominators away from zero
      return Expr::div(random_expr(rng, depth - 1),
                       Expr::add(Expr::constant(2.0),
                                 Expr::sin(random_expr(rng, depth - 1))));
    case 4: return Expr::sin(random_expr(rng, depth - 1));
    case 5: return Expr::cos(random_expr(rng, depth - 1));
    case 6:
      return Expr::exp(Expr::mul(Expr::constant(0.25), random_expr(rng, depth - 1)));
    default:
      return Expr::pow(random_expr(rng, depth - 1), Expr::constant(2.0));
  }
}

double& point_slot(EvalPoint& pt, const VarRef& v) {
  if (v.kind == VarKind::Time) return pt.t;
  if (v.kind == VarKind::Z) return pt.z;
  return pt.x[static_cast<std::size_t>(v.index - 1) * (pt.order + 1) + v.order];
}

// ---------------------------------------------------------------------------

bool c1_classical(std::string& detail) {
  const Solved& s = solved("oscillator.prob");
  if (!s.ext.converged) {
    detail = "shooting did not converge";
    return false;
  }
  const Grid& g = s.ext.traj.grid();
  double dev = 0.0;
  for (std::size_t i = 0; i < g.nodes; ++i)
    dev = std::max(dev, std::abs(s.ext.traj.at(i, 0) - fixtures::osc_x(g.t(i))));
  detail = "max dev " + fmt(dev) + " vs closed form, " + fmt(s.seconds) + " s";
  return dev <= 1e-6 && s.seconds < 5.0;
}

bool c2_higher_order(std::string& detail) {
  const Solved& s = solved("bending_energy.prob");
  if (!s.ext.converged) {
    detail = "shooting did not converge";
    return false;
  }
  const Grid& g = s.ext.traj.grid();
  double dev = 0.0;
  for (std::size_t i = 0; i < g.nodes; ++i)
    dev = std::max(dev, std::abs(s.ext.traj.at(i, 0) - g.t(i)));
  const double zdev = std::abs(s.ext.z_b - s.pf.problem.gamma);
  detail = "||x - t|| = " + fmt(dev) + ", |z(b) - gamma| = " + fmt(zdev);
  return dev <= 1e-6 && zdev <= 1e-8;
}

bool c3_cross_method(std::string& detail) {
  bool ok = true;
  for (const char* file : {"oscillator.prob", "bending_energy.prob"}) {
    const double e_coarse = cross_method_error(file, 101);
    const double e_fine = cross_method_error(file, 201);
    const double tol_coarse = 50.0 / (100.0 * 100.0);
    const double tol_fine = 50.0 / (200.0 * 200.0);
    ok = ok && e_coarse <= tol_coarse && e_fine <= tol_fine;
    if (e_coarse > 1e-12 || e_fine > 1e-12) {
      ok = ok && e_coarse / e_fine >= 3.5;
      detail += std::string(file) + ": e(h)=" + fmt(e_coarse) +
                " ratio=" + fmt(e_coarse / e_fine) + "  ";
    } else {
      detail += std::string(file) + ": both errors <= 1e-12  ";
    }
  }
  return ok;
}

bool c4_dubois_reymond(std::string& detail) {
  bool ok = true;
  for (const char* file : kBundled) {
    const Solved& s = solved(file);
    ok = ok && s.ext.converged;
    const double tol = default_tolerance(s.ext.traj.grid());
    const CheckReport rep =
        dubois_reymond(s.pf.problem, s.ext.traj, s.ext.mult, tol);
    ok = ok && rep.pass;
    const double bracket_dev = aux_value(rep, "bracket_max_dev", -1.0);
    if (bracket_dev >= 0.0) ok = ok && bracket_dev <= tol;  // autonomous only
    detail += std::string(file) + "=" + fmt(rep.residual) + " ";
  }
  return ok;
}

bool c5_noether(std::string& detail) {
  const Solved& s = solved("oscillator.prob");
  const HerglotzProblem& p = s.pf.problem;
  const double tol = default_tolerance(s.ext.traj.grid());
  const CheckReport inv =
      invariance_check(p, s.ext.traj, *s.pf.finite_symmetry, tol);
  const CheckReport rep =
      noether_charge(p, s.ext.traj, s.ext.mult, *s.pf.symmetry, tol, inv.pass);

  const std::vector<double> charge =
      noether_values(p, s.ext.traj, s.ext.mult, *s.pf.symmetry);
  const std::vector<double> bracket = dr_bracket(p, s.ext.traj, s.ext.mult);
  double gap = 0.0;
  for (std::size_t i = 0; i < charge.size(); ++i)
    gap = std::max(gap, std::abs(charge[i] + bracket[i]));

  detail = "relative dev " + fmt(rep.residual) + ", charge+bracket gap " + fmt(gap);
  return inv.pass && rep.pass && gap <= 1e-10;
}

bool c6_invariance(std::string& detail) {
  const Solved& osc = solved("oscillator.prob");
  const double tol_osc = default_tolerance(osc.ext.traj.grid());
  const CheckReport good = invariance_check(
      osc.pf.problem, osc.ext.traj, *osc.pf.finite_symmetry, tol_osc);
  const double xi = aux_value(good, "xi", 1.0);

  const Solved& td = solved("time_dependent.prob");
  const double tol_td = default_tolerance(td.ext.traj.grid());
  const CheckReport bad = invariance_check(
      td.pf.problem, td.ext.traj, *td.pf.finite_symmetry, tol_td);
  const double cond_ii = aux_value(bad, "cond_ii_residual", 0.0);
  const double xi_dev = aux_value(bad, "xi_dev", 1.0);

  detail = "xi = " + fmt(xi) + ", time-dependent cond(ii) = " + fmt(cond_ii);
  return good.pass && std::abs(xi) <= 1e-6 && !bad.pass && cond_ii > tol_td &&
         xi_dev <= tol_td;
}

bool c7_oracle(std::string& detail) {
  bool ok = true;
  for (const char* file : kBundled) {
    const Solved& s = solved(file);
    const Extremal direct = direct_oracle(s.pf.problem);
    const double dz = std::abs(s.ext.z_b - direct.z_b);
    ok = ok && dz <= 1e-3;
    // the derivative-free search must never genuinely beat the extremal
    if (s.pf.problem.sense == Sense::Minimize)
      ok = ok && direct.z_b >= s.ext.z_b - 1e-3;
    else
      ok = ok && direct.z_b <= s.ext.z_b + 1e-3;
    detail += std::string(file) + ": dz=" + fmt(dz) + " ";
  }
  return ok;
}

bool c8_negative_controls(std::string& detail) {
  // A parabola is not an extremal of the free particle: the residual is -2.
  HerglotzProblem p;
  p.n = 1;
  p.m = 1;
  p.a = 0.0;
  p.b = 1.0;
  p.L = parse("x1'^2/2", ParseBounds{1, 1, false});
  p.alpha = {{0.0}};
  p.gamma = 0.0;
  const Grid g = Grid::uniform(0.0, 1.0, 201);
  const GridFunction traj = fixtures::analytic_trajectory(
      p, g, [](double t, int j) { return j ? 2 * t : t * t; });
  const GridFunction psi_z = psi_z_quadrature(p, traj);
  const GridFunction r = el_residual(p, traj, psi_z);
  const double tol = default_tolerance(g);
  double dev = 0.0;
  for (std::size_t i = 1; i + 1 < g.nodes; ++i)
    dev = std::max(dev, std::abs(r.at(i, 0) + 2.0));
  const bool detected = !el_report(p, traj, psi_z, tol).pass;

  // A z-translation is not a symmetry of a z-dependent Lagrangian.
  const Solved& osc = solved("oscillator.prob");
  const ParseBounds pb{1, 1, true};
  const FiniteFamily shift{parse("t", pb), {parse("x1", pb)}, parse("z + s", pb)};
  const CheckReport inv = invariance_check(
      osc.pf.problem, osc.ext.traj, shift,
      default_tolerance(osc.ext.traj.grid()));

  detail = "EL residual - (-2) = " + fmt(dev) + ", z-shift cond(ii) = " +
           fmt(aux_value(inv, "cond_ii_residual", 0.0));
  return dev <= tol && detected && !inv.pass;
}

bool c9_numerics(std::string& detail) {
  // rk4 on y' = -y over three halvings of h
  std::vector<double> rk4_err;
  for (std::size_t N : {26u, 51u, 101u, 201u}) {
    const Grid g = Grid::uniform(0.0, 1.0, N);
    const double y0[] = {1.0};
    const GridFunction y = rk4(
        [](double, std::span<const double> v, std::span<double> dv) { dv[0] = -v[0]; },
        0.0, y0, g, Direction::Forward);
    rk4_err.push_back(std::abs(y.at(N - 1, 0) - std::exp(-1.0)));
  }
  const double rk4_order = std::log2(rk4_err.front() / rk4_err.back()) / 3.0;

  // composite quadrature of sin over [0, 1]
  std::vector<double> quad_err;
  for (std::size_t N : {25u, 49u, 97u, 193u}) {
    const Grid g = Grid::uniform(0.0, 1.0, N);
    std::vector<double> f(N);
    for (std::size_t i = 0; i < N; ++i) f[i] = std::sin(g.t(i));
    quad_err.push_back(std::abs(quad(f, g.h(), 0, N - 1) - (1.0 - std::cos(1.0))));
  }
  const double quad_order = std::log2(quad_err.front() / quad_err.back()) / 3.0;

  // first-derivative stencil on sin over [0, 2]
  std::vector<double> fd_err;
  for (std::size_t N : {26u, 51u, 101u, 201u}) {
    const Grid g = Grid::uniform(0.0, 2.0, N);
    std::vector<double> f(N);
    for (std::size_t i = 0; i < N; ++i) f[i] = std::sin(g.t(i));
    const std::vector<double> d = fd_derivative_once(f, g.h());
    double e = 0.0;
    for (std::size_t i = 0; i < N; ++i)
      e = std::max(e, std::abs(d[i] - std::cos(g.t(i))));
    fd_err.push_back(e);
  }
  const double fd_order = std::log2(fd_err.front() / fd_err.back()) / 3.0;

  // symbolic derivatives against central differences on random trees
  std::mt19937_64 rng(20240811);
  std::uniform_real_distribution<double> val(0.3, 1.7);
  int checked = 0, attempts = 0;
  double worst = 0.0;
  while (checked < 20 && attempts < 500) {
    ++attempts;
    const Expr e = random_expr(rng, 3);
    const VarRef vars[] = {VarRef::time(), VarRef::state(1, 0), VarRef::state(1, 1),
                           VarRef::z()};
    const VarRef v = vars[attempts % 4];
    EvalPoint pt(1, 1);
    pt.t = val(rng);
    pt.z = val(rng);
    pt.set_x(1, 0, val(rng));
    pt.set_x(1, 1, val(rng));
    try {
      const double analytic = eval(diff(e, v), pt);
      const double h = 1e-6;
      EvalPoint lo = pt, hi = pt;
      point_slot(lo, v) -= h;
      point_slot(hi, v) += h;
      const double fd = (eval(e, hi) - eval(e, lo)) / (2 * h);
      if (!std::isfinite(analytic) || !std::isfinite(fd) || std::abs(analytic) > 1e6)
        continue;  // resample: the tree escaped the tame range
      worst = std::max(worst, std::abs(fd - analytic) / std::max(1.0, std::abs(analytic)));
      ++checked;
    } catch (const DomainError&) {
      continue;  // resample
    }
  }

  detail = "orders rk4=" + fmt(rk4_order) + " quad=" + fmt(quad_order) +
           " fd=" + fmt(fd_order) + ", diff-vs-FD worst rel " + fmt(worst) + " on " +
           std::to_string(checked) + " exprs";
  return rk4_order >= 3.8 && quad_order >= 3.8 && fd_order >= 1.8 && checked == 20 &&
         worst <= 1e-6;
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  criterion(1, "classical degeneration (n=1) matches the closed-form BVP", c1_classical);
  criterion(2, "higher-order exactness (n=2): x(t) = t and z(b) = gamma", c2_higher_order);
  criterion(3, "multiplier cross-method agreement with second-order decay", c3_cross_method);
  criterion(4, "DuBois-Reymond drift residual on every bundled extremal", c4_dubois_reymond);
  criterion(5, "time-translation Noether charge constant, equal to -bracket", c5_noether);
  criterion(6, "invariance checker: passes autonomous, fails time-dependent", c6_invariance);
  criterion(7, "direct-transcription oracle agrees with shooting on z(b)", c7_oracle);
  criterion(8, "negative controls: non-extremal and non-symmetry detected", c8_negative_controls);
  criterion(9, "numerics substrate: convergence orders and derivative checks", c9_numerics);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%d/9 criteria passed in %.1f s\n", 9 - g_failures, secs);
  return g_failures == 0 ? 0 : 1;
}
