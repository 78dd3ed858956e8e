// Command-line front end: problem files in, trajectories and reports out.
//
//   herglotz solve <file> [--out PATH] [--method shooting|direct]
//                         [--grid N] [--tol X] [--seed S]
//   herglotz verify <traj.csv> --problem <file> [--tol-scale C]
//   herglotz noether <file> --traj <traj.csv>
//   herglotz oracle <file> [...]        (alias for solve --method direct)
//
// Exit codes: 0 success / all checks pass, 1 input error, 2 numerical
// nonconvergence or check failure.  HERGLOTZ_GRID overrides the default grid
// size; an explicit --grid flag wins over the environment.  HERGLOTZ_SIMD
// (auto|scalar|avx2) pins the kernel backend for the whole process.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "herglotz/multipliers.hpp"
#include "herglotz/problem_file.hpp"
#include "herglotz/solver.hpp"
#include "herglotz/trajectory_io.hpp"
#include "herglotz/verify.hpp"

namespace {

using namespace herglotz;

// %.6e with the exponent stripped of '+' and leading zeros: 5 -> "5.000000e0".
std::string sci(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  std::string s = buf;
  const auto e = s.find('e');
  if (e == std::string::npos) return s;
  std::string mant = s.substr(0, e);
  std::string exp = s.substr(e + 1);
  bool neg = false;
  if (!exp.empty() && (exp[0] == '+' || exp[0] == '-')) {
    neg = exp[0] == '-';
    exp.erase(0, 1);
  }
  while (exp.size() > 1 && exp.front() == '0') exp.erase(0, 1);
  return mant + "e" + (neg ? "-" : "") + exp;
}

void print_report(std::ostream& os, const CheckReport& r) {
  os << r.name << " residual=" << sci(r.residual) << " tol=" << sci(r.tolerance)
     << (r.pass ? " PASS" : " FAIL");
  for (const auto& [key, value] : r.aux) os << ' ' << key << '=' << sci(value);
  if (!r.note.empty()) os << "  # " << r.note;
  os << "\n";
}

int classify(const Error& e) {
  // Input problems are exit 1; numerical failures are exit 2.
  if (dynamic_cast<const ParseDiagnostic*>(&e) != nullptr ||
      dynamic_cast<const FileFormatError*>(&e) != nullptr ||
      dynamic_cast<const ColumnMismatch*>(&e) != nullptr ||
      dynamic_cast<const MissingSection*>(&e) != nullptr ||
      dynamic_cast<const DimensionMismatch*>(&e) != nullptr ||
      dynamic_cast<const VariableOutOfBounds*>(&e) != nullptr ||
      dynamic_cast<const InvalidInterval*>(&e) != nullptr ||
      dynamic_cast<const IdentityViolation*>(&e) != nullptr)
    return 1;
  return 2;
}

struct GridChoice {
  std::size_t nodes = 0;
  bool explicitly_set = false;  // flag, env, or problem-file grid_points
};

GridChoice resolve_grid(const ProblemFile& pf, bool flag_given, std::size_t flag_value) {
  if (flag_given) {
    if (flag_value < 3) throw FileFormatError("--grid must be at least 3");
    return {flag_value, true};
  }
  if (const char* env = std::getenv("HERGLOTZ_GRID")) {
    char* end = nullptr;
    const long long v = std::strtoll(env, &end, 10);
    if (end == env || *end != '\0' || v < 3)
      throw FileFormatError(std::string("HERGLOTZ_GRID must be an integer >= 3, got '") +
                            env + "'");
    return {static_cast<std::size_t>(v), true};
  }
  return {pf.grid_points, pf.grid_points_given};
}

struct SolveArgs {
  std::string file;
  std::string out;
  std::string method;
  std::size_t grid = 0;
  bool grid_given = false;
  double tol = 0.0;
  bool tol_given = false;
  std::uint64_t seed = 0;
  bool seed_given = false;
};

int run_solve(const SolveArgs& a) {
  const ProblemFile pf = load_problem_file(a.file);
  const std::string method = a.method.empty() ? pf.method : a.method;
  const GridChoice gc = resolve_grid(pf, a.grid_given, a.grid);

  Extremal ext;
  if (method == "shooting") {
    ShootingConfig cfg;
    cfg.grid = Grid::uniform(pf.problem.a, pf.problem.b, gc.nodes);
    cfg.tol = a.tol_given ? a.tol : pf.tolerance;
    cfg.max_iter = pf.max_iterations;
    cfg.multistart = pf.multistart;
    cfg.seed = a.seed_given ? a.seed : pf.seed;
    ext = shoot(pf.problem, cfg);
  } else {
    OracleConfig cfg;
    if (gc.explicitly_set) cfg.fine_nodes = gc.nodes;
    cfg.seed = a.seed_given ? a.seed : pf.seed;
    ext = direct_oracle(pf.problem, cfg);
  }

  const std::string summary = "z(b)=" + sci(ext.z_b) + " residual=" +
                              sci(ext.residual_norm) +
                              (ext.converged ? " converged=true" : " converged=false") +
                              " iterations=" + std::to_string(ext.iterations);
  if (a.out.empty()) {
    write_trajectory_csv(std::cout, ext.traj.grid(), ext.traj, ext.mult, pf.problem.n,
                         pf.problem.m);
    std::cerr << summary << "\n";
  } else {
    save_trajectory_csv(a.out, ext.traj.grid(), ext.traj, ext.mult, pf.problem.n,
                        pf.problem.m);
    std::cout << summary << "\n";
  }
  return ext.converged ? 0 : 2;
}

void check_same_interval(const HerglotzProblem& p, const Grid& g, const std::string& path) {
  const double tol = 1e-9 * (1.0 + std::abs(p.b - p.a));
  if (std::abs(g.a - p.a) > tol || std::abs(g.b - p.b) > tol)
    throw FileFormatError("trajectory '" + path + "' covers [" + std::to_string(g.a) +
                          ", " + std::to_string(g.b) +
                          "] but the problem's interval is [" + std::to_string(p.a) +
                          ", " + std::to_string(p.b) + "]");
}

int run_verify(const std::string& traj_path, const std::string& problem_path,
               double tol_scale) {
  const ProblemFile pf = load_problem_file(problem_path);
  const HerglotzProblem& p = pf.problem;
  const TrajectoryData td = load_trajectory_csv(traj_path, p.n, p.m);
  check_same_interval(p, td.grid, traj_path);

  const double tol = default_tolerance(td.grid) * tol_scale;
  // Multipliers are recomputed from the trajectory alone (quadrature psi_z +
  // the closed-form sum), so the checks certify the trajectory itself rather
  // than trusting the psi columns stored next to it.
  const GridFunction psi_z = psi_z_quadrature(p, td.traj);
  const MultiplierSet mult = psi_closed_form(p, td.traj, psi_z);

  const CheckReport reports[] = {
      el_report(p, td.traj, psi_z, tol),
      transversality(p, mult, tol),
      dubois_reymond(p, td.traj, mult, tol),
  };
  bool all = true;
  for (const auto& r : reports) {
    print_report(std::cout, r);
    all = all && r.pass;
  }
  return all ? 0 : 2;
}

int run_noether(const std::string& file, const std::string& traj_path) {
  const ProblemFile pf = load_problem_file(file);
  if (!pf.symmetry)
    throw MissingSection(file + ": the noether command requires a [symmetry] section");
  const HerglotzProblem& p = pf.problem;
  const TrajectoryData td = load_trajectory_csv(traj_path, p.n, p.m);
  check_same_interval(p, td.grid, traj_path);

  const double tol = default_tolerance(td.grid);
  const GridFunction psi_z = psi_z_quadrature(p, td.traj);
  const MultiplierSet mult = psi_closed_form(p, td.traj, psi_z);

  bool all = true;
  std::optional<bool> guard;
  if (pf.finite_symmetry) {
    const CheckReport inv = invariance_check(p, td.traj, *pf.finite_symmetry, tol);
    print_report(std::cout, inv);
    all = all && inv.pass;
    guard = inv.pass;
  } else {
    std::cerr << "warning: no [finite_symmetry] section; invariance is unchecked and "
                 "the charge is reported unguarded\n";
  }
  const CheckReport charge = noether_charge(p, td.traj, mult, *pf.symmetry, tol, guard);
  print_report(std::cout, charge);
  all = all && charge.pass;
  return all ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solver and verifier for higher-order variational problems of Herglotz type"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand("solve", "Compute an extremal and write it as CSV");
  solve->add_option("file", solve_args.file, "problem file")->required();
  solve->add_option("--out", solve_args.out, "output CSV path (default: stdout)");
  solve->add_option("--method", solve_args.method, "shooting or direct")
      ->check(CLI::IsMember({"shooting", "direct"}));
  auto* grid_opt = solve->add_option("--grid", solve_args.grid, "grid nodes");
  auto* tol_opt = solve->add_option("--tol", solve_args.tol, "shooting residual tolerance")
                      ->check(CLI::PositiveNumber);
  auto* seed_opt = solve->add_option("--seed", solve_args.seed, "multistart seed");

  std::string verify_traj, verify_problem;
  double tol_scale = 1.0;
  CLI::App* verify = app.add_subcommand("verify", "Certify necessary conditions along a trajectory");
  verify->add_option("traj", verify_traj, "trajectory CSV")->required();
  verify->add_option("--problem", verify_problem, "problem file")->required();
  verify->add_option("--tol-scale", tol_scale, "tolerance multiplier (default 1)")
      ->check(CLI::PositiveNumber);

  std::string noether_file, noether_traj;
  CLI::App* noether = app.add_subcommand("noether", "Check invariance and Noether charge constancy");
  noether->add_option("file", noether_file, "problem file with a [symmetry] section")
      ->required();
  noether->add_option("--traj", noether_traj, "trajectory CSV")->required();

  SolveArgs oracle_args;
  CLI::App* oracle = app.add_subcommand("oracle", "Direct-transcription solve (alias for solve --method direct)");
  oracle->add_option("file", oracle_args.file, "problem file")->required();
  oracle->add_option("--out", oracle_args.out, "output CSV path (default: stdout)");
  auto* ogrid_opt = oracle->add_option("--grid", oracle_args.grid, "fine grid nodes");
  auto* oseed_opt = oracle->add_option("--seed", oracle_args.seed, "optimizer seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (const char* simd = std::getenv("HERGLOTZ_SIMD")) {
      const std::string v = simd;
      if (v != "auto" && v != "scalar" && v != "avx2")
        throw FileFormatError("HERGLOTZ_SIMD must be auto, scalar or avx2, got '" + v + "'");
    }
    if (solve->parsed()) {
      solve_args.grid_given = grid_opt->count() > 0;
      solve_args.tol_given = tol_opt->count() > 0;
      solve_args.seed_given = seed_opt->count() > 0;
      return run_solve(solve_args);
    }
    if (verify->parsed()) return run_verify(verify_traj, verify_problem, tol_scale);
    if (noether->parsed()) return run_noether(noether_file, noether_traj);
    if (oracle->parsed()) {
      oracle_args.method = "direct";
      oracle_args.grid_given = ogrid_opt->count() > 0;
      oracle_args.seed_given = oseed_opt->count() > 0;
      return run_solve(oracle_args);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return classify(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
