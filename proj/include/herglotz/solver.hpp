#pragma once

#include <cstdint>
#include <limits>

#include "herglotz/multipliers.hpp"
#include "herglotz/ode.hpp"
#include "herglotz/problem.hpp"

namespace herglotz {

struct ShootingConfig {
  Grid grid;
  double tol = 1e-8;      // infinity norm of the shooting residual
  int max_iter = 50;      // Newton iterations per start
  int multistart = 8;     // random initial costate guesses (first start is 0)
  std::uint64_t seed = 42;
  double fd_eps = 1e-6;   // Jacobian step: fd_eps * (1 + |v|) per component
};

struct Extremal {
  GridFunction traj;  // TrajectoryLayout components: x derivatives 0..n, then z
  MultiplierSet mult;
  bool converged = false;
  double residual_norm = std::numeric_limits<double>::infinity();
  double z_b = 0.0;
  int iterations = 0;
};

// Solves psi_n + psi_z dL/du(t, X, u, z) = 0 for the control by damped
// Newton from u_guess. Requires psi_z * d2L/du2 nonsingular at the root.
std::vector<double> control_from_costate(const OcpSystem& sys, double t,
                                         std::span<const double> X,
                                         std::span<const double> psi_n, double psi_z,
                                         std::span<const double> u_guess);

// Single shooting on the Pontryagin system: unknowns are the n*m+1 initial
// costates (psi_1(a)..psi_n(a), psi_z(a)); the coupled state-costate system
// is integrated forward with the control eliminated pointwise; a damped
// Newton iteration with finite-difference Jacobian drives the terminal
// residual (psi_1(b)..psi_n(b), psi_z(b)-1) below tol. Nonconvergence
// returns the best iterate with converged=false rather than throwing.
Extremal shoot(const HerglotzProblem& p, const ShootingConfig& cfg);

struct OracleConfig {
  std::size_t coarse_nodes = 21;  // control parametrization nodes
  std::size_t fine_nodes = 101;   // integration grid
  std::uint64_t seed = 42;
  int restarts = 4;
  int max_evals = 4000;  // objective evaluations per restart
};

// Direct-transcription oracle: piecewise-linear control on the coarse nodes,
// rk4 integration on the fine grid, z(b) optimized by restarted seeded
// Nelder-Mead. Derivative-free on purpose — it shares no machinery with the
// shooting path and serves as an independent cross-check of z(b).
Extremal direct_oracle(const HerglotzProblem& p, const OracleConfig& cfg = {});

}  // namespace herglotz
