#pragma once

#include "herglotz/ode.hpp"
#include "herglotz/problem.hpp"
#include "herglotz/trajectory.hpp"

namespace herglotz {

// Pontryagin multipliers along a trajectory: psi holds n blocks of m in
// increasing j (component (j-1)*m + k-1 is psi_j for state component k),
// psi_z is the scalar exponential multiplier (positive, psi_z(b) = 1).
struct MultiplierSet {
  int n = 0;
  int m = 0;
  GridFunction psi;
  GridFunction psi_z;

  std::size_t psi_comp(int j, int k) const {
    return static_cast<std::size_t>(j - 1) * m + (k - 1);
  }
};

enum class PsiZPath {
  Auto,     // classical problems short-circuit to the constant 1
  General,  // always integrate, even when dL/dz == 0
};

// psi_z(t) = exp(integral_t^b dL/dz along traj). Auto short-circuits
// classical problems to the exact constant 1; General forces the quadrature
// path (used to cross-check the degeneration).
GridFunction psi_z_quadrature(const HerglotzProblem& p, const GridFunction& traj,
                              PsiZPath path = PsiZPath::Auto);

// Integrates the adjoint system backward from psi_j(b) = 0, psi_z(b) = 1:
//   psi_1' = -psi_z dL/dx_0,
//   psi_j' = -psi_{j-1} - psi_z dL/dx_{j-1}   (j = 2..n),
//   psi_z' = -psi_z dL/dz,
// with the partials evaluated along traj. Terminal data builds transversality
// in by construction.
MultiplierSet psi_backward_ode(const HerglotzProblem& p, const GridFunction& traj);

// Closed-form alternating sum
//   psi_j = sum_{i=0}^{n-j} (-1)^{i+1} d^i/dt^i (psi_z dL/dx^(i+j)),
// with d^i/dt^i realized by repeated grid differencing. Independent of the
// backward integration; used as the verification arm of the cross-check.
MultiplierSet psi_closed_form(const HerglotzProblem& p, const GridFunction& traj,
                              const GridFunction& psi_z);

struct HamiltonianValue {
  double H = 0.0;
  double partial_t = 0.0;
};

// H = sum_j psi_j . x^(j) + psi_z L at a node (x^(n) playing the control);
// partial_t = psi_z dL/dt there.
HamiltonianValue hamiltonian(const HerglotzProblem& p, const GridFunction& traj,
                             const MultiplierSet& mult, std::size_t node);

}  // namespace herglotz
