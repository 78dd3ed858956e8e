#pragma once

#include <span>
#include <vector>

#include "herglotz/expr.hpp"

namespace herglotz {

enum class Sense { Minimize, Maximize };

// Higher-order Herglotz problem: extremize z(b) subject to
//   z'(t) = L(t, x, x', ..., x^(n), z),  z(a) = gamma,
//   x^(j)(a) = alpha[j]  for j = 0..n-1.
struct HerglotzProblem {
  int n = 1;  // derivative order
  int m = 1;  // state dimension
  double a = 0.0;
  double b = 1.0;
  Expr L;
  std::vector<std::vector<double>> alpha;  // n rows of m entries
  double gamma = 0.0;
  Sense sense = Sense::Minimize;
};

struct ValidationInfo {
  // dL/dz is structurally zero: the problem is a classical variational
  // problem and psi_z degenerates to the constant 1.
  bool classical = false;
  // d2L/du2 (u = x^(n)) is structurally zero in every entry: the optimality
  // condition cannot be solved for the control.
  bool singular_control = false;
};

ValidationInfo validate(const HerglotzProblem& p);

// First-order optimal-control form of the problem: state
// X = (x_0 .. x_{n-1}, z) packed as n blocks of m in increasing derivative
// order followed by z, control u = x^(n), payoff z(b).
class OcpSystem {
 public:
  explicit OcpSystem(HerglotzProblem p);

  const HerglotzProblem& problem() const { return p_; }
  int state_dim() const { return p_.n * p_.m + 1; }
  int control_dim() const { return p_.m; }

  // dX = F(t, X, u): pure chain structure ('x_{j-1} = x_j, 'x_{n-1} = u)
  // with 'z = L evaluated at the assembled point, bit-identical to eval().
  void rhs(double t, std::span<const double> X, std::span<const double> u,
           std::span<double> dX) const;

  double lagrangian(double t, std::span<const double> X,
                    std::span<const double> u) const;

  // Populates pt (resizing if needed) with (t, X, u) in EvalPoint layout.
  void fill_eval_point(double t, std::span<const double> X,
                       std::span<const double> u, EvalPoint& pt) const;

  // Cached partials of L: dx(j, k) = dL/d x_k^(j) for j = 0..n (j = n is the
  // control), dz = dL/dz, huu(k, l) = d2L/(du_k du_l).
  const Expr& dx(int j, int k) const { return dLdx_[j * p_.m + (k - 1)]; }
  const Expr& dz() const { return dLdz_; }
  const Expr& huu(int k, int l) const { return d2Lduu_[(k - 1) * p_.m + (l - 1)]; }

 private:
  HerglotzProblem p_;
  std::vector<Expr> dLdx_;
  Expr dLdz_;
  std::vector<Expr> d2Lduu_;
};

// Validates p and builds the optimal-control form.
OcpSystem reduce_to_ocp(const HerglotzProblem& p);

}  // namespace herglotz
