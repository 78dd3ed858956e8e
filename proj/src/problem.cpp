#include "herglotz/problem.hpp"

#include <cmath>

namespace herglotz {

ValidationInfo validate(const HerglotzProblem& p) {
  if (p.n < 1 || p.m < 1)
    throw DimensionMismatch("problem requires order >= 1 and dimension >= 1");
  if (!std::isfinite(p.a) || !std::isfinite(p.b) || !(p.a < p.b))
    throw InvalidInterval("problem interval requires finite a < b");
  if (p.alpha.size() != static_cast<std::size_t>(p.n))
    throw DimensionMismatch("x_init must have exactly n rows");
  for (const auto& row : p.alpha) {
    if (row.size() != static_cast<std::size_t>(p.m))
      throw DimensionMismatch("each x_init row must have exactly m entries");
    for (double v : row)
      if (!std::isfinite(v)) throw DimensionMismatch("x_init entries must be finite");
  }
  if (!std::isfinite(p.gamma)) throw DimensionMismatch("z_init must be finite");
  if (p.L.max_order() > p.n)
    throw VariableOutOfBounds("Lagrangian uses a derivative order above n");
  if (p.L.max_index() > p.m)
    throw VariableOutOfBounds("Lagrangian uses a component index above m");
  if (p.L.contains_kind(VarKind::Param))
    throw VariableOutOfBounds("Lagrangian must not use the family parameter s");

  ValidationInfo info;
  info.classical = diff(p.L, VarRef::z()).is_zero();
  info.singular_control = true;
  for (int k = 1; k <= p.m && info.singular_control; ++k)
    for (int l = 1; l <= p.m; ++l) {
      const Expr h = diff(diff(p.L, VarRef::state(k, p.n)), VarRef::state(l, p.n));
      if (!h.is_zero()) {
        info.singular_control = false;
        break;
      }
    }
  return info;
}

OcpSystem::OcpSystem(HerglotzProblem p) : p_(std::move(p)) {
  dLdx_.reserve(static_cast<std::size_t>(p_.n + 1) * p_.m);
  for (int j = 0; j <= p_.n; ++j)
    for (int k = 1; k <= p_.m; ++k) dLdx_.push_back(diff(p_.L, VarRef::state(k, j)));
  dLdz_ = diff(p_.L, VarRef::z());
  d2Lduu_.reserve(static_cast<std::size_t>(p_.m) * p_.m);
  for (int k = 1; k <= p_.m; ++k)
    for (int l = 1; l <= p_.m; ++l)
      d2Lduu_.push_back(diff(diff(p_.L, VarRef::state(k, p_.n)), VarRef::state(l, p_.n)));
}

void OcpSystem::fill_eval_point(double t, std::span<const double> X,
                                std::span<const double> u, EvalPoint& pt) const {
  const int n = p_.n;
  const int m = p_.m;
  pt.dim = m;
  pt.order = n;
  pt.x.resize(static_cast<std::size_t>(m) * (n + 1));
  pt.t = t;
  pt.z = X[static_cast<std::size_t>(n) * m];
  pt.s = 0.0;
  for (int j = 0; j < n; ++j)
    for (int k = 1; k <= m; ++k)
      pt.set_x(k, j, X[static_cast<std::size_t>(j) * m + (k - 1)]);
  for (int k = 1; k <= m; ++k) pt.set_x(k, n, u[k - 1]);
}

double OcpSystem::lagrangian(double t, std::span<const double> X,
                             std::span<const double> u) const {
  thread_local EvalPoint pt;
  fill_eval_point(t, X, u, pt);
  return eval(p_.L, pt);
}

void OcpSystem::rhs(double t, std::span<const double> X, std::span<const double> u,
                    std::span<double> dX) const {
  const int n = p_.n;
  const int m = p_.m;
  for (int j = 0; j + 1 < n; ++j)
    for (int k = 0; k < m; ++k)
      dX[static_cast<std::size_t>(j) * m + k] = X[static_cast<std::size_t>(j + 1) * m + k];
  for (int k = 0; k < m; ++k) dX[static_cast<std::size_t>(n - 1) * m + k] = u[k];
  dX[static_cast<std::size_t>(n) * m] = lagrangian(t, X, u);
}

OcpSystem reduce_to_ocp(const HerglotzProblem& p) {
  validate(p);
  return OcpSystem(p);
}

}  // namespace herglotz
