#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "herglotz/errors.hpp"

namespace herglotz {

// Variable alphabet: the time t, the action-like state z, the state
// derivatives x_k^(j) for components k = 1..m and orders j = 0..n, and (for
// one-parameter transformation families only) the family parameter s.
enum class VarKind : std::uint8_t { Time, Z, State, Param };

struct VarRef {
  VarKind kind = VarKind::Time;
  int index = 0;  // component k, 1-based (State only)
  int order = 0;  // derivative order j, 0..n (State only)

  static VarRef time() { return {VarKind::Time, 0, 0}; }
  static VarRef z() { return {VarKind::Z, 0, 0}; }
  static VarRef state(int k, int j) { return {VarKind::State, k, j}; }
  static VarRef param() { return {VarKind::Param, 0, 0}; }

  friend bool operator==(const VarRef& a, const VarRef& b) {
    return a.kind == b.kind && a.index == b.index && a.order == b.order;
  }
};

std::string to_string(const VarRef& v);

enum class ExprKind : std::uint8_t {
  Constant,
  Var,
  Neg,
  Add,
  Sub,
  Mul,
  Div,
  Pow,
  Sin,
  Cos,
  Exp,
  Log,
  Sqrt
};

namespace detail {
struct ExprNode;
}

// Immutable expression tree with value semantics. Copies share structure;
// nothing mutates a node after construction, so instances are safe to share
// across threads.
class Expr {
 public:
  Expr() : Expr(constant(0.0)) {}

  static Expr constant(double v);
  static Expr var(VarRef v);
  // Verbatim node constructor (used by the parser; applies no rewriting).
  static Expr make(ExprKind k, std::vector<Expr> children);

  // Simplifying constructors: identity / annihilator rules (0*e, 1*e, e+0,
  // e-0, 0-e, e/1, 0/e, e^0, e^1) plus constant folding of arithmetic nodes.
  // No canonicalization beyond that.
  static Expr add(Expr a, Expr b);
  static Expr sub(Expr a, Expr b);
  static Expr mul(Expr a, Expr b);
  static Expr div(Expr a, Expr b);
  static Expr neg(Expr a);
  static Expr pow(Expr base, Expr exponent);
  static Expr sin(Expr a);
  static Expr cos(Expr a);
  static Expr exp(Expr a);
  static Expr log(Expr a);
  static Expr sqrt(Expr a);

  ExprKind kind() const;
  double value() const;          // Constant only
  const VarRef& var_ref() const; // Var only
  std::size_t arity() const;
  const Expr& child(std::size_t i) const;

  bool is_constant(double v) const;
  bool is_zero() const { return is_constant(0.0); }

  // Structural equality.
  friend bool operator==(const Expr& a, const Expr& b);

  // Highest derivative order / component index appearing in the tree, and
  // occurrence queries used for structural checks.
  int max_order() const;
  int max_index() const;
  bool contains(const VarRef& v) const;
  bool contains_kind(VarKind k) const;

 private:
  explicit Expr(std::shared_ptr<const detail::ExprNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const detail::ExprNode> node_;
  friend struct detail::ExprNode;
};

// Point at which expressions are evaluated: time, the m-by-(n+1) matrix of
// state derivative values, z, and the family parameter s (0 outside
// invariance checks).
struct EvalPoint {
  double t = 0.0;
  double z = 0.0;
  double s = 0.0;
  int dim = 0;    // m
  int order = 0;  // n
  std::vector<double> x;  // (k,j) at x[(k-1)*(order+1) + j]

  EvalPoint() = default;
  EvalPoint(int m, int n) : dim(m), order(n), x(static_cast<std::size_t>(m) * (n + 1), 0.0) {}

  double x_at(int k, int j) const { return x[static_cast<std::size_t>(k - 1) * (order + 1) + j]; }
  void set_x(int k, int j, double v) { x[static_cast<std::size_t>(k - 1) * (order + 1) + j] = v; }
};

struct ParseBounds {
  int order = 1;  // n >= 1
  int dim = 1;    // m >= 1
  bool allow_param = false;  // accept the family parameter s
};

// Grammar (whitespace insignificant):
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' factor)?
//   base   := number | ident | '(' expr ')' | func '(' expr ')'
//   func   := sin | cos | exp | log | sqrt
//   ident  := 't' | 'z' | 's' | 'x' digits prime*
// A leading '-' in front of a bare numeric literal folds into the constant.
Expr parse(const std::string& source, const ParseBounds& bounds);

double eval(const Expr& e, const EvalPoint& p);

// Exact symbolic partial derivative, treating each x_k^(j) as an independent
// variable.
Expr diff(const Expr& e, const VarRef& v);

// Canonical printer; parse(to_string(e)) is structurally equal to e.
std::string to_string(const Expr& e);

// Column source for grid evaluation: each variable maps to a row-count-long
// array, the family parameter to a fixed scalar.
class ColumnProvider {
 public:
  virtual ~ColumnProvider() = default;
  virtual std::span<const double> column(const VarRef& v) const = 0;
  virtual std::size_t rows() const = 0;
  virtual double param_s() const { return 0.0; }
};

// Evaluates e at every row. Produces bit-identical values to row-by-row
// eval(): elementwise kernels match scalar arithmetic exactly and
// transcendentals take the same libm path.
std::vector<double> eval_grid(const Expr& e, const ColumnProvider& cols);

}  // namespace herglotz
