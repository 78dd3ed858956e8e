#include "herglotz/expr.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "herglotz/kernels.hpp"

namespace herglotz {

namespace detail {

struct ExprNode {
  ExprKind kind = ExprKind::Constant;
  double value = 0.0;
  VarRef var;
  std::vector<Expr> kids;

  static Expr wrap(std::shared_ptr<const ExprNode> n) { return Expr(std::move(n)); }
};

}  // namespace detail

using detail::ExprNode;

namespace {

std::size_t expected_arity(ExprKind k) {
  switch (k) {
    case ExprKind::Constant:
    case ExprKind::Var:
      return 0;
    case ExprKind::Neg:
    case ExprKind::Sin:
    case ExprKind::Cos:
    case ExprKind::Exp:
    case ExprKind::Log:
    case ExprKind::Sqrt:
      return 1;
    default:
      return 2;
  }
}

// Integer powers go through exponentiation by squaring so that pointwise and
// grid evaluation share one code path bit for bit.
double ipow(double base, long long k) {
  double acc = 1.0;
  double b = base;
  while (k > 0) {
    if (k & 1) acc *= b;
    b *= b;
    k >>= 1;
  }
  return acc;
}

bool integer_exponent(double e, long long& k) {
  if (!(std::fabs(e) <= 9.0e15)) return false;
  const double r = std::nearbyint(e);
  if (r != e) return false;
  k = static_cast<long long>(r);
  return true;
}

double pow_value(double base, double exponent) {
  long long k;
  if (integer_exponent(exponent, k)) {
    if (base == 0.0 && k < 0) throw DomainError("zero raised to a negative power");
    if (k < 0) return 1.0 / ipow(base, -k);
    return ipow(base, k);
  }
  if (base > 0.0) return std::pow(base, exponent);
  if (base == 0.0) {
    if (exponent > 0.0) return 0.0;
    throw DomainError("zero raised to a non-positive power");
  }
  throw DomainError("negative base with non-integer exponent");
}

}  // namespace

// --- construction -----------------------------------------------------------

Expr Expr::constant(double v) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprKind::Constant;
  n->value = v;
  return ExprNode::wrap(std::move(n));
}

Expr Expr::var(VarRef v) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprKind::Var;
  n->var = v;
  return ExprNode::wrap(std::move(n));
}

Expr Expr::make(ExprKind k, std::vector<Expr> children) {
  if (children.size() != expected_arity(k))
    throw Error("internal: wrong arity for expression node");
  auto n = std::make_shared<ExprNode>();
  n->kind = k;
  n->kids = std::move(children);
  return ExprNode::wrap(std::move(n));
}

ExprKind Expr::kind() const { return node_->kind; }
double Expr::value() const { return node_->value; }
const VarRef& Expr::var_ref() const { return node_->var; }
std::size_t Expr::arity() const { return node_->kids.size(); }
const Expr& Expr::child(std::size_t i) const { return node_->kids[i]; }

bool Expr::is_constant(double v) const {
  return node_->kind == ExprKind::Constant && node_->value == v;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case ExprKind::Constant:
      return a.value() == b.value();
    case ExprKind::Var:
      return a.var_ref() == b.var_ref();
    default:
      if (a.arity() != b.arity()) return false;
      for (std::size_t i = 0; i < a.arity(); ++i)
        if (!(a.child(i) == b.child(i))) return false;
      return true;
  }
}

Expr Expr::add(Expr a, Expr b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.kind() == ExprKind::Constant && b.kind() == ExprKind::Constant)
    return constant(a.value() + b.value());
  return make(ExprKind::Add, {std::move(a), std::move(b)});
}

Expr Expr::sub(Expr a, Expr b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return neg(std::move(b));
  if (a.kind() == ExprKind::Constant && b.kind() == ExprKind::Constant)
    return constant(a.value() - b.value());
  return make(ExprKind::Sub, {std::move(a), std::move(b)});
}

Expr Expr::mul(Expr a, Expr b) {
  if (a.is_zero() || b.is_zero()) return constant(0.0);
  if (a.is_constant(1.0)) return b;
  if (b.is_constant(1.0)) return a;
  if (a.kind() == ExprKind::Constant && b.kind() == ExprKind::Constant)
    return constant(a.value() * b.value());
  return make(ExprKind::Mul, {std::move(a), std::move(b)});
}

Expr Expr::div(Expr a, Expr b) {
  if (a.is_zero()) return constant(0.0);
  if (b.is_constant(1.0)) return a;
  if (a.kind() == ExprKind::Constant && b.kind() == ExprKind::Constant &&
      b.value() != 0.0)
    return constant(a.value() / b.value());
  return make(ExprKind::Div, {std::move(a), std::move(b)});
}

Expr Expr::neg(Expr a) {
  if (a.kind() == ExprKind::Constant) return constant(-a.value());
  if (a.kind() == ExprKind::Neg) return a.child(0);
  return make(ExprKind::Neg, {std::move(a)});
}

Expr Expr::pow(Expr base, Expr exponent) {
  if (exponent.is_constant(1.0)) return base;
  if (exponent.is_constant(0.0)) return constant(1.0);
  if (base.kind() == ExprKind::Constant && exponent.kind() == ExprKind::Constant) {
    long long k;
    if (integer_exponent(exponent.value(), k) || base.value() > 0.0)
      return constant(pow_value(base.value(), exponent.value()));
  }
  return make(ExprKind::Pow, {std::move(base), std::move(exponent)});
}

Expr Expr::sin(Expr a) { return make(ExprKind::Sin, {std::move(a)}); }
Expr Expr::cos(Expr a) { return make(ExprKind::Cos, {std::move(a)}); }
Expr Expr::exp(Expr a) { return make(ExprKind::Exp, {std::move(a)}); }
Expr Expr::log(Expr a) { return make(ExprKind::Log, {std::move(a)}); }
Expr Expr::sqrt(Expr a) { return make(ExprKind::Sqrt, {std::move(a)}); }

// --- tree queries -----------------------------------------------------------

int Expr::max_order() const {
  int m = 0;
  if (kind() == ExprKind::Var && var_ref().kind == VarKind::State) m = var_ref().order;
  for (std::size_t i = 0; i < arity(); ++i) m = std::max(m, child(i).max_order());
  return m;
}

int Expr::max_index() const {
  int m = 0;
  if (kind() == ExprKind::Var && var_ref().kind == VarKind::State) m = var_ref().index;
  for (std::size_t i = 0; i < arity(); ++i) m = std::max(m, child(i).max_index());
  return m;
}

bool Expr::contains(const VarRef& v) const {
  if (kind() == ExprKind::Var) return var_ref() == v;
  for (std::size_t i = 0; i < arity(); ++i)
    if (child(i).contains(v)) return true;
  return false;
}

bool Expr::contains_kind(VarKind k) const {
  if (kind() == ExprKind::Var) return var_ref().kind == k;
  for (std::size_t i = 0; i < arity(); ++i)
    if (child(i).contains_kind(k)) return true;
  return false;
}

// --- parser -----------------------------------------------------------------

namespace {

class Parser {
 public:
  Parser(const std::string& src, const ParseBounds& b) : src_(src), bounds_(b) {}

  Expr run() {
    Expr e = parse_expr();
    skip_ws();
    if (pos_ < src_.size())
      throw SyntaxError("unexpected trailing input", pos_);
    return e;
  }

 private:
  const std::string& src_;
  ParseBounds bounds_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c, const char* what) {
    if (!accept(c)) throw SyntaxError(std::string("expected ") + what, pos_);
  }

  Expr parse_expr() {
    bool negate = accept('-');
    Expr e = parse_term();
    if (negate) {
      // fold "-<literal>" into a negative constant
      e = e.kind() == ExprKind::Constant ? Expr::constant(-e.value())
                                         : Expr::make(ExprKind::Neg, {e});
    }
    for (;;) {
      if (accept('+'))
        e = Expr::make(ExprKind::Add, {e, parse_term()});
      else if (accept('-'))
        e = Expr::make(ExprKind::Sub, {e, parse_term()});
      else
        return e;
    }
  }

  Expr parse_term() {
    Expr e = parse_factor();
    for (;;) {
      if (accept('*'))
        e = Expr::make(ExprKind::Mul, {e, parse_factor()});
      else if (accept('/'))
        e = Expr::make(ExprKind::Div, {e, parse_factor()});
      else
        return e;
    }
  }

  Expr parse_factor() {
    // unary minus binds looser than '^' but is allowed before any factor,
    // so printed forms like "2 - -3" and "x^-2" read back
    if (accept('-')) {
      Expr e = parse_factor();
      return e.kind() == ExprKind::Constant ? Expr::constant(-e.value())
                                            : Expr::make(ExprKind::Neg, {e});
    }
    Expr base = parse_base();
    if (accept('^')) return Expr::make(ExprKind::Pow, {base, parse_factor()});
    return base;
  }

  Expr parse_base() {
    const char c = peek();
    if (c == '\0') throw SyntaxError("unexpected end of input", pos_);
    if (c == '(') {
      ++pos_;
      Expr e = parse_expr();
      expect(')', "')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_ident();
    throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
  }

  Expr parse_number() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
        ++pos_;
    }
    if (pos_ == start || (pos_ == start + 1 && src_[start] == '.'))
      throw SyntaxError("malformed number", start);
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t epos = pos_ + 1;
      if (epos < src_.size() && (src_[epos] == '+' || src_[epos] == '-')) ++epos;
      if (epos < src_.size() && std::isdigit(static_cast<unsigned char>(src_[epos]))) {
        pos_ = epos;
        while (pos_ < src_.size() &&
               std::isdigit(static_cast<unsigned char>(src_[pos_])))
          ++pos_;
      }
    }
    double v = 0.0;
    const auto res = std::from_chars(src_.data() + start, src_.data() + pos_, v);
    if (res.ec != std::errc{}) throw SyntaxError("malformed number", start);
    return Expr::constant(v);
  }

  Expr parse_ident() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
    const std::string name = src_.substr(start, pos_ - start);

    if (name == "sin" || name == "cos" || name == "exp" || name == "log" ||
        name == "sqrt") {
      expect('(', "'(' after function name");
      Expr arg = parse_expr();
      expect(')', "')'");
      ExprKind k = name == "sin"   ? ExprKind::Sin
                   : name == "cos" ? ExprKind::Cos
                   : name == "exp" ? ExprKind::Exp
                   : name == "log" ? ExprKind::Log
                                   : ExprKind::Sqrt;
      return Expr::make(k, {arg});
    }
    if (name == "t") return Expr::var(VarRef::time());
    if (name == "z") return Expr::var(VarRef::z());
    if (name == "s") {
      if (!bounds_.allow_param)
        throw UnknownIdentifier("identifier 's' is only valid in transformation families",
                                start);
      return Expr::var(VarRef::param());
    }
    if (name == "x") {
      if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
        throw SyntaxError("expected component index after 'x'", pos_);
      int k = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        k = k * 10 + (src_[pos_] - '0');
        if (k > 1000000) throw IndexExceeded("component index too large", start);
        ++pos_;
      }
      if (k < 1) throw IndexExceeded("component index must be at least 1", start);
      if (k > bounds_.dim)
        throw IndexExceeded("component index " + std::to_string(k) +
                                " exceeds dimension " + std::to_string(bounds_.dim),
                            start);
      int j = 0;
      while (pos_ < src_.size() && src_[pos_] == '\'') {
        ++j;
        ++pos_;
      }
      if (j > bounds_.order)
        throw OrderExceeded("derivative order " + std::to_string(j) +
                                " exceeds problem order " + std::to_string(bounds_.order),
                            start);
      return Expr::var(VarRef::state(k, j));
    }
    throw UnknownIdentifier("unknown identifier '" + name + "'", start);
  }
};

}  // namespace

Expr parse(const std::string& source, const ParseBounds& bounds) {
  if (bounds.order < 1 || bounds.dim < 1)
    throw DimensionMismatch("parse bounds require order >= 1 and dim >= 1");
  return Parser(source, bounds).run();
}

// --- evaluation -------------------------------------------------------------

namespace {

double var_value(const VarRef& v, const EvalPoint& p) {
  switch (v.kind) {
    case VarKind::Time:
      return p.t;
    case VarKind::Z:
      return p.z;
    case VarKind::Param:
      return p.s;
    case VarKind::State:
      if (v.index < 1 || v.index > p.dim || v.order < 0 || v.order > p.order)
        throw DimensionMismatch("variable outside the evaluation point's bounds");
      return p.x_at(v.index, v.order);
  }
  throw Error("internal: bad variable kind");
}

}  // namespace

double eval(const Expr& e, const EvalPoint& p) {
  switch (e.kind()) {
    case ExprKind::Constant:
      return e.value();
    case ExprKind::Var:
      return var_value(e.var_ref(), p);
    case ExprKind::Neg:
      return -eval(e.child(0), p);
    case ExprKind::Add:
      return eval(e.child(0), p) + eval(e.child(1), p);
    case ExprKind::Sub:
      return eval(e.child(0), p) - eval(e.child(1), p);
    case ExprKind::Mul:
      return eval(e.child(0), p) * eval(e.child(1), p);
    case ExprKind::Div: {
      const double num = eval(e.child(0), p);
      const double den = eval(e.child(1), p);
      if (den == 0.0) throw DomainError("division by zero");
      return num / den;
    }
    case ExprKind::Pow:
      return pow_value(eval(e.child(0), p), eval(e.child(1), p));
    case ExprKind::Sin:
      return std::sin(eval(e.child(0), p));
    case ExprKind::Cos:
      return std::cos(eval(e.child(0), p));
    case ExprKind::Exp:
      return std::exp(eval(e.child(0), p));
    case ExprKind::Log: {
      const double a = eval(e.child(0), p);
      if (a <= 0.0) throw DomainError("log of non-positive value");
      return std::log(a);
    }
    case ExprKind::Sqrt: {
      const double a = eval(e.child(0), p);
      if (a < 0.0) throw DomainError("sqrt of negative value");
      return std::sqrt(a);
    }
  }
  throw Error("internal: bad expression kind");
}

// --- differentiation --------------------------------------------------------

Expr diff(const Expr& e, const VarRef& v) {
  switch (e.kind()) {
    case ExprKind::Constant:
      return Expr::constant(0.0);
    case ExprKind::Var:
      return Expr::constant(e.var_ref() == v ? 1.0 : 0.0);
    case ExprKind::Neg:
      return Expr::neg(diff(e.child(0), v));
    case ExprKind::Add:
      return Expr::add(diff(e.child(0), v), diff(e.child(1), v));
    case ExprKind::Sub:
      return Expr::sub(diff(e.child(0), v), diff(e.child(1), v));
    case ExprKind::Mul:
      return Expr::add(Expr::mul(diff(e.child(0), v), e.child(1)),
                       Expr::mul(e.child(0), diff(e.child(1), v)));
    case ExprKind::Div:
      // (u/w)' = (u' w - u w') / w^2
      return Expr::div(Expr::sub(Expr::mul(diff(e.child(0), v), e.child(1)),
                                 Expr::mul(e.child(0), diff(e.child(1), v))),
                       Expr::mul(e.child(1), e.child(1)));
    case ExprKind::Pow: {
      const Expr& base = e.child(0);
      const Expr& expo = e.child(1);
      Expr dbase = diff(base, v);
      if (expo.kind() == ExprKind::Constant) {
        const double c = expo.value();
        return Expr::mul(
            Expr::mul(Expr::constant(c), Expr::pow(base, Expr::constant(c - 1.0))),
            std::move(dbase));
      }
      Expr dexpo = diff(expo, v);
      // d(u^w) = u^w * (w' log u + w u'/u)
      return Expr::mul(Expr::make(ExprKind::Pow, {base, expo}),
                       Expr::add(Expr::mul(std::move(dexpo), Expr::log(base)),
                                 Expr::mul(expo, Expr::div(std::move(dbase), base))));
    }
    case ExprKind::Sin:
      return Expr::mul(Expr::cos(e.child(0)), diff(e.child(0), v));
    case ExprKind::Cos:
      return Expr::neg(Expr::mul(Expr::sin(e.child(0)), diff(e.child(0), v)));
    case ExprKind::Exp:
      return Expr::mul(Expr::make(ExprKind::Exp, {e.child(0)}), diff(e.child(0), v));
    case ExprKind::Log:
      return Expr::div(diff(e.child(0), v), e.child(0));
    case ExprKind::Sqrt:
      return Expr::div(diff(e.child(0), v),
                       Expr::mul(Expr::constant(2.0), Expr::sqrt(e.child(0))));
  }
  throw Error("internal: bad expression kind");
}

// --- printing ---------------------------------------------------------------

std::string to_string(const VarRef& v) {
  switch (v.kind) {
    case VarKind::Time:
      return "t";
    case VarKind::Z:
      return "z";
    case VarKind::Param:
      return "s";
    case VarKind::State: {
      std::string s = "x" + std::to_string(v.index);
      s.append(static_cast<std::size_t>(v.order), '\'');
      return s;
    }
  }
  return "?";
}

namespace {

std::string format_constant(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// Print context: what the grammar allows at this position without parentheses.
enum PrintLevel { kExprPos = 0, kTermPos = 1, kFactorPos = 2, kBasePos = 3 };

// Grammar level the node itself produces.
int node_level(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Add:
    case ExprKind::Sub:
      return kExprPos;
    case ExprKind::Neg:
      return kExprPos;  // leading '-' only valid at expression start
    case ExprKind::Constant:
      return e.value() < 0.0 ? kExprPos : kBasePos;
    case ExprKind::Mul:
    case ExprKind::Div:
      return kTermPos;
    case ExprKind::Pow:
      return kFactorPos;
    default:
      return kBasePos;
  }
}

void print(const Expr& e, int level, std::string& out) {
  const bool parens = node_level(e) < level;
  if (parens) out += '(';
  switch (e.kind()) {
    case ExprKind::Constant:
      out += format_constant(e.value());
      break;
    case ExprKind::Var:
      out += to_string(e.var_ref());
      break;
    case ExprKind::Neg:
      out += '-';
      print(e.child(0), kTermPos, out);
      break;
    case ExprKind::Add:
      print(e.child(0), kExprPos, out);
      out += " + ";
      print(e.child(1), kTermPos, out);
      break;
    case ExprKind::Sub:
      print(e.child(0), kExprPos, out);
      out += " - ";
      print(e.child(1), kTermPos, out);
      break;
    case ExprKind::Mul:
      print(e.child(0), kTermPos, out);
      out += " * ";
      print(e.child(1), kFactorPos, out);
      break;
    case ExprKind::Div:
      print(e.child(0), kTermPos, out);
      out += " / ";
      print(e.child(1), kFactorPos, out);
      break;
    case ExprKind::Pow:
      print(e.child(0), kBasePos, out);
      out += '^';
      print(e.child(1), kFactorPos, out);
      break;
    case ExprKind::Sin:
    case ExprKind::Cos:
    case ExprKind::Exp:
    case ExprKind::Log:
    case ExprKind::Sqrt: {
      const char* name = e.kind() == ExprKind::Sin   ? "sin"
                         : e.kind() == ExprKind::Cos ? "cos"
                         : e.kind() == ExprKind::Exp ? "exp"
                         : e.kind() == ExprKind::Log ? "log"
                                                     : "sqrt";
      out += name;
      out += '(';
      print(e.child(0), kExprPos, out);
      out += ')';
      break;
    }
  }
  if (parens) out += ')';
}

}  // namespace

std::string to_string(const Expr& e) {
  std::string out;
  print(e, kExprPos, out);
  return out;
}

// --- grid evaluation ----------------------------------------------------------

namespace {

std::vector<double> eval_grid_rec(const Expr& e, const ColumnProvider& cols) {
  const std::size_t n = cols.rows();
  switch (e.kind()) {
    case ExprKind::Constant: {
      std::vector<double> out(n);
      kernels::fill(out.data(), e.value(), n);
      return out;
    }
    case ExprKind::Var: {
      std::vector<double> out(n);
      if (e.var_ref().kind == VarKind::Param) {
        kernels::fill(out.data(), cols.param_s(), n);
      } else {
        const auto col = cols.column(e.var_ref());
        if (col.size() != n) throw DimensionMismatch("column length mismatch");
        kernels::copy(col.data(), out.data(), n);
      }
      return out;
    }
    case ExprKind::Neg: {
      std::vector<double> a = eval_grid_rec(e.child(0), cols);
      kernels::neg(a.data(), a.data(), n);
      return a;
    }
    case ExprKind::Add:
    case ExprKind::Sub:
    case ExprKind::Mul:
    case ExprKind::Div: {
      std::vector<double> a = eval_grid_rec(e.child(0), cols);
      std::vector<double> b = eval_grid_rec(e.child(1), cols);
      switch (e.kind()) {
        case ExprKind::Add:
          kernels::add(a.data(), b.data(), a.data(), n);
          break;
        case ExprKind::Sub:
          kernels::sub(a.data(), b.data(), a.data(), n);
          break;
        case ExprKind::Mul:
          kernels::mul(a.data(), b.data(), a.data(), n);
          break;
        default:
          kernels::div(a.data(), b.data(), a.data(), n);
          break;
      }
      return a;
    }
    case ExprKind::Pow: {
      std::vector<double> a = eval_grid_rec(e.child(0), cols);
      if (e.child(1).kind() == ExprKind::Constant) {
        const double c = e.child(1).value();
        for (std::size_t i = 0; i < n; ++i) a[i] = pow_value(a[i], c);
        return a;
      }
      std::vector<double> b = eval_grid_rec(e.child(1), cols);
      for (std::size_t i = 0; i < n; ++i) a[i] = pow_value(a[i], b[i]);
      return a;
    }
    case ExprKind::Sqrt: {
      std::vector<double> a = eval_grid_rec(e.child(0), cols);
      kernels::sqrt_el(a.data(), a.data(), n);
      return a;
    }
    case ExprKind::Sin:
    case ExprKind::Cos:
    case ExprKind::Exp:
    case ExprKind::Log: {
      std::vector<double> a = eval_grid_rec(e.child(0), cols);
      switch (e.kind()) {
        case ExprKind::Sin:
          for (std::size_t i = 0; i < n; ++i) a[i] = std::sin(a[i]);
          break;
        case ExprKind::Cos:
          for (std::size_t i = 0; i < n; ++i) a[i] = std::cos(a[i]);
          break;
        case ExprKind::Exp:
          for (std::size_t i = 0; i < n; ++i) a[i] = std::exp(a[i]);
          break;
        default:
          for (std::size_t i = 0; i < n; ++i) {
            if (a[i] <= 0.0) throw DomainError("log of non-positive value");
            a[i] = std::log(a[i]);
          }
          break;
      }
      return a;
    }
  }
  throw Error("internal: bad expression kind");
}

}  // namespace

std::vector<double> eval_grid(const Expr& e, const ColumnProvider& cols) {
  return eval_grid_rec(e, cols);
}

}  // namespace herglotz
