#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "herglotz/expr.hpp"

using namespace herglotz;

namespace {

EvalPoint point11(double t, double x, double xp, double z) {
  EvalPoint p(1, 1);
  p.t = t;
  p.z = z;
  p.set_x(1, 0, x);
  p.set_x(1, 1, xp);
  return p;
}

}  // namespace

TEST_CASE("parsing and evaluating basic Lagrangians") {
  const ParseBounds b{1, 1, false};

  SUBCASE("kinetic term") {
    const Expr e = parse("x1'^2 / 2", b);
    CHECK(eval(e, point11(0, 0, 3, 0)) == doctest::Approx(4.5));
  }
  SUBCASE("mixed trig and product") {
    const Expr e = parse("sin(t) + x1*z", b);
    CHECK(eval(e, point11(0, 2, 0, 3)) == doctest::Approx(6.0));
  }
  SUBCASE("constants evaluate to themselves") {
    CHECK(eval(Expr::constant(7.0), point11(1, 2, 3, 4)) == 7.0);
  }
  SUBCASE("squares of negatives") {
    const Expr e = parse("x1' * x1'", b);
    CHECK(eval(e, point11(0, 0, -2, 0)) == 4.0);
  }
  SUBCASE("exponential at zero") {
    const Expr e = parse("exp(2*t)", b);
    CHECK(eval(e, point11(0, 0, 0, 0)) == 1.0);
  }
  SUBCASE("unary minus") {
    CHECK(eval(parse("-z", b), point11(0, 0, 0, 3)) == -3.0);
    CHECK(eval(parse("-x1^2 + 1", b), point11(0, 2, 0, 0)) == -3.0);
    CHECK(eval(parse("2 - -3", b), point11(0, 0, 0, 0)) == 5.0);
  }
  SUBCASE("power is right-associative") {
    CHECK(eval(parse("2^3^2", b), point11(0, 0, 0, 0)) == 512.0);
  }
  SUBCASE("integer powers of negative bases") {
    CHECK(eval(parse("x1^3", b), point11(0, -2, 0, 0)) == -8.0);
    CHECK(eval(parse("x1^2", b), point11(0, -2, 0, 0)) == 4.0);
  }
}

TEST_CASE("parse errors carry positions and precise kinds") {
  const ParseBounds b{1, 1, false};
  CHECK_THROWS_AS(parse("x1''", b), OrderExceeded);
  CHECK_THROWS_AS(parse("x2", b), IndexExceeded);
  CHECK_THROWS_AS(parse("y + 1", b), UnknownIdentifier);
  CHECK_THROWS_AS(parse("1 + ", b), SyntaxError);
  CHECK_THROWS_AS(parse("(1 + 2", b), SyntaxError);
  CHECK_THROWS_AS(parse("sin 2", b), SyntaxError);
  CHECK_THROWS_AS(parse("", b), SyntaxError);
  CHECK_THROWS_AS(parse("s", b), UnknownIdentifier);  // param needs allow_param
  CHECK_NOTHROW(parse("s + t", ParseBounds{1, 1, true}));

  try {
    parse("x1 + @", b);
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.position == 5);
    CHECK(std::string(e.what()).find("column 5") != std::string::npos);
  }

  // higher bounds admit more of the alphabet
  CHECK_NOTHROW(parse("x1'' + x2'", ParseBounds{2, 2, false}));
}

TEST_CASE("evaluation domain errors") {
  const ParseBounds b{1, 1, false};
  const EvalPoint p = point11(0, -1, 0, 0);
  CHECK_THROWS_AS(eval(parse("log(x1)", b), p), DomainError);
  CHECK_THROWS_AS(eval(parse("sqrt(x1)", b), p), DomainError);
  CHECK_THROWS_AS(eval(parse("1 / (x1 + 1)", b), p), DomainError);
  CHECK_THROWS_AS(eval(parse("x1^0.5", b), p), DomainError);  // neg base, frac exp
  CHECK_THROWS_AS(eval(parse("0^(0-1)", b), p), DomainError);
}

TEST_CASE("symbolic differentiation: hand-checked rules") {
  const ParseBounds b{1, 1, false};
  const VarRef xp = VarRef::state(1, 1);
  const VarRef z = VarRef::z();

  SUBCASE("power rule") {
    const Expr d = diff(parse("x1'^2/2", b), xp);
    CHECK(eval(d, point11(0, 0, 3, 0)) == doctest::Approx(3.0));
  }
  SUBCASE("linear z term") {
    const Expr d = diff(parse("x1'^2/2 - x1^2/2 - z", b), z);
    CHECK(d == Expr::constant(-1.0));
  }
  SUBCASE("derivative of an absent variable is the zero expression") {
    CHECK(diff(parse("x1'^2/2", b), z) == Expr::constant(0.0));
    CHECK(diff(parse("sin(t) * exp(z)", b), xp) == Expr::constant(0.0));
    CHECK(diff(Expr::constant(42.0), VarRef::time()) == Expr::constant(0.0));
  }
  SUBCASE("chain rule through transcendentals") {
    const Expr d = diff(parse("sin(x1^2)", b), VarRef::state(1, 0));
    // d/dx sin(x^2) = cos(x^2) * 2x at x = 1.5
    const double x = 1.5;
    CHECK(eval(d, point11(0, x, 0, 0)) ==
          doctest::Approx(std::cos(x * x) * 2 * x).epsilon(1e-14));
  }
  SUBCASE("general power with variable exponent") {
    const Expr d = diff(parse("x1^t", b), VarRef::time());
    // d/dt x^t = x^t log x at x = 2, t = 3
    CHECK(eval(d, point11(3, 2, 0, 0)) ==
          doctest::Approx(8.0 * std::log(2.0)).epsilon(1e-14));
  }
}

namespace {

// Random expression generator over full alphabet, biased toward
// polynomial/trig compositions that stay in-domain.
Expr random_expr(std::mt19937_64& gen, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 9);
  std::uniform_real_distribution<double> cdist(-3.0, 3.0);
  std::uniform_int_distribution<int> vpick(0, 3);
  std::uniform_int_distribution<int> epick(2, 3);
  switch (pick(gen)) {
    case 0:
      return Expr::constant(cdist(gen));
    case 1:
      switch (vpick(gen)) {
        case 0: return Expr::var(VarRef::time());
        case 1: return Expr::var(VarRef::z());
        case 2: return Expr::var(VarRef::state(1, 0));
        default: return Expr::var(VarRef::state(1, 1));
      }
    case 2:
      return Expr::add(random_expr(gen, depth - 1), random_expr(gen, depth - 1));
    case 3:
      return Expr::sub(random_expr(gen, depth - 1), random_expr(gen, depth - 1));
    case 4:
      return Expr::mul(random_expr(gen, depth - 1), random_expr(gen, depth - 1));
    case 5:
      return Expr::sin(random_expr(gen, depth - 1));
    case 6:
      return Expr::cos(random_expr(gen, depth - 1));
    case 7:
      return Expr::pow(random_expr(gen, depth - 1),
                       Expr::constant(static_cast<double>(epick(gen))));
    case 8:
      return Expr::neg(random_expr(gen, depth - 1));
    default:
      // exp of a damped argument to avoid overflow
      return Expr::exp(Expr::mul(Expr::constant(0.2), random_expr(gen, depth - 1)));
  }
}

double directional_fd(const Expr& e, const VarRef& v, const EvalPoint& p, double h) {
  EvalPoint lo = p, hi = p;
  switch (v.kind) {
    case VarKind::Time: lo.t -= h; hi.t += h; break;
    case VarKind::Z: lo.z -= h; hi.z += h; break;
    case VarKind::Param: lo.s -= h; hi.s += h; break;
    case VarKind::State:
      lo.set_x(v.index, v.order, p.x_at(v.index, v.order) - h);
      hi.set_x(v.index, v.order, p.x_at(v.index, v.order) + h);
      break;
  }
  return (eval(e, hi) - eval(e, lo)) / (2 * h);
}

}  // namespace

TEST_CASE("diff matches a central finite-difference oracle on random expressions") {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> pdist(-1.5, 1.5);
  const VarRef vars[] = {VarRef::time(), VarRef::z(), VarRef::state(1, 0),
                         VarRef::state(1, 1)};

  int tested = 0;
  while (tested < 20) {
    const Expr e = random_expr(gen, 4);
    for (const VarRef& v : vars) {
      EvalPoint p = point11(pdist(gen), pdist(gen), pdist(gen), pdist(gen));
      const Expr d = diff(e, v);
      double exact;
      double approx;
      try {
        exact = eval(d, p);
        approx = directional_fd(e, v, p, 1e-6);
      } catch (const DomainError&) {
        continue;  // generator occasionally wanders out of domain
      }
      const double scale = std::max({1.0, std::abs(exact), std::abs(approx)});
      if (!(std::isfinite(exact) && std::isfinite(approx))) continue;
      if (scale > 1e3) continue;  // steep spots inflate FD cancellation error
      CHECK(std::abs(exact - approx) <= 1e-6 * scale);
    }
    ++tested;
  }
  CHECK(tested == 20);
}

TEST_CASE("finite-difference agreement improves at second order in h") {
  // For a smooth expression with nonzero third derivative the central
  // difference error is ~ C h^2; halving h by 10 should shrink the error by
  // about 100, i.e. observed order ~ 2 (require >= 1.8).
  const ParseBounds b{1, 1, false};
  const Expr e = parse("sin(2*x1) * exp(0.3*x1) + x1^3", b);
  const VarRef v = VarRef::state(1, 0);
  const Expr d = diff(e, v);
  const EvalPoint p = point11(0, 0.7, 0, 0);
  const double exact = eval(d, p);

  // h small enough for the h^2 term to dominate, large enough that the
  // eps/h cancellation term stays orders of magnitude below it
  const double e1 = std::abs(directional_fd(e, v, p, 1e-3) - exact);
  const double e2 = std::abs(directional_fd(e, v, p, 1e-4) - exact);
  REQUIRE(e1 > 0);
  REQUIRE(e2 > 0);
  const double order = std::log10(e1 / e2);
  CHECK(order >= 1.8);
}

TEST_CASE("printer round-trips structurally") {
  const ParseBounds b{3, 2, true};
  const char* sources[] = {
      "x1'^2 / 2",
      "x1'^2/2 - x1^2/2 - z",
      "sin(t) + x1*z",
      "t + x1'^2/2",
      "-z",
      "x1''' * x2'' - (t + 1)^2",
      "2 - -3",
      "exp(log(sqrt(x1^2 + 1)))",
      "1/(1+t^2)",
      "s * x2 + t^s",
      "-(x1 + t)",
      "x1 - (x2 - t) - z",
      "(x1 + 1)*(x1 - 1)",
      "2^3^2",
  };
  for (const char* src : sources) {
    CAPTURE(src);
    const Expr e = parse(src, b);
    const Expr round = parse(to_string(e), b);
    CHECK(round == e);
  }
}

TEST_CASE("printer round-trips random trees") {
  std::mt19937_64 gen(7);
  const ParseBounds b{1, 1, false};
  for (int i = 0; i < 200; ++i) {
    const Expr e = random_expr(gen, 5);
    CAPTURE(to_string(e));
    CHECK(parse(to_string(e), b) == e);
  }
}

TEST_CASE("structural helpers") {
  const ParseBounds b{3, 2, false};
  const Expr e = parse("x1'' + x2' * z", b);
  CHECK(e.max_order() == 2);
  CHECK(e.max_index() == 2);
  CHECK(e.contains(VarRef::z()));
  CHECK(!e.contains(VarRef::time()));
  CHECK(e.contains_kind(VarKind::Z));
  CHECK(!e.contains_kind(VarKind::Param));
}

namespace {

class VecColumns : public ColumnProvider {
 public:
  VecColumns(std::vector<double> t, std::vector<double> x0, std::vector<double> x1,
             std::vector<double> z)
      : t_(std::move(t)), x0_(std::move(x0)), x1_(std::move(x1)), z_(std::move(z)) {}

  std::span<const double> column(const VarRef& v) const override {
    if (v.kind == VarKind::Time) return t_;
    if (v.kind == VarKind::Z) return z_;
    return v.order == 0 ? std::span<const double>(x0_) : std::span<const double>(x1_);
  }
  std::size_t rows() const override { return t_.size(); }

 private:
  std::vector<double> t_, x0_, x1_, z_;
};

}  // namespace

TEST_CASE("grid evaluation is bit-identical to pointwise evaluation") {
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  const std::size_t N = 137;  // not a multiple of the SIMD width
  std::vector<double> t(N), x0(N), x1(N), z(N);
  for (std::size_t i = 0; i < N; ++i) {
    t[i] = dist(gen);
    x0[i] = dist(gen);
    x1[i] = dist(gen);
    z[i] = dist(gen);
  }
  const VecColumns cols(t, x0, x1, z);

  const ParseBounds b{1, 1, false};
  const char* sources[] = {
      "x1'^2/2 - x1^2/2 - z",
      "sin(t) + cos(x1) * exp(0.1*z)",
      "t + x1'^2/2",
      "x1^3 - 2*x1' + 7",
      "sqrt(x1^2 + 1) / (z^2 + 1)",
  };
  for (const char* src : sources) {
    CAPTURE(src);
    const Expr e = parse(src, b);
    const std::vector<double> g = eval_grid(e, cols);
    REQUIRE(g.size() == N);
    for (std::size_t i = 0; i < N; ++i) {
      EvalPoint p = point11(t[i], x0[i], x1[i], z[i]);
      CHECK(g[i] == eval(e, p));  // exact, not approximate
    }
  }
}
