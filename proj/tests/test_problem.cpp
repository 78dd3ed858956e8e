#include <vector>

#include "doctest.h"
#include "herglotz/problem.hpp"

using namespace herglotz;

namespace {

HerglotzProblem make_problem(int n, int m, const char* L, double a = 0.0,
                             double b = 1.0) {
  HerglotzProblem p;
  p.n = n;
  p.m = m;
  p.a = a;
  p.b = b;
  p.L = parse(L, ParseBounds{n, m, false});
  p.alpha.assign(n, std::vector<double>(m, 0.0));
  p.gamma = 0.0;
  return p;
}

}  // namespace

TEST_CASE("validation classifies problems and rejects bad data") {
  SUBCASE("classical flag reflects structural z-dependence") {
    CHECK(validate(make_problem(1, 1, "x1'^2/2")).classical);
    CHECK(!validate(make_problem(1, 1, "x1'^2/2 - z")).classical);
    // z multiplied by a structural zero still counts as classical
    CHECK(validate(make_problem(1, 1, "x1'^2/2 + 0*z")).classical);
  }

  SUBCASE("singular-control flag for Lagrangians affine in the top derivative") {
    CHECK(validate(make_problem(1, 1, "x1'")).singular_control);
    CHECK(validate(make_problem(1, 1, "-z")).singular_control);
    CHECK(!validate(make_problem(1, 1, "x1'^2/2")).singular_control);
    CHECK(!validate(make_problem(2, 1, "x1''^2/2")).singular_control);
    // quadratic in x' but n=2 means u = x'' and L is independent of it
    CHECK(validate(make_problem(2, 1, "x1'^2/2")).singular_control);
  }

  SUBCASE("interval and dimension errors") {
    HerglotzProblem p = make_problem(1, 1, "x1'^2/2", 1.0, 0.0);
    CHECK_THROWS_AS(validate(p), InvalidInterval);

    p = make_problem(1, 1, "x1'^2/2");
    p.alpha.clear();
    CHECK_THROWS_AS(validate(p), DimensionMismatch);

    p = make_problem(1, 1, "x1'^2/2");
    p.alpha[0].push_back(1.0);  // too many entries in a row
    CHECK_THROWS_AS(validate(p), DimensionMismatch);
  }

  SUBCASE("Lagrangian variables must respect (n, m)") {
    // Parse under looser bounds, then validate under the problem's own.
    HerglotzProblem p = make_problem(1, 1, "x1'^2/2");
    p.L = parse("x1''^2/2", ParseBounds{2, 1, false});
    CHECK_THROWS_AS(validate(p), VariableOutOfBounds);

    p = make_problem(1, 1, "x1'^2/2");
    p.L = parse("x2", ParseBounds{1, 2, false});
    CHECK_THROWS_AS(validate(p), VariableOutOfBounds);

    p = make_problem(1, 1, "x1'^2/2");
    p.L = parse("s + x1", ParseBounds{1, 1, true});
    CHECK_THROWS_AS(validate(p), VariableOutOfBounds);
  }
}

TEST_CASE("reduction to optimal-control form has the chain structure") {
  SUBCASE("n=2, m=1, L = u^2/2") {
    const OcpSystem sys = reduce_to_ocp(make_problem(2, 1, "x1''^2/2"));
    REQUIRE(sys.state_dim() == 3);
    REQUIRE(sys.control_dim() == 1);
    const double X[] = {1.0, 2.0, 0.0};  // x0 = 1, x1 = 2, z = 0
    const double u[] = {3.0};
    double dX[3];
    sys.rhs(0.0, X, u, dX);
    CHECK(dX[0] == 2.0);  // 'x0 = x1
    CHECK(dX[1] == 3.0);  // 'x1 = u
    CHECK(dX[2] == 4.5);  // 'z = u^2/2
  }

  SUBCASE("n=1, m=1, L = -z") {
    const OcpSystem sys = reduce_to_ocp(make_problem(1, 1, "-z"));
    REQUIRE(sys.state_dim() == 2);
    const double X[] = {0.0, 5.0};
    const double u[] = {7.0};
    double dX[2];
    sys.rhs(0.0, X, u, dX);
    CHECK(dX[0] == 7.0);
    CHECK(dX[1] == -5.0);
  }

  SUBCASE("n=3, m=2: seven state components, first four are pure shifts") {
    const OcpSystem sys =
        reduce_to_ocp(make_problem(3, 2, "x1'''^2/2 + x2'''^2/2 + x1*x2''"));
    REQUIRE(sys.state_dim() == 7);
    REQUIRE(sys.control_dim() == 2);
    const double X[] = {1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 0.5};
    const double u[] = {7.0, 8.0};
    double dX[7];
    sys.rhs(0.25, X, u, dX);
    // 'x_{j-1} = x_j componentwise: blocks (x1..x2)_0 -> (x1..x2)_1 -> ...
    CHECK(dX[0] == X[2]);
    CHECK(dX[1] == X[3]);
    CHECK(dX[2] == X[4]);
    CHECK(dX[3] == X[5]);
    CHECK(dX[4] == 7.0);
    CHECK(dX[5] == 8.0);
  }
}

TEST_CASE("the z-component of the reduction is bit-identical to eval") {
  const HerglotzProblem p = make_problem(1, 1, "sin(t)*x1 + x1'^2/2 - 0.25*z");
  const OcpSystem sys = reduce_to_ocp(p);
  const double X[] = {1.3, -0.7};
  const double u[] = {2.1};
  double dX[2];
  sys.rhs(0.6, X, u, dX);

  EvalPoint pt(1, 1);
  pt.t = 0.6;
  pt.z = -0.7;
  pt.set_x(1, 0, 1.3);
  pt.set_x(1, 1, 2.1);
  CHECK(dX[1] == eval(p.L, pt));                       // exact
  CHECK(sys.lagrangian(0.6, X, u) == eval(p.L, pt));   // exact
}

TEST_CASE("cached partials match fresh symbolic differentiation") {
  const HerglotzProblem p = make_problem(2, 1, "x1''^2/2 + x1'*x1 - z*x1");
  const OcpSystem sys = reduce_to_ocp(p);
  CHECK(sys.dx(0, 1) == diff(p.L, VarRef::state(1, 0)));
  CHECK(sys.dx(1, 1) == diff(p.L, VarRef::state(1, 1)));
  CHECK(sys.dx(2, 1) == diff(p.L, VarRef::state(1, 2)));
  CHECK(sys.dz() == diff(p.L, VarRef::z()));
  CHECK(sys.huu(1, 1) ==
        diff(diff(p.L, VarRef::state(1, 2)), VarRef::state(1, 2)));
}
