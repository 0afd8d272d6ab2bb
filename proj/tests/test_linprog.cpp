#include <doctest.h>

#include "convexkit/linprog.hpp"

using namespace convexkit;

TEST_CASE("basic maximization via negated cost") {
  // max x + y  s.t.  x + y <= 1  ->  objective -1 at any point of the face.
  lp::Problem p;
  p.A.resize(1, 2);
  p.A << 1, 1;
  p.b.resize(1);
  p.b << 1;
  p.c.resize(2);
  p.c << -1, -1;
  p.rel = {lp::Relation::LessEq};
  const auto s = lp::solve(p);
  REQUIRE(s.status == lp::Status::Optimal);
  CHECK(s.objective == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("two-phase equality with mixed relations") {
  // min x1 + 2 x2  s.t.  x1 + x2 = 1, x1 - x2 >= -0.5  ->  x = (0.25, 0.75)
  // is infeasible for the optimum; optimum sits at x2 as small as allowed:
  // x1 - x2 >= -0.5 and x1 + x2 = 1 give x2 <= 0.75, cost decreasing in x2
  // means x2 = 0, x1 = 1 (satisfies 1 >= -0.5), objective 1.
  lp::Problem p;
  p.A.resize(2, 2);
  p.A << 1, 1, 1, -1;
  p.b.resize(2);
  p.b << 1, -0.5;
  p.c.resize(2);
  p.c << 1, 2;
  p.rel = {lp::Relation::Eq, lp::Relation::GreaterEq};
  const auto s = lp::solve(p);
  REQUIRE(s.status == lp::Status::Optimal);
  CHECK(s.objective == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.x[0] == doctest::Approx(1.0));
  CHECK(s.x[1] == doctest::Approx(0.0));
}

TEST_CASE("infeasible system is flagged") {
  // x <= -1 with x >= 0.
  lp::Problem p;
  p.A.resize(1, 1);
  p.A << 1;
  p.b.resize(1);
  p.b << -1;
  p.c.resize(1);
  p.c << 0;
  p.rel = {lp::Relation::LessEq};
  const auto s = lp::solve(p);
  CHECK(s.status == lp::Status::Infeasible);
  CHECK(s.infeasibility > 0.5);
}

TEST_CASE("unbounded direction is flagged") {
  lp::Problem p;
  p.A.resize(1, 1);
  p.A << 1;
  p.b.resize(1);
  p.b << 0;
  p.c.resize(1);
  p.c << -1;
  p.rel = {lp::Relation::GreaterEq};
  const auto s = lp::solve(p);
  CHECK(s.status == lp::Status::Unbounded);
}

TEST_CASE("degenerate constraints do not cycle") {
  // Redundant rows pinning the same vertex.
  lp::Problem p;
  p.A.resize(3, 2);
  p.A << 1, 0, 1, 0, 0, 1;
  p.b.resize(3);
  p.b << 1, 1, 1;
  p.c.resize(2);
  p.c << -1, -1;
  p.rel = {lp::Relation::LessEq, lp::Relation::LessEq, lp::Relation::LessEq};
  const auto s = lp::solve(p);
  REQUIRE(s.status == lp::Status::Optimal);
  CHECK(s.objective == doctest::Approx(-2.0).epsilon(1e-12));
}
