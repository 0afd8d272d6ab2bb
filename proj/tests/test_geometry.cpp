#include <doctest.h>

#include <cmath>

#include "convexkit/geometry.hpp"
#include "convexkit/rng.hpp"
#include "helpers.hpp"

using namespace convexkit;
using testutil::poly;
using testutil::vec;

TEST_CASE("contains: segment midpoint") {
  CHECK(contains(testutil::segment1d(0, 1), vec({0.5})));
}

TEST_CASE("contains: point outside the bounding box of the square") {
  CHECK_FALSE(contains(testutil::unit_square(), vec({2, 0})));
}

TEST_CASE("contains: interior of a triangle via the feasibility program") {
  // Weights (0.5, 0.25, 0.25) solve the program by hand.
  const auto tri = poly({{0, 0}, {1, 0}, {0, 1}});
  const Vector x = vec({0.25, 0.25});
  CHECK(contains(tri, x));
  const auto w = BarycentricSolver(tri).weights(x);
  REQUIRE(w.has_value());
  CHECK(w->valid(1e-9));
  CHECK((tri.vertex_matrix() * w->weights - x).norm() <= 1e-9);
}

TEST_CASE("contains: dimension mismatch throws") {
  CHECK_THROWS_AS(contains(testutil::unit_square(), vec({0.5})),
                  DimensionMismatch);
}

TEST_CASE("project: axis-aligned face of the unit square") {
  const auto pr = project(testutil::unit_square(), vec({2, 0.5}));
  CHECK((pr.point - vec({1, 0.5})).norm() <= 1e-9);
  CHECK(pr.distance == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("project: closed-form line projection") {
  const auto seg = poly({{0, 0}, {1, 1}});
  const auto pr = project(seg, vec({1, 0}));
  CHECK((pr.point - vec({0.5, 0.5})).norm() <= 1e-9);
  CHECK(pr.distance == doctest::Approx(std::sqrt(0.5)).epsilon(1e-9));
}

TEST_CASE("project: idempotent on vertices") {
  Rng rng(7);
  for (int t = 0; t < 20; ++t) {
    const int d = static_cast<int>(rng.uniform_int(1, 4));
    const auto p = testutil::random_polytope(rng, d, 6, Vector::Zero(d), 1.0);
    const int j = static_cast<int>(rng.uniform_int(0, 5));
    const auto pr = project(p, p.vertex(j));
    CHECK(pr.distance <= 1e-9);
  }
}

TEST_CASE("projection properties on random instances") {
  Rng rng(11);
  for (int t = 0; t < 60; ++t) {
    const int d = static_cast<int>(rng.uniform_int(1, 4));
    const int nv = static_cast<int>(rng.uniform_int(2, 8));
    const auto p = testutil::random_polytope(rng, d, nv, Vector::Zero(d), 1.5);
    const Vector x1 = 3.0 * rng.gaussian_vector(d);
    const Vector x2 = 3.0 * rng.gaussian_vector(d);
    const auto p1 = project(p, x1);
    const auto p2 = project(p, x2);

    // Nonexpansiveness.
    CHECK((p1.point - p2.point).norm() <= (x1 - x2).norm() + 1e-9);

    // Variational characterization: <x - y, z - y> <= tol at all vertices.
    for (int j = 0; j < p.num_vertices(); ++j) {
      CHECK((x1 - p1.point).dot(p.vertex(j) - p1.point) <= 1e-9);
    }

    // The projection itself is a member.
    CHECK(contains(p, p1.point, 1e-9));
  }
}

TEST_CASE("minkowski difference: difference with a point") {
  const auto d = minkowski_difference(poly({{0}, {1}}), poly({{0}}));
  REQUIRE(d.num_vertices() == 2);
  CHECK(d.vertex(0)[0] == doctest::Approx(0.0));
  CHECK(d.vertex(1)[0] == doctest::Approx(1.0));
}

TEST_CASE("minkowski difference: all pairwise differences span [1,3]") {
  const auto d = minkowski_difference(poly({{2}, {3}}), poly({{0}, {1}}));
  REQUIRE(d.num_vertices() == 4);
  const auto [lo, hi] = d.bounding_box();
  CHECK(lo[0] == doctest::Approx(1.0));
  CHECK(hi[0] == doctest::Approx(3.0));
}

TEST_CASE("minkowski difference: A - A contains the origin") {
  const auto sq = testutil::unit_square();
  const auto d = minkowski_difference(sq, sq);
  CHECK(contains(d, vec({0, 0})));
  const auto [lo, hi] = d.bounding_box();
  CHECK(lo[0] == doctest::Approx(-1.0));
  CHECK(hi[1] == doctest::Approx(1.0));
}

TEST_CASE("minkowski difference: hull consistency on random members") {
  Rng rng(13);
  for (int t = 0; t < 30; ++t) {
    const int dim = static_cast<int>(rng.uniform_int(1, 3));
    const auto c = testutil::random_polytope(rng, dim, 5, Vector::Zero(dim), 1.0);
    const auto k = testutil::random_polytope(rng, dim, 4, Vector::Zero(dim), 1.0);
    const Vector cm = c.vertex_matrix() * rng.simplex_weights(5);
    const Vector km = k.vertex_matrix() * rng.simplex_weights(4);
    CHECK(contains(minkowski_difference(c, k), cm - km, 1e-8));
  }
}

TEST_CASE("linear maximize: square and simplex corners") {
  const auto m1 = linear_maximize(testutil::unit_square(), vec({1, 1}));
  CHECK((m1.vertex - vec({1, 1})).norm() <= 1e-12);
  CHECK(m1.value == doctest::Approx(2.0));

  const auto m2 = linear_maximize(testutil::standard_simplex(3), vec({0, 0, 1}));
  CHECK((m2.vertex - vec({0, 0, 1})).norm() <= 1e-12);
  CHECK(m2.value == doctest::Approx(1.0));
}

TEST_CASE("linear maximize: agrees with exhaustive vertex scan") {
  Rng rng(17);
  for (int t = 0; t < 20; ++t) {
    const auto p = testutil::random_polytope(rng, 3, 20, Vector::Zero(3), 2.0);
    const Vector u = rng.gaussian_vector(3);
    const auto m = linear_maximize(p, u);
    double best = -1e300;
    for (int j = 0; j < p.num_vertices(); ++j)
      best = std::max(best, u.dot(p.vertex(j)));
    CHECK(m.value == doctest::Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("linear maximize: ties break to the lowest index") {
  const auto p = poly({{0, 1}, {1, 0}, {1, 1}, {0, 0}});
  CHECK(linear_maximize(p, vec({0, 1})).index == 0);  // (0,1) ties (1,1)
}
