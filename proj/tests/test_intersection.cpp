#include <doctest.h>

#include "convexkit/generators.hpp"
#include "convexkit/geometry.hpp"
#include "convexkit/intersection.hpp"
#include "helpers.hpp"
#include "oracle2d.hpp"

using namespace convexkit;
using testutil::poly;
using testutil::vec;

TEST_CASE("common point of overlapping segments") {
  const auto r = find_common_point({testutil::segment1d(0, 2),
                                    testutil::segment1d(1, 3)});
  REQUIRE(r.found);
  CHECK(r.point[0] >= 1.0 - 1e-9);
  CHECK(r.point[0] <= 2.0 + 1e-9);
}

TEST_CASE("triangle edges: pairwise meet, triple empty") {
  const auto tri = poly({{0, 0}, {1, 0}, {0, 1}});
  std::vector<Polytope> edges{poly({{0, 0}, {1, 0}}), poly({{1, 0}, {0, 1}}),
                              poly({{0, 1}, {0, 0}})};
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = i + 1; j < 3; ++j)
      CHECK(find_common_point({edges[i], edges[j]}).found);
  CHECK_FALSE(find_common_point(edges).found);
  (void)tri;
}

TEST_CASE("three squares with a shared core") {
  auto shifted_square = [](double ox, double oy) {
    return poly({{ox, oy}, {ox + 2, oy}, {ox + 2, oy + 2}, {ox, oy + 2}});
  };
  const auto r = find_common_point(
      {shifted_square(0, 0), shifted_square(1, 0), shifted_square(0, 1)});
  REQUIRE(r.found);
  CHECK(r.point[0] >= 1.0 - 1e-9);
  CHECK(r.point[0] <= 2.0 + 1e-9);
  CHECK(r.point[1] >= 1.0 - 1e-9);
  CHECK(r.point[1] <= 2.0 + 1e-9);
}

TEST_CASE("simplex boundary family: counter-witness at resolution 1/8") {
  // Three edges of the 2-simplex: each pair shares a vertex, the triple
  // intersection is empty, and the union (the boundary) is not convex.
  const auto family = gen::simplex_faces_family(1);
  REQUIRE(family.size() == 3);
  const auto report = check_ghouila_houri(family, 1.0 / 8);
  CHECK(report.outcome == FamilyOutcome::CounterWitnessFound);
  CHECK_FALSE(report.full_intersection.has_value());
  for (const auto& rec : report.subfamily_intersections) CHECK(rec.nonempty);
  REQUIRE(report.union_convexity.counter_witness.has_value());
  const Vector& w = *report.union_convexity.counter_witness;
  for (const auto& member : family) CHECK_FALSE(contains(member, w, 1e-9));
}

TEST_CASE("translated copies with a common core pass all hypotheses") {
  std::vector<Polytope> family;
  for (int i = 0; i < 4; ++i) {
    const double o = 0.2 * i;
    family.push_back(poly({{o, o}, {o + 2, o}, {o + 2, o + 2}, {o, o + 2}}));
  }
  const auto report = check_ghouila_houri(family, 1.0 / 4);
  CHECK(report.outcome == FamilyOutcome::CommonPointFound);
  REQUIRE(report.full_intersection.has_value());
  for (const auto& member : family)
    CHECK(contains(member, *report.full_intersection, 1e-8));
}

TEST_CASE("generated positive families always yield a common point") {
  Rng rng(31);
  for (int t = 0; t < 50; ++t) {
    const int dim = static_cast<int>(rng.uniform_int(1, 3));
    const int count = static_cast<int>(rng.uniform_int(2, 5));
    const auto family = gen::positive_family(rng, dim, count);
    const auto r = find_common_point(family);
    REQUIRE(r.found);
    for (const auto& member : family) CHECK(contains(member, r.point, 1e-8));
  }
}

TEST_CASE("empty subfamily is reported as a hypothesis failure") {
  const auto family = std::vector<Polytope>{
      testutil::segment1d(0, 1), testutil::segment1d(5, 6),
      testutil::segment1d(0, 6)};
  const auto report = check_ghouila_houri(family, 1.0 / 4);
  CHECK(report.outcome == FamilyOutcome::HypothesisIIFailed);
}

TEST_CASE("family size limits are enforced") {
  CHECK_THROWS_AS(check_ghouila_houri({testutil::segment1d(0, 1)}, 0.25),
                  Error);
}

TEST_CASE("feasibility agrees with the planar brute-force oracle") {
  Rng rng(37);
  int positives = 0, negatives = 0;
  for (int t = 0; t < 50; ++t) {
    std::vector<Polytope> family;
    const int count = static_cast<int>(rng.uniform_int(2, 4));
    const bool make_positive = t % 2 == 0;
    const Vector planted = rng.gaussian_vector(2);
    for (int i = 0; i < count; ++i) {
      const Vector center = make_positive
                                ? planted
                                : vec({5.0 * i, 0.0}) + 0.2 * rng.gaussian_vector(2);
      family.push_back(testutil::random_polytope(rng, 2, 5, center, 1.0));
      if (make_positive) {
        // Guarantee the planted point is a member: add it as a vertex.
        std::vector<Vector> vs;
        for (int j = 0; j < family.back().num_vertices(); ++j)
          vs.push_back(family.back().vertex(j));
        vs.push_back(planted);
        family.back() = Polytope(vs);
      }
    }
    const auto r = find_common_point(family);
    if (r.found) {
      ++positives;
      for (const auto& member : family)
        CHECK(testutil::in_polygon_2d(member, {r.point[0], r.point[1]}, 1e-7));
    } else {
      ++negatives;
      // Grid search must not find a common point either.
      bool grid_hit = false;
      for (double x = -2; x <= 18 && !grid_hit; x += 0.25)
        for (double y = -4; y <= 4 && !grid_hit; y += 0.25) {
          bool all = true;
          for (const auto& member : family)
            all = all && testutil::in_polygon_2d(member, {x, y}, -1e-7);
          grid_hit = all;
        }
      CHECK_FALSE(grid_hit);
    }
  }
  CHECK(positives >= 20);
  CHECK(negatives >= 20);
}
