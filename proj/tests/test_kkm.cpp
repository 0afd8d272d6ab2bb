#include <doctest.h>

#include <cmath>

#include "convexkit/generators.hpp"
#include "convexkit/geometry.hpp"
#include "convexkit/kkm.hpp"
#include "helpers.hpp"

using namespace convexkit;
using testutil::poly;
using testutil::vec;

TEST_CASE("barycentric cover certifies and intersects at the barycenter") {
  const auto map = gen::barycentric_cover_map();
  const auto cert = verify_kkm(map, 1.0 / 16);
  CHECK(cert.certified);
  CHECK(cert.points_checked > 0);

  const auto inter = kkm_intersection(map);
  CHECK((inter.point - vec({1.0 / 3, 1.0 / 3, 1.0 / 3})).norm() <= 1e-6);
}

TEST_CASE("shrunk value breaks the cover and the violation is located") {
  auto map = gen::barycentric_cover_map();
  // Tighten the first value to {weight_0 >= 0.9}.
  const double t = 0.9;
  Eigen::MatrixXd verts(3, 3);
  verts.col(0) = map.ambient.vertex(0);
  verts.col(1) = t * map.ambient.vertex(0) + (1 - t) * map.ambient.vertex(1);
  verts.col(2) = t * map.ambient.vertex(0) + (1 - t) * map.ambient.vertex(2);
  map.values[0] = Polytope(verts);

  const auto cert = verify_kkm(map, 1.0 / 16);
  CHECK_FALSE(cert.certified);
  REQUIRE(cert.violation.has_value());
  // The violating point is covered by no value of its subset.
  for (int idx : cert.violation->subset)
    CHECK_FALSE(contains(map.values[static_cast<size_t>(idx)],
                         cert.violation->point, 1e-9));
}

TEST_CASE("single-point map is the induction base case") {
  FiniteKKMMap map{{vec({0.5, 0.5})},
                   {poly({{0, 0}, {1, 0}, {1, 1}, {0, 1}})},
                   testutil::unit_square()};
  const auto cert = verify_kkm(map, 1.0 / 4);
  CHECK(cert.certified);
  const auto inter = kkm_intersection(map);
  CHECK((inter.point - vec({0.5, 0.5})).norm() <= 1e-9 + 1.0);  // in value & hull
  CHECK(contains(map.values[0], inter.point, 1e-8));
}

TEST_CASE("corner-cover maps certify and intersect across dimensions") {
  Rng rng(41);
  for (int dim = 1; dim <= 3; ++dim) {
    for (int t = 0; t < 10; ++t) {
      const auto map = gen::star_kkm_map(rng, dim);
      const auto cert = verify_kkm(map, 1.0 / 8);
      CHECK(cert.certified);
      const auto inter = kkm_intersection(map);
      for (const auto& value : map.values)
        CHECK(contains(value, inter.point, 1e-7));
      CHECK(contains(Polytope(map.domain_points), inter.point, 1e-7));
    }
  }
}

TEST_CASE("positive families convert to certified KKM maps") {
  Rng rng(43);
  for (int t = 0; t < 10; ++t) {
    const int dim = static_cast<int>(rng.uniform_int(1, 2));
    const auto family = gen::positive_family(rng, dim, 4);
    const auto map = gen::family_to_kkm(family);
    const auto cert = verify_kkm(map, 1.0 / 8);
    CHECK(cert.certified);
    CHECK_NOTHROW(kkm_intersection(map));
  }
}

TEST_CASE("selection: single ball gives the constant map") {
  const auto k = testutil::unit_square();
  const auto sel = build_selection({vec({3, 4})},
                                   {{vec({0.5, 0.5}), 2.0}}, k, 1.0 / 8);
  CHECK((sel(vec({0.1, 0.9})) - vec({3, 4})).norm() <= 1e-12);
}

TEST_CASE("selection: symmetric two-ball cover on a segment") {
  const auto k = testutil::segment1d(0, 1);
  const auto sel = build_selection({vec({0}), vec({1})},
                                   {{vec({0}), 0.7}, {vec({1}), 0.7}}, k,
                                   1.0 / 16);
  CHECK(std::abs(sel(vec({0.5}))[0] - 0.5) <= 1e-12);
}

TEST_CASE("selection: subordination, range and a Lipschitz estimate") {
  const auto k = testutil::segment1d(0, 1);
  const auto sel = build_selection({vec({0}), vec({1})},
                                   {{vec({0}), 0.7}, {vec({1}), 0.7}}, k,
                                   1.0 / 16);
  double lipschitz = 0.0;
  Vector prev = sel(vec({0.0}));
  const int grid = 1000;
  for (int i = 0; i <= grid; ++i) {
    const Vector x = vec({static_cast<double>(i) / grid});
    const auto w = sel.weights(x);
    for (Eigen::Index j = 0; j < w.size(); ++j) {
      if (w[j] > 0.0)
        CHECK((x - sel.open_sets()[static_cast<size_t>(j)].center).norm() <
              sel.open_sets()[static_cast<size_t>(j)].radius);
    }
    const Vector s = sel(x);
    CHECK(s[0] >= -1e-12);
    CHECK(s[0] <= 1.0 + 1e-12);
    if (i > 0) lipschitz = std::max(lipschitz, (s - prev).norm() * grid);
    prev = s;
  }
  // Finite-difference slope stays bounded on the grid.
  CHECK(lipschitz <= 10.0);
}

TEST_CASE("selection: cover gaps are rejected with a witness") {
  const auto k = testutil::segment1d(0, 1);
  CHECK_THROWS_AS(build_selection({vec({0})}, {{vec({0}), 0.3}}, k, 1.0 / 16),
                  CoverGap);
}

TEST_CASE("kkm map validation rejects escaping values") {
  FiniteKKMMap map{{vec({0.0})},
                   {testutil::segment1d(0, 3)},
                   testutil::segment1d(0, 1)};
  CHECK_THROWS_AS(map.validate(), Error);
}
