#include <doctest.h>

#include <cmath>

#include "convexkit/generators.hpp"
#include "convexkit/geometry.hpp"
#include "convexkit/oracles.hpp"
#include "convexkit/vi.hpp"
#include "helpers.hpp"

using namespace convexkit;
using testutil::poly;
using testutil::vec;

TEST_CASE("coercivity bound: gamma = 0 collapses the radical") {
  const auto b = coercivity_bound(1.0, 1.0, 0.0, 1.0);
  CHECK(b.beta == doctest::Approx(1.0));
  CHECK(b.gamma == doctest::Approx(0.0));
  CHECK(b.M == doctest::Approx(1.0));
}

TEST_CASE("coercivity bound: direct evaluation of the formula") {
  const auto b = coercivity_bound(2.0, 1.0, 1.0, 1.0);
  CHECK(b.beta == doctest::Approx(3.0));
  CHECK(b.gamma == doctest::Approx(1.0));
  CHECK(b.M == doctest::Approx(0.5 * (3.0 + std::sqrt(13.0))).epsilon(1e-12));
}

TEST_CASE("coercivity bound rejects alpha <= 0") {
  CHECK_THROWS_AS(coercivity_bound(1.0, 0.0, 1.0, 1.0), NonpositiveAlpha);
}

TEST_CASE("bilinear form validation") {
  BilinearForm good{Eigen::MatrixXd::Identity(2, 2), 1.0, 1.0};
  CHECK_NOTHROW(good.validate());
  BilinearForm bad_c{Eigen::MatrixXd::Identity(2, 2) * 3.0, 1.0, 1.0};
  CHECK_THROWS_AS(bad_c.validate(), Error);
  BilinearForm bad_alpha{Eigen::MatrixXd::Identity(2, 2), 1.0, 2.0};
  CHECK_THROWS_AS(bad_alpha.validate(), Error);
}

TEST_CASE("stampacchia: identity form with zero functional at the origin") {
  const auto box = poly({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
  BilinearForm a{Eigen::MatrixXd::Identity(2, 2), 1.0, 1.0};
  const auto sol = stampacchia_solve(a, LinearFunctional(vec({0, 0})), box);
  CHECK(sol.point.norm() <= 1e-8);
  CHECK(sol.residual <= 1e-9);
}

TEST_CASE("stampacchia: identity form equals the projection of ell") {
  BilinearForm a{Eigen::MatrixXd::Identity(2, 2), 1.0, 1.0};
  const auto sq = testutil::unit_square();
  const auto sol = stampacchia_solve(a, LinearFunctional(vec({2, 2})), sq);
  CHECK((sol.point - vec({1, 1})).norm() <= 1e-8);
  const auto pr = project(sq, vec({2, 2}));
  CHECK((sol.point - pr.point).norm() <= 1e-8);
}

TEST_CASE("stampacchia: 1-d obstacle pins the left endpoint") {
  BilinearForm a{Eigen::MatrixXd::Identity(1, 1), 1.0, 1.0};
  const auto sol =
      stampacchia_solve(a, LinearFunctional(vec({0})), testutil::segment1d(1, 2));
  CHECK(sol.point[0] == doctest::Approx(1.0).epsilon(1e-8));
  // The inequality as stated: a(x, x - y) - ell(x - y) <= 0 for all y.
  for (double y = 1.0; y <= 2.0; y += 0.1)
    CHECK(sol.point[0] * (sol.point[0] - y) <= 1e-9);
}

TEST_CASE("stampacchia: uniqueness via two starts and residual certificates") {
  Rng rng(71);
  for (int t = 0; t < 20; ++t) {
    const int dim = static_cast<int>(rng.uniform_int(1, 4));
    const auto inst = gen::random_vi_instance(rng, dim);
    const auto [lo, hi] = inst.x_set.bounding_box();

    VIOptions o1;
    o1.start = lo;
    VIOptions o2;
    o2.start = hi;
    const auto s1 = stampacchia_solve(inst.a, inst.ell, inst.x_set, o1);
    const auto s2 = stampacchia_solve(inst.a, inst.ell, inst.x_set, o2);
    CHECK((s1.point - s2.point).norm() <= 1e-6);
    CHECK(s1.residual <= 1e-9);

    // Vertex residual re-checked directly.
    const Vector fx = inst.a.matrix.transpose() * s1.point - inst.ell.vector;
    for (int j = 0; j < inst.x_set.num_vertices(); ++j)
      CHECK(fx.dot(s1.point - inst.x_set.vertex(j)) <= 1e-8);
  }
}

TEST_CASE("stampacchia: iterates respect the a-priori bound when triggered") {
  Rng rng(73);
  for (int t = 0; t < 10; ++t) {
    const int dim = static_cast<int>(rng.uniform_int(1, 3));
    const auto inst = gen::random_vi_instance(rng, dim);
    const auto bound = coercivity_bound(inst.a.continuity_C,
                                        inst.a.coercivity_alpha,
                                        inst.ell.norm, inst.y0.norm());
    VIOptions opts;
    auto f_trigger = [&](const Vector& x) {
      return inst.a(x, x - inst.y0) - inst.ell(x - inst.y0);
    };
    bool violated = false;
    opts.observer = [&](long, const Vector& x) {
      if (f_trigger(x) <= 0.0 && x.norm() > bound.M + 1e-9) violated = true;
    };
    stampacchia_solve(inst.a, inst.ell, inst.x_set, opts);
    CHECK_FALSE(violated);
  }
}

TEST_CASE("stampacchia: monotone contraction toward a converged reference") {
  Rng rng(79);
  const auto inst = gen::random_vi_instance(rng, 2);
  VIOptions ref_opts;
  ref_opts.tol = 1e-12;
  const Vector ref = stampacchia_solve(inst.a, inst.ell, inst.x_set, ref_opts).point;

  const double q = std::sqrt(1.0 - std::pow(inst.a.coercivity_alpha /
                                            inst.a.continuity_C, 2));
  std::vector<double> dists;
  VIOptions opts;
  opts.observer = [&](long, const Vector& x) {
    dists.push_back((x - ref).norm());
  };
  stampacchia_solve(inst.a, inst.ell, inst.x_set, opts);
  for (size_t k = 0; k + 1 < dists.size(); ++k)
    CHECK(dists[k + 1] <= q * dists[k] + 1e-9);
}

TEST_CASE("mazur-schauder: quadratic over a shifted box") {
  const auto box = poly({{1, 1}, {2, 1}, {2, 2}, {1, 2}});
  const auto r = mazur_schauder_minimize(
      [](const Vector& v) { return v.squaredNorm(); }, box, 1e-8);
  CHECK((r.xbar - vec({1, 1})).norm() <= 1e-6);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("mazur-schauder: sqrt norm attains zero") {
  const auto r = mazur_schauder_minimize(
      [](const Vector& v) { return std::sqrt(std::abs(v[0])); },
      testutil::segment1d(-1, 2), 1e-7);
  CHECK(std::abs(r.value) <= 1e-6);
  CHECK(std::abs(r.xbar[0]) <= 1e-6);
}

TEST_CASE("mazur-schauder: random convex quadratics match the oracle") {
  Rng rng(83);
  for (int t = 0; t < 15; ++t) {
    const int dim = static_cast<int>(rng.uniform_int(1, 3));
    Eigen::MatrixXd half(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) half(i, j) = rng.uniform(-1, 1);
    const Eigen::MatrixXd q =
        half.transpose() * half + 0.1 * Eigen::MatrixXd::Identity(dim, dim);
    const Vector b = rng.gaussian_vector(dim);
    const auto x_set =
        testutil::random_polytope(rng, dim, dim + 3, rng.gaussian_vector(dim), 1.5);

    const auto mine = mazur_schauder_minimize(
        [&](const Vector& v) { return v.dot(q * v) + b.dot(v); }, x_set, 1e-7);
    const auto ref = oracles::quadratic_minimize(q, b, x_set.vertex_matrix());
    CHECK(mine.value <= ref.value + 1e-6);
    CHECK(mine.value >= ref.value - 1e-6);
  }
}

TEST_CASE("mazur-schauder: quasiconvexity violations carry a witness") {
  CHECK_THROWS_AS(mazur_schauder_minimize(
                      [](const Vector& v) { return std::sin(v[0]); },
                      testutil::segment1d(0, 6.283185307), 1e-8),
                  QuasiconvexityViolated);
}

TEST_CASE("mazur-schauder: coercive descriptor truncates and minimizes") {
  CoerciveDomain dom;
  dom.dim = 2;
  // phi = ||x - (1,1)||^2: phi(x) > L outside radius sqrt(L) + |(1,1)|.
  dom.radius_for_level = [](double level) {
    return std::sqrt(std::max(level, 0.0)) + 2.0;
  };
  const auto r = mazur_schauder_minimize(
      [](const Vector& v) { return (v - vec({1, 1})).squaredNorm(); }, dom,
      1e-7);
  CHECK((r.xbar - vec({1, 1})).norm() <= 1e-4);
  CHECK(r.value <= 1e-7);
}

TEST_CASE("mazur-schauder: missing radius is rejected") {
  CoerciveDomain dom;
  dom.dim = 1;
  CHECK_THROWS_AS(mazur_schauder_minimize(
                      [](const Vector& v) { return v.squaredNorm(); }, dom,
                      1e-8),
                  CoercivityRadiusMissing);
}
