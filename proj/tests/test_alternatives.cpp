#include <doctest.h>

#include <cmath>

#include "convexkit/alternatives.hpp"
#include "convexkit/generators.hpp"
#include "convexkit/matrix_game.hpp"
#include "convexkit/oracles.hpp"
#include "helpers.hpp"

using namespace convexkit;
using testutil::poly;
using testutil::vec;

namespace {

BifunctionInstance bilinear_game(const Eigen::MatrixXd& m, double c = 0.0) {
  BifunctionInstance inst{
      testutil::standard_simplex(static_cast<int>(m.rows())),
      testutil::standard_simplex(static_cast<int>(m.cols())),
      [m, c](const Vector& x, const Vector& y) { return x.dot(m * y) + c; },
      {},
      BilinearSpec{m, c}};
  inst.tags.usc_in_x = inst.tags.quasiconcave_in_x = true;
  inst.tags.lsc_in_y = inst.tags.quasiconvex_in_y = true;
  return inst;
}

BifunctionInstance box_instance(
    const Polytope& x, const Polytope& y,
    std::function<double(const Vector&, const Vector&)> f, StructureTags tags) {
  return {x, y, std::move(f), tags, std::nullopt};
}

}  // namespace

TEST_CASE("quasiconvexity validator: norm squared, sqrt, sine") {
  auto norm2 = [](const Vector& v) { return v.squaredNorm(); };
  CHECK(is_quasiconvex_1d(norm2, vec({-3, 1}), vec({2, 5}), 33));

  auto sqrtabs = [](const Vector& v) { return std::sqrt(std::abs(v[0])); };
  CHECK(is_quasiconvex_1d(sqrtabs, vec({-1}), vec({2}), 33));

  auto sine = [](const Vector& v) { return std::sin(v[0]); };
  const auto chk = check_quasiconvex_1d(sine, vec({0}), vec({6.283185307}), 33);
  CHECK_FALSE(chk.ok);
  CHECK(chk.t1 < chk.t2);
  CHECK(chk.t2 < chk.t3);
}

TEST_CASE("infsup alternative: bounded bilinear form gives branch B") {
  const auto box = poly({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
  StructureTags tags;
  tags.lsc_in_x = tags.quasiconvex_in_x = tags.quasiconcave_in_y = true;
  // <x, y> is not quasiconvex in x on all of R^2 but is linear, hence fine.
  auto inst = box_instance(
      box, box, [](const Vector& x, const Vector& y) { return x.dot(y); },
      tags);
  const auto out = infsup_alternative(inst, 2.0);
  CHECK(out.branch == Branch::B);
  // The witness certifies sup_y <x, y> <= 2 on the grid.
  for (double gy : {-1.0, 0.0, 1.0})
    CHECK(out.witness.dot(vec({gy, gy})) <= 2.0 + 1e-9);
}

TEST_CASE("infsup alternative: diagonal exceeds the level, branch A") {
  const auto seg = testutil::segment1d(0, 1);
  StructureTags tags;
  tags.lsc_in_x = tags.quasiconvex_in_x = tags.quasiconcave_in_y = true;
  auto inst = box_instance(
      seg, seg, [](const Vector& x, const Vector&) { return x.squaredNorm(); },
      tags);
  const auto out = infsup_alternative(inst, 0.5);
  CHECK(out.branch == Branch::A);
  CHECK(out.witness[0] * out.witness[0] > 0.5);
  // The fixed-point reading: the witness belongs to its own level section.
  CHECK(inst.eval(out.witness, out.witness) > 0.5);
}

TEST_CASE("infsup alternative at lambda = sup of the diagonal") {
  // With lambda at the diagonal supremum branch A is impossible, and the
  // branch-B witness certifies inf sup <= sup of the diagonal.
  const auto box = poly({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
  StructureTags tags;
  tags.lsc_in_x = tags.quasiconvex_in_x = tags.quasiconcave_in_y = true;
  Rng rng(53);
  for (int t = 0; t < 5; ++t) {
    // Positive semidefinite M makes the diagonal form convex, so its
    // supremum over the box is attained at a corner and is known exactly.
    Eigen::MatrixXd h(2, 2);
    for (int i = 0; i < 4; ++i) h(i / 2, i % 2) = rng.uniform(-1, 1);
    const Eigen::MatrixXd m = h.transpose() * h;
    auto inst = box_instance(
        box, box,
        [m](const Vector& x, const Vector& y) { return x.dot(m * y); }, tags);
    double diag_sup = 0.0;
    for (double a : {-1.0, 1.0})
      for (double b : {-1.0, 1.0}) {
        const Vector x = vec({a, b});
        diag_sup = std::max(diag_sup, x.dot(m * x));
      }
    const auto out = infsup_alternative(inst, diag_sup + 1e-9);
    CHECK(out.branch == Branch::B);
  }
}

TEST_CASE("infsup alternative requires declared tags and containment") {
  const auto seg = testutil::segment1d(0, 1);
  BifunctionInstance bare{
      seg, seg, [](const Vector&, const Vector&) { return 0.0; }, {}, {}};
  CHECK_THROWS_AS(infsup_alternative(bare, 0.0), Error);
}

TEST_CASE("infsup alternative rejects misdeclared structure") {
  const auto seg = testutil::segment1d(0.0, 6.283185307);
  StructureTags tags;
  tags.lsc_in_x = tags.quasiconvex_in_x = tags.quasiconcave_in_y = true;
  auto inst = box_instance(
      seg, seg, [](const Vector& x, const Vector&) { return std::sin(x[0]); },
      tags);
  CHECK_THROWS_AS(infsup_alternative(inst, 100.0), StructureViolation);
}

TEST_CASE("two-function alternative on constants") {
  const auto seg = testutil::segment1d(0, 1);
  StructureTags tags;  // constants satisfy everything
  tags.quasiconcave_in_x = tags.lsc_in_y = tags.quasiconvex_in_y = true;
  auto f = box_instance(seg, seg,
                        [](const Vector&, const Vector&) { return 0.0; }, tags);
  auto g = box_instance(seg, seg,
                        [](const Vector&, const Vector&) { return 1.0; }, tags);
  const auto a = two_function_alternative(f, g, 0.5);
  CHECK(a.branch == Branch::A);
  const auto b = two_function_alternative(f, g, 2.0);
  CHECK(b.branch == Branch::B);
}

TEST_CASE("two-function alternative: matrix game, branch tracks the value") {
  Rng rng(59);
  for (int t = 0; t < 10; ++t) {
    const auto m = gen::random_game(rng, 3, 4);
    const auto inst = bilinear_game(m);
    const auto sol = solve_matrix_game(m);
    const auto below = two_function_alternative(inst, inst, sol.row_value - 0.1);
    CHECK(below.branch == Branch::A);
    const auto above = two_function_alternative(inst, inst, sol.row_value + 0.1);
    CHECK(above.branch == Branch::B);
  }
}

TEST_CASE("two-function alternative rejects f > g") {
  const auto seg = testutil::segment1d(0, 1);
  StructureTags tags;
  auto f = box_instance(seg, seg,
                        [](const Vector&, const Vector&) { return 1.0; }, tags);
  auto g = box_instance(seg, seg,
                        [](const Vector&, const Vector&) { return 0.0; }, tags);
  CHECK_THROWS_AS(two_function_alternative(f, g, 0.5), PrecondViolated);
}

TEST_CASE("supinf gap: shifted pair and constants") {
  Rng rng(61);
  for (int t = 0; t < 10; ++t) {
    const auto m = gen::random_game(rng, 4, 4);
    const double shift = rng.uniform(0.0, 1.0);
    const auto f = bilinear_game(m);
    const auto g = bilinear_game(m, shift);
    const auto gap = supinf_infsup_gap(f, g);
    CHECK(gap.alpha >= gap.beta - 1e-9);
    CHECK(gap.alpha - gap.beta ==
          doctest::Approx(shift).epsilon(1e-6).scale(1.0));
  }
  const auto seg = testutil::segment1d(0, 1);
  StructureTags tags;
  auto c = box_instance(seg, seg,
                        [](const Vector&, const Vector&) { return 0.25; }, tags);
  const auto gap = supinf_infsup_gap(c, c);
  CHECK(gap.alpha == doctest::Approx(0.25));
  CHECK(gap.beta == doctest::Approx(0.25));
}

TEST_CASE("saddle point: matching pennies is exactly solvable") {
  Eigen::MatrixXd m(2, 2);
  m << 1, -1, -1, 1;
  const auto s = saddle_point(bilinear_game(m), 1e-12);
  CHECK(std::abs(s.value) <= 1e-12);
  CHECK((s.x0 - vec({0.5, 0.5})).norm() <= 1e-9);
  CHECK((s.y0 - vec({0.5, 0.5})).norm() <= 1e-9);
}

TEST_CASE("saddle point: rock-paper-scissors is uniform with value zero") {
  Eigen::MatrixXd m(3, 3);
  m << 0, -1, 1, 1, 0, -1, -1, 1, 0;
  const auto s = saddle_point(bilinear_game(m), 1e-12);
  CHECK(std::abs(s.value) <= 1e-12);
  CHECK((s.x0 - vec({1. / 3, 1. / 3, 1. / 3})).norm() <= 1e-8);
  CHECK(std::abs(s.supinf - s.infsup) <= 1e-12);
}

TEST_CASE("saddle point: random games against the pure-strategy certificate") {
  Rng rng(67);
  for (int t = 0; t < 30; ++t) {
    const int rows = static_cast<int>(rng.uniform_int(2, 5));
    const int cols = static_cast<int>(rng.uniform_int(2, 5));
    const auto m = gen::random_game(rng, rows, cols);
    const auto s = saddle_point(bilinear_game(m), 1e-9);
    CHECK(std::abs(s.supinf - s.infsup) <= 1e-9);
    const auto [lo, hi] = oracles::pure_strategy_bounds(m, s.x0, s.y0);
    CHECK(lo >= s.value - 1e-8);
    CHECK(hi <= s.value + 1e-8);
  }
}

TEST_CASE("saddle point on a smooth non-bilinear instance") {
  // f(x, y) = (x - y)^2 - ... has its saddle on the diagonal; use
  // f(x,y) = x^2 - y^2 on [-1,1]^2: concave in neither — instead take
  // f(x,y) = -x^2 + y^2 with x maximizing: saddle at (0, 0), value 0.
  const auto seg = testutil::segment1d(-1, 1);
  StructureTags tags;
  tags.usc_in_x = tags.quasiconcave_in_x = true;
  tags.lsc_in_y = tags.quasiconvex_in_y = true;
  auto inst = box_instance(
      seg, seg,
      [](const Vector& x, const Vector& y) {
        return -x.squaredNorm() + y.squaredNorm();
      },
      tags);
  const auto s = saddle_point(inst, 1e-6);
  CHECK(std::abs(s.value) <= 1e-6);
  CHECK(std::abs(s.x0[0]) <= 1e-3);
  CHECK(std::abs(s.y0[0]) <= 1e-3);
}
