#include "convexkit/suites.hpp"

#include <chrono>
#include <cmath>

#include "convexkit/alternatives.hpp"
#include "convexkit/fixed_points.hpp"
#include "convexkit/generators.hpp"
#include "convexkit/geometry.hpp"
#include "convexkit/grids.hpp"
#include "convexkit/intersection.hpp"
#include "convexkit/json_io.hpp"
#include "convexkit/kkm.hpp"
#include "convexkit/matrix_game.hpp"
#include "convexkit/oracles.hpp"
#include "convexkit/separation.hpp"
#include "convexkit/version.hpp"
#include "convexkit/vi.hpp"

namespace convexkit::suites {

using nlohmann::json;

namespace {

std::uint64_t suite_seed(const RunConfig& config, const char* name) {
  // FNV-1a over the suite name, folded into the run seed; suites draw from
  // independent streams so one suite's trial count cannot shift another.
  std::uint64_t h = 1469598103934665603ull;
  for (const char* p = name; *p; ++p) {
    h ^= static_cast<std::uint64_t>(*p);
    h *= 1099511628211ull;
  }
  return h ^ (config.seed * 0x9e3779b97f4a7c15ull + 0x632be59bd9b4e019ull);
}

struct ViolationTracker {
  double worst = 0.0;
  long failures = 0;
  void check(double violation, double allowed) {
    worst = std::max(worst, violation);
    if (violation > allowed) ++failures;
  }
};

BifunctionInstance game_instance(const Eigen::MatrixXd& m, double c = 0.0) {
  BifunctionInstance inst{
      Polytope(Eigen::MatrixXd::Identity(m.rows(), m.rows())),
      Polytope(Eigen::MatrixXd::Identity(m.cols(), m.cols())),
      [m, c](const Vector& x, const Vector& y) { return x.dot(m * y) + c; },
      {},
      BilinearSpec{m, c}};
  inst.tags.usc_in_x = inst.tags.quasiconcave_in_x = true;
  inst.tags.lsc_in_y = inst.tags.quasiconvex_in_y = true;
  return inst;
}

// ---------------------------------------------------------------- lemma1

SuiteResult suite_lemma1(const RunConfig& config) {
  SuiteResult res;
  res.name = "lemma1";
  Rng rng(suite_seed(config, "lemma1"));
  const int per_dim = config.trials("lemma1", 500);

  ViolationTracker chain, margin;
  for (int dim = 1; dim <= 6; ++dim) {
    for (int t = 0; t < per_dim; ++t) {
      const int nv = dim + 1 + static_cast<int>(rng.uniform_int(0, 4));
      const Vector center = rng.gaussian_vector(dim);
      Eigen::MatrixXd verts(dim, nv);
      for (int j = 0; j < nv; ++j)
        verts.col(j) = center + rng.uniform(0.2, 1.2) * rng.unit_vector(dim);
      const Polytope c(verts);
      const Vector x = c.barycenter() +
                       (c.radius() + rng.uniform(0.05, 2.0)) * rng.unit_vector(dim);
      ++res.trials;

      const auto r = separate_point(c, x, config.tol);
      const Vector& u = r.hyperplane.normal;
      const double uy = u.dot(r.witness_projection);
      double worst_slack = 0.0;
      for (int j = 0; j < c.num_vertices(); ++j)
        worst_slack = std::max(worst_slack, u.dot(c.vertex(j)) - uy);
      chain.check(worst_slack, 1e-9);
      if (!(uy < u.dot(x))) ++chain.failures;
      margin.check(std::abs(u.dot(x) - uy - r.margin), 1e-7);
    }
  }
  res.failures = chain.failures + margin.failures;
  res.passed = res.failures == 0;
  res.details = {{"max_chain_slack", chain.worst},
                 {"max_margin_defect", margin.worst}};
  return res;
}

// ----------------------------------------------------------------- prop2

SuiteResult suite_prop2(const RunConfig& config) {
  SuiteResult res;
  res.name = "prop2";
  Rng rng(suite_seed(config, "prop2"));
  const int total = config.trials("prop2", 300);

  ViolationTracker chain, margin;
  for (int t = 0; t < total; ++t) {
    const int dim = 1 + t % 6;
    const int nk = dim + 1 + static_cast<int>(rng.uniform_int(0, 3));
    const int nc = dim + 1 + static_cast<int>(rng.uniform_int(0, 3));
    Eigen::MatrixXd kverts(dim, nk);
    for (int j = 0; j < nk; ++j)
      kverts.col(j) = rng.uniform(0.2, 1.0) * rng.unit_vector(dim);
    const Polytope k(kverts);
    const Vector shift =
        (k.radius() + rng.uniform(1.2, 3.0)) * rng.unit_vector(dim);
    Eigen::MatrixXd cverts(dim, nc);
    for (int j = 0; j < nc; ++j)
      cverts.col(j) = shift + rng.uniform(0.2, 1.0) * rng.unit_vector(dim);
    const Polytope c(cverts);
    ++res.trials;

    SeparationResult r;
    try {
      r = separate_sets(k, c, config.tol);
    } catch (const SetsIntersect&) {
      continue;  // rare overlap from generous radii; not a failure
    }
    const Vector& u = r.hyperplane.normal;
    double sup_c = -1e300, min_k = 1e300;
    for (int j = 0; j < c.num_vertices(); ++j)
      sup_c = std::max(sup_c, u.dot(c.vertex(j)));
    for (int j = 0; j < k.num_vertices(); ++j)
      min_k = std::min(min_k, u.dot(k.vertex(j)));
    chain.check(sup_c + r.margin - min_k, 1e-7);

    const auto oracle =
        oracles::polytope_distance_sq(c.vertex_matrix(), k.vertex_matrix());
    margin.check(std::abs(r.margin - oracle.distance_sq), 1e-6);
  }
  res.failures = chain.failures + margin.failures;
  res.passed = res.failures == 0;
  res.details = {{"max_chain_violation", chain.worst},
                 {"max_margin_vs_oracle", margin.worst}};
  return res;
}

// --------------------------------------------------------- simplex_faces

SuiteResult suite_simplex_faces(const RunConfig& config) {
  SuiteResult res;
  res.name = "simplex_faces";
  json cases = json::array();
  for (int n = 1; n <= 4; ++n) {
    ++res.trials;
    const auto family = gen::simplex_faces_family(n);
    const auto report = check_ghouila_houri(family, 1.0 / 8, config.tol);

    bool ok = report.outcome == FamilyOutcome::CounterWitnessFound;
    ok = ok && !report.full_intersection.has_value();
    long leave_one_out = 0;
    for (const auto& rec : report.subfamily_intersections) {
      ok = ok && rec.nonempty;
      if (static_cast<int>(rec.indices.size()) == n + 1) ++leave_one_out;
    }
    // Exact combinatorics: n+2 subfamilies of size n+1, all nonempty.
    ok = ok && leave_one_out == n + 2;
    ok = ok && report.union_convexity.counter_witness.has_value();
    if (ok) {
      for (const auto& member : family)
        ok = ok && !contains(member, *report.union_convexity.counter_witness,
                             config.tol);
    }
    if (!ok) ++res.failures;
    cases.push_back({{"n", n},
                     {"outcome_counter_witness", ok},
                     {"size_n_plus_1_subfamilies", leave_one_out}});
  }
  res.passed = res.failures == 0;
  res.details = {{"cases", cases}};
  return res;
}

// -------------------------------------------------------------- kkm_star

SuiteResult suite_kkm_star(const RunConfig& config) {
  SuiteResult res;
  res.name = "kkm_star";
  Rng rng(suite_seed(config, "kkm_star"));
  const int per_dim = config.trials("kkm_star", 100);

  ViolationTracker residuals;
  long uncertified = 0, infeasible = 0;
  for (int dim = 1; dim <= 4; ++dim) {
    for (int t = 0; t < per_dim; ++t) {
      ++res.trials;
      const auto map = gen::star_kkm_map(rng, dim);
      const auto cert = verify_kkm(map, 1.0 / 16, config.tol);
      if (!cert.certified) {
        ++uncertified;
        continue;
      }
      try {
        const auto inter = kkm_intersection(map, config.tol);
        residuals.check(inter.deviation, 1e-7);
        bool member = contains(Polytope(map.domain_points), inter.point, 1e-7);
        for (const auto& value : map.values)
          member = member && contains(value, inter.point, 1e-7);
        if (!member) ++residuals.failures;
      } catch (const InfeasibleIntersection&) {
        ++infeasible;
      }
    }
  }
  res.failures = uncertified + infeasible + residuals.failures;
  res.passed = res.failures == 0;
  res.details = {{"uncertified", uncertified},
                 {"infeasible_intersections", infeasible},
                 {"max_residual", residuals.worst}};
  return res;
}

// ------------------------------------------------------- kkm_barycentric

SuiteResult suite_kkm_barycentric(const RunConfig& config) {
  SuiteResult res;
  res.name = "kkm_barycentric";
  res.trials = 1;
  const auto map = gen::barycentric_cover_map();
  const auto cert = verify_kkm(map, config.resolution, config.tol);
  const auto inter = kkm_intersection(map, config.tol);
  Vector target(3);
  target << 1.0 / 3, 1.0 / 3, 1.0 / 3;
  const double err = (inter.point - target).norm();
  res.failures = (cert.certified && err <= 1e-6) ? 0 : 1;
  res.passed = res.failures == 0;
  res.details = {{"certified", cert.certified},
                 {"barycenter_error", err},
                 {"intersection", io::to_json(inter.point)}};
  return res;
}

// ------------------------------------------------------------- selection

SuiteResult suite_selection(const RunConfig& config) {
  SuiteResult res;
  res.name = "selection";
  Rng rng(suite_seed(config, "selection"));
  const int covers = config.trials("selection", 50);

  ViolationTracker hull;
  long subordination_failures = 0;
  for (int t = 0; t < covers; ++t) {
    ++res.trials;
    const int dim = 1 + t % 3;
    const int balls = 2 + t % 5;
    const auto inst = gen::random_selection_instance(rng, dim, balls);
    const auto sel = build_selection(inst.cover_points, inst.open_sets, inst.k,
                                     1.0 / 16, config.tol);

    const Polytope hull_poly(inst.cover_points);
    const BarycentricSolver hull_solver(hull_poly);
    int eff = 0;
    const auto grid = polytope_sample_grid(inst.k, 1.0 / 32, 1000, &eff);
    for (const auto& x : grid) {
      const auto w = sel.weights(x);
      for (Eigen::Index i = 0; i < w.size(); ++i) {
        if (w[i] > 0.0 &&
            !((x - sel.open_sets()[static_cast<size_t>(i)].center).norm() <
              sel.open_sets()[static_cast<size_t>(i)].radius))
          ++subordination_failures;
      }
      hull.check(hull_solver.contains(sel(x), 1e-9) ? 0.0 : 1.0, 0.5);
    }
  }
  res.failures = subordination_failures + hull.failures;
  res.passed = res.failures == 0;
  res.details = {{"subordination_failures", subordination_failures},
                 {"hull_membership_failures", hull.failures}};
  return res;
}

// --------------------------------------------------------------- minimax

SuiteResult suite_minimax(const RunConfig& config) {
  SuiteResult res;
  res.name = "minimax";
  Rng rng(suite_seed(config, "minimax"));
  const int games = config.trials("minimax", 100);

  ViolationTracker value_gap, duality, certificate;
  for (int t = 0; t < games; ++t) {
    ++res.trials;
    const int rows = 2 + static_cast<int>(rng.uniform_int(0, 8));
    const int cols = 2 + static_cast<int>(rng.uniform_int(0, 8));
    const auto m = gen::random_game(rng, rows, cols);
    const auto s = saddle_point(game_instance(m), config.tol);

    // supinf = infsup within 1e-6 (the program pair agrees).
    duality.check(std::abs(s.supinf - s.infsup), 1e-6);

    // Independent certificate: the claimed value is pinched by the
    // pure-strategy bounds at the returned strategies.
    const auto [lo, hi] = oracles::pure_strategy_bounds(m, s.x0, s.y0);
    certificate.check(std::max(s.value - hi, lo - s.value), 0.0 + 1e-6);
    value_gap.check(hi - lo, 2e-6);
  }

  // Named exact games.
  Eigen::MatrixXd pennies(2, 2);
  pennies << 1, -1, -1, 1;
  Eigen::MatrixXd rps(3, 3);
  rps << 0, -1, 1, 1, 0, -1, -1, 1, 0;
  const auto sp = saddle_point(game_instance(pennies), config.tol);
  const auto sr = saddle_point(game_instance(rps), config.tol);
  res.trials += 2;
  long named_failures = 0;
  if (std::abs(sp.value) > 1e-12) ++named_failures;
  if (std::abs(sr.value) > 1e-12) ++named_failures;

  res.failures =
      value_gap.failures + duality.failures + certificate.failures + named_failures;
  res.passed = res.failures == 0;
  res.details = {{"max_duality_gap", duality.worst},
                 {"max_certificate_violation", certificate.worst},
                 {"pennies_value", sp.value},
                 {"rps_value", sr.value}};
  return res;
}

// ------------------------------------------------------------ supinf_gap

SuiteResult suite_supinf_gap(const RunConfig& config) {
  SuiteResult res;
  res.name = "supinf_gap";
  Rng rng(suite_seed(config, "supinf_gap"));
  const int pairs = config.trials("supinf_gap", 50);

  ViolationTracker gap;
  for (int t = 0; t < pairs; ++t) {
    ++res.trials;
    const int n = 2 + static_cast<int>(rng.uniform_int(0, 4));
    const auto m = gen::random_game(rng, n, n);
    const double shift = rng.uniform(0.0, 1.0);
    const auto f = game_instance(m);
    const auto g = game_instance(m, shift);
    try {
      const auto r = supinf_infsup_gap(f, g, {}, config.tol);
      gap.check(r.beta - r.alpha, 1e-7);
    } catch (const TheoremViolation&) {
      ++gap.failures;
    }
  }
  res.failures = gap.failures;
  res.passed = res.failures == 0;
  res.details = {{"max_beta_minus_alpha", gap.worst}};
  return res;
}

// ----------------------------------------------------------- stampacchia

SuiteResult suite_stampacchia(const RunConfig& config) {
  SuiteResult res;
  res.name = "stampacchia";
  Rng rng(suite_seed(config, "stampacchia"));
  const int total = config.trials("stampacchia", 100);

  ViolationTracker residual, uniqueness, projection_match, bound;
  for (int t = 0; t < total; ++t) {
    ++res.trials;
    const int dim = 1 + t % 6;
    const auto inst = gen::random_vi_instance(rng, dim);
    const auto apriori =
        coercivity_bound(inst.a.continuity_C, inst.a.coercivity_alpha,
                         inst.ell.norm, inst.y0.norm());

    const auto [lo, hi] = inst.x_set.bounding_box();
    VIOptions o1;
    o1.tol = config.tol;
    o1.start = lo;
    double bound_violation = 0.0;
    o1.observer = [&](long, const Vector& x) {
      const double trigger = inst.a(x, x - inst.y0) - inst.ell(x - inst.y0);
      if (trigger <= 0.0)
        bound_violation = std::max(bound_violation, x.norm() - apriori.M);
    };
    VIOptions o2;
    o2.tol = config.tol;
    o2.start = hi;

    const auto s1 = stampacchia_solve(inst.a, inst.ell, inst.x_set, o1);
    const auto s2 = stampacchia_solve(inst.a, inst.ell, inst.x_set, o2);

    const Vector fx = inst.a.matrix.transpose() * s1.point - inst.ell.vector;
    double vres = -1e300;
    for (int j = 0; j < inst.x_set.num_vertices(); ++j)
      vres = std::max(vres, fx.dot(s1.point - inst.x_set.vertex(j)));
    residual.check(vres, 1e-8);
    uniqueness.check((s1.point - s2.point).norm(), 1e-6);
    bound.check(bound_violation, 1e-9);

    if (t % 5 == 0) {
      // A = I: the inequality pins exactly the projection of ell.
      BilinearForm id{Eigen::MatrixXd::Identity(dim, dim), 1.0, 1.0};
      const LinearFunctional ell(rng.gaussian_vector(dim) * 2.0);
      VIOptions oid;
      oid.tol = config.tol;
      const auto sid = stampacchia_solve(id, ell, inst.x_set, oid);
      const auto pr = project(inst.x_set, ell.vector, config.tol);
      projection_match.check((sid.point - pr.point).norm(), 1e-8);
    }
  }
  res.failures = residual.failures + uniqueness.failures +
                 projection_match.failures + bound.failures;
  res.passed = res.failures == 0;
  res.details = {{"max_vertex_residual", residual.worst},
                 {"max_two_start_gap", uniqueness.worst},
                 {"max_projection_mismatch", projection_match.worst},
                 {"max_apriori_violation", bound.worst}};
  return res;
}

// -------------------------------------------------------- mazur_schauder

SuiteResult suite_mazur_schauder(const RunConfig& config) {
  SuiteResult res;
  res.name = "mazur_schauder";
  Rng rng(suite_seed(config, "mazur_schauder"));
  const int total = config.trials("mazur_schauder", 40);

  ViolationTracker oracle_gap;
  for (int t = 0; t < total; ++t) {
    ++res.trials;
    const int dim = 1 + t % 4;
    Eigen::MatrixXd half(dim, dim);
    for (int i = 0; i < dim * dim; ++i)
      half(i / dim, i % dim) = rng.uniform(-1.0, 1.0);
    const Eigen::MatrixXd q =
        half.transpose() * half + 0.1 * Eigen::MatrixXd::Identity(dim, dim);
    const Vector b = rng.gaussian_vector(dim);
    const int nv = dim + 2 + static_cast<int>(rng.uniform_int(0, 3));
    Eigen::MatrixXd verts(dim, nv);
    const Vector center = rng.gaussian_vector(dim);
    for (int j = 0; j < nv; ++j)
      verts.col(j) = center + rng.uniform(0.3, 1.5) * rng.unit_vector(dim);
    const Polytope x_set(verts);

    MinimizeOptions mopts;
    mopts.seed = rng.raw();
    const auto mine = mazur_schauder_minimize(
        [&](const Vector& v) { return v.dot(q * v) + b.dot(v); }, x_set,
        1e-7, mopts);
    const auto ref = oracles::quadratic_minimize(q, b, x_set.vertex_matrix());
    oracle_gap.check(std::abs(mine.value - ref.value), 1e-6);
  }

  // The nonsmooth quasiconvex landmark case.
  ++res.trials;
  Eigen::MatrixXd seg(1, 2);
  seg << -1, 2;
  const auto root = mazur_schauder_minimize(
      [](const Vector& v) { return std::sqrt(std::abs(v[0])); }, Polytope(seg),
      1e-7);
  long sqrt_failures = std::abs(root.value) <= 1e-6 ? 0 : 1;

  res.failures = oracle_gap.failures + sqrt_failures;
  res.passed = res.failures == 0;
  res.details = {{"max_oracle_gap", oracle_gap.worst},
                 {"sqrt_norm_value", root.value}};
  return res;
}

// ---------------------------------------------------------- fixed_points

SuiteResult suite_fixed_points(const RunConfig& config) {
  SuiteResult res;
  res.name = "fixed_points";
  Rng rng(suite_seed(config, "fixed_points"));
  const int total = config.trials("fixed_points", 30);

  ViolationTracker stationary, family_res, dual_cert;
  for (int t = 0; t < total; ++t) {
    ++res.trials;
    const int n = 2 + t % 9;
    const auto p = gen::random_stochastic_matrix(rng, n);
    const Polytope simplex(Eigen::MatrixXd::Identity(n, n));
    const AffineMap phi{p.transpose(), Vector::Zero(n)};

    const auto mine = affine_fixed_point(phi, simplex, FixedPointOptions{config.tol, true, 4000000, {}});
    const auto ref = oracles::stationary_distribution(p);
    stationary.check((mine.point - ref).lpNorm<Eigen::Infinity>(), 1e-6);

    // Commuting polynomial family of the same chain.
    AffineFamily family{gen::stochastic_polynomial_family(rng, p), simplex};
    const auto common = common_fixed_point(family, FixedPointOptions{config.tol, true, 4000000, {}});
    for (double r : common.residuals) family_res.check(r, 1e-8);
    stationary.check((common.point - ref).lpNorm<Eigen::Infinity>(), 1e-6);

    // The dual route certificate at the orbit-averaging solution: every
    // coordinate functional +-e_i verifies ell(phi(x0) - x0) <= 1e-6.
    if (t % 3 == 0) {
      FixedPointOptions avg_opts;
      avg_opts.tol = config.tol;
      avg_opts.use_fast_path = false;
      const auto avg = affine_fixed_point(phi, simplex, avg_opts);
      const Vector defect = phi.apply(avg.point) - avg.point;
      for (int i = 0; i < n; ++i) {
        dual_cert.check(defect[i], 1e-6);
        dual_cert.check(-defect[i], 1e-6);
      }
    }
  }
  res.failures = stationary.failures + family_res.failures + dual_cert.failures;
  res.passed = res.failures == 0;
  res.details = {{"max_stationary_error", stationary.worst},
                 {"max_family_residual", family_res.worst},
                 {"max_dual_certificate", dual_cert.worst}};
  return res;
}

// -------------------------------------------------------- kkm_crosscheck

SuiteResult suite_kkm_crosscheck(const RunConfig& config) {
  SuiteResult res;
  res.name = "kkm_crosscheck";
  Rng rng(suite_seed(config, "kkm_crosscheck"));
  const int total = config.trials("kkm_crosscheck", 100);

  long uncertified = 0, infeasible = 0;
  for (int t = 0; t < total; ++t) {
    ++res.trials;
    const int dim = 1 + t % 3;
    const int count = 3 + t % 3;
    const auto family = gen::positive_family(rng, dim, count);
    const auto map = gen::family_to_kkm(family, config.tol);
    const auto cert = verify_kkm(map, config.resolution, config.tol);
    if (!cert.certified) {
      ++uncertified;
      continue;
    }
    try {
      kkm_intersection(map, config.tol);
    } catch (const InfeasibleIntersection&) {
      ++infeasible;
    }
  }
  res.failures = uncertified + infeasible;
  res.passed = res.failures == 0;
  res.details = {{"uncertified", uncertified},
                 {"infeasible_intersections", infeasible}};
  return res;
}

}  // namespace

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> reg = {
      {"lemma1", suite_lemma1},
      {"prop2", suite_prop2},
      {"simplex_faces", suite_simplex_faces},
      {"kkm_star", suite_kkm_star},
      {"kkm_barycentric", suite_kkm_barycentric},
      {"selection", suite_selection},
      {"minimax", suite_minimax},
      {"supinf_gap", suite_supinf_gap},
      {"stampacchia", suite_stampacchia},
      {"mazur_schauder", suite_mazur_schauder},
      {"fixed_points", suite_fixed_points},
      {"kkm_crosscheck", suite_kkm_crosscheck},
  };
  return reg;
}

SuiteResult run_suite(const std::string& name, const RunConfig& config) {
  for (const auto& [n, fn] : registry())
    if (n == name) return fn(config);
  throw Error("unknown suite: " + name);
}

json run_report(const RunConfig& config, const std::vector<std::string>& names) {
  std::vector<std::string> expanded;
  for (const auto& n : names) {
    if (n == "all") {
      for (const auto& [name, fn] : registry()) expanded.push_back(name);
    } else {
      expanded.push_back(n);
    }
  }

  json suites_json = json::array();
  bool all_passed = true;
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& name : expanded) {
    const auto t1 = std::chrono::steady_clock::now();
    const auto result = run_suite(name, config);
    const auto t2 = std::chrono::steady_clock::now();
    all_passed = all_passed && result.passed;
    json entry = {{"suite", result.name},
                  {"passed", result.passed},
                  {"trials", result.trials},
                  {"failures", result.failures},
                  {"details", result.details}};
    if (config.timing)
      entry["timing_ms"] =
          std::chrono::duration<double, std::milli>(t2 - t1).count();
    suites_json.push_back(entry);
  }

  json report = {{"toolkit", "convexkit"},
                 {"version", kVersion},
                 {"subcommand", "verify-suite"},
                 {"config",
                  {{"seed", config.seed},
                   {"tol", config.tol},
                   {"resolution", config.resolution},
                   {"trial_counts", config.trial_counts}}},
                 {"suites", suites_json},
                 {"all_passed", all_passed}};
  if (config.timing)
    report["total_timing_ms"] = std::chrono::duration<double, std::milli>(
                                    std::chrono::steady_clock::now() - t0)
                                    .count();
  return report;
}

}  // namespace convexkit::suites
