#include "convexkit/cli.hpp"

#include <CLI11.hpp>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "convexkit/alternatives.hpp"
#include "convexkit/fixed_points.hpp"
#include "convexkit/intersection.hpp"
#include "convexkit/json_io.hpp"
#include "convexkit/kkm.hpp"
#include "convexkit/separation.hpp"
#include "convexkit/suites.hpp"
#include "convexkit/version.hpp"
#include "convexkit/vi.hpp"

namespace convexkit::cli {

using nlohmann::json;

namespace {

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open input file: " + path);
  return json::parse(in);  // json::parse_error carries the byte position
}

std::string digest_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

/// Small instances are echoed verbatim; large ones are digested so reports
/// stay compact but still pin their inputs.
json instance_echo(const json& instance) {
  const std::string s = instance.dump();
  if (s.size() <= 2048) return instance;
  return json{{"digest_fnv1a64", digest_hex(s)}, {"bytes", s.size()}};
}

struct Invocation {
  suites::RunConfig config;
  bool timing = false;
  std::string output_path;
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
};

json envelope(const Invocation& inv, const std::string& subcommand,
              json instance, json outcome) {
  json report = {{"toolkit", "convexkit"},
                 {"version", kVersion},
                 {"subcommand", subcommand},
                 {"config",
                  {{"seed", inv.config.seed},
                   {"tol", inv.config.tol},
                   {"resolution", inv.config.resolution}}},
                 {"instance", std::move(instance)},
                 {"outcome", std::move(outcome)}};
  if (inv.timing)
    report["timing_ms"] = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - inv.start)
                              .count();
  return report;
}

void emit(const Invocation& inv, const json& report, std::ostream& out) {
  if (!inv.output_path.empty()) {
    std::ofstream f(inv.output_path);
    if (!f) throw Error("cannot write report to " + inv.output_path);
    f << report.dump(2) << "\n";
  } else {
    out << report.dump(2) << "\n";
  }
}

// ------------------------------------------------------------ bifunctions

StructureTags tags_for_builtin(const std::string& name) {
  StructureTags tags;
  if (name == "bilinear") {
    tags.usc_in_x = tags.quasiconcave_in_x = true;
    tags.lsc_in_x = tags.quasiconvex_in_x = true;  // linear in each slot
    tags.lsc_in_y = tags.quasiconvex_in_y = true;
    tags.quasiconcave_in_y = true;
  } else if (name == "quadratic_gap" || name == "shifted_norm_gap") {
    tags.lsc_in_x = tags.quasiconvex_in_x = true;
    tags.quasiconcave_in_y = true;
  }
  return tags;
}

BifunctionInstance bifunction_from_json(const json& spec,
                                        std::optional<Polytope> x,
                                        std::optional<Polytope> y) {
  const std::string name = spec.at("name").get<std::string>();
  if (name == "bilinear") {
    const Eigen::MatrixXd m = io::matrix_from_json(spec.at("matrix"));
    const double c = spec.value("constant", 0.0);
    Polytope xs = x ? *x : Polytope(Eigen::MatrixXd::Identity(m.rows(), m.rows()));
    Polytope ys = y ? *y : Polytope(Eigen::MatrixXd::Identity(m.cols(), m.cols()));
    return {std::move(xs), std::move(ys),
            [m, c](const Vector& a, const Vector& b) { return a.dot(m * b) + c; },
            tags_for_builtin(name), BilinearSpec{m, c}};
  }
  if (!x || !y) throw Error("builtin '" + name + "' needs X and Y polytopes");
  if (name == "quadratic_gap") {
    const Eigen::MatrixXd q = io::matrix_from_json(spec.at("Q"));
    const Vector b = io::vector_from_json(spec.at("b"));
    auto phi = [q, b](const Vector& v) { return v.dot(q * v) + b.dot(v); };
    return {*x, *y,
            [phi](const Vector& a, const Vector& c) { return phi(a) - phi(c); },
            tags_for_builtin(name), std::nullopt};
  }
  if (name == "shifted_norm_gap") {
    const Vector center = io::vector_from_json(spec.at("center"));
    auto phi = [center](const Vector& v) { return (v - center).norm(); };
    return {*x, *y,
            [phi](const Vector& a, const Vector& c) { return phi(a) - phi(c); },
            tags_for_builtin(name), std::nullopt};
  }
  throw Error("unknown bifunction builtin: " + name);
}

std::function<double(const Vector&)> functional_from_json(const json& spec) {
  const std::string name = spec.at("name").get<std::string>();
  if (name == "quadratic") {
    const Eigen::MatrixXd q = io::matrix_from_json(spec.at("Q"));
    const Vector b = io::vector_from_json(spec.at("b"));
    return [q, b](const Vector& v) { return v.dot(q * v) + b.dot(v); };
  }
  if (name == "sqrt_norm") {
    const Vector c = io::vector_from_json(spec.at("center"));
    return [c](const Vector& v) { return std::sqrt((v - c).norm()); };
  }
  if (name == "norm2") {
    const Vector c = io::vector_from_json(spec.at("center"));
    return [c](const Vector& v) { return (v - c).squaredNorm(); };
  }
  throw Error("unknown functional builtin: " + name);
}

// ------------------------------------------------------------ subcommands

int run_separate(Invocation& inv, const std::string& set_path,
                 const std::string& point_path, const std::string& from_path,
                 std::ostream& out) {
  const json set_json = load_json_file(set_path);
  const Polytope c = io::polytope_from_json(set_json);

  if (!point_path.empty()) {
    const json pt_json = load_json_file(point_path);
    const Vector x = io::vector_from_json(pt_json);
    const json instance = {{"set", set_json}, {"point", pt_json}};
    try {
      const auto r = separate_point(c, x, inv.config.tol);
      emit(inv, envelope(inv, "separate", instance_echo(instance),
                         {{"normal", io::to_json(r.hyperplane.normal)},
                          {"offset", r.hyperplane.offset},
                          {"projection", io::to_json(r.witness_projection)},
                          {"margin", r.margin},
                          {"weak", r.weak}}),
           out);
      return kOk;
    } catch (const PointInsideSet& e) {
      emit(inv, envelope(inv, "separate", instance_echo(instance),
                         {{"error", "PointInsideSet"},
                          {"witness", io::to_json(e.point)}}),
           out);
      return kNegativeCertificate;
    }
  }
  if (from_path.empty())
    throw Error("separate needs --point or --from alongside --set");
  const json from_json = load_json_file(from_path);
  const Polytope k = io::polytope_from_json(from_json);
  const json instance = {{"set", set_json}, {"from", from_json}};
  try {
    const auto r = separate_sets(k, c, inv.config.tol);
    emit(inv, envelope(inv, "separate", instance_echo(instance),
                       {{"normal", io::to_json(r.hyperplane.normal)},
                        {"offset", r.hyperplane.offset},
                        {"projection", io::to_json(r.witness_projection)},
                        {"margin", r.margin},
                        {"weak", r.weak}}),
         out);
    return kOk;
  } catch (const SetsIntersect& e) {
    emit(inv, envelope(inv, "separate", instance_echo(instance),
                       {{"error", "SetsIntersect"},
                        {"witness", io::to_json(e.witness)}}),
         out);
    return kNegativeCertificate;
  }
}

int run_klee_check(Invocation& inv, const std::string& family_path,
                   std::ostream& out) {
  const json fam_json = load_json_file(family_path);
  std::vector<Polytope> family;
  for (const auto& p : fam_json.at("polytopes"))
    family.push_back(io::polytope_from_json(p));

  const auto report =
      check_ghouila_houri(family, inv.config.resolution, inv.config.tol);

  json subs = json::array();
  for (const auto& rec : report.subfamily_intersections) {
    json entry = {{"indices", rec.indices}, {"nonempty", rec.nonempty}};
    if (rec.witness) entry["witness"] = io::to_json(*rec.witness);
    subs.push_back(entry);
  }
  json convexity = {
      {"certified_at_resolution", report.union_convexity.certified_at_resolution},
      {"pairs_checked", report.union_convexity.pairs_checked},
      {"sample_points", report.union_convexity.sample_points}};
  if (report.union_convexity.counter_witness)
    convexity["counter_witness"] =
        io::to_json(*report.union_convexity.counter_witness);

  json outcome = {{"subfamily_intersections", subs},
                  {"union_convexity", convexity}};
  if (report.full_intersection)
    outcome["full_intersection"] = io::to_json(*report.full_intersection);

  switch (report.outcome) {
    case FamilyOutcome::CommonPointFound:
      outcome["status"] = "common_point_found";
      emit(inv, envelope(inv, "klee-check", instance_echo(fam_json), outcome), out);
      return kOk;
    case FamilyOutcome::CounterWitnessFound:
      outcome["status"] = "union_not_convex";
      emit(inv, envelope(inv, "klee-check", instance_echo(fam_json), outcome), out);
      return kNegativeCertificate;
    case FamilyOutcome::HypothesisIIFailed:
      outcome["status"] = "subfamily_empty";
      emit(inv, envelope(inv, "klee-check", instance_echo(fam_json), outcome), out);
      return kNegativeCertificate;
    case FamilyOutcome::ResolutionInsufficient:
    default:
      outcome["status"] = "resolution_insufficient";
      emit(inv, envelope(inv, "klee-check", instance_echo(fam_json), outcome), out);
      return kFailure;
  }
}

int run_kkm_verify(Invocation& inv, const std::string& map_path,
                   std::ostream& out) {
  const json map_json = load_json_file(map_path);
  const FiniteKKMMap map = io::kkm_map_from_json(map_json);
  const double resolution = map_json.value("resolution", inv.config.resolution);

  const auto cert = verify_kkm(map, resolution, inv.config.tol);
  json outcome = {{"certified", cert.certified},
                  {"resolution", cert.resolution},
                  {"points_checked", cert.points_checked}};
  if (cert.certified) {
    const auto inter = kkm_intersection(map, inv.config.tol);
    outcome["intersection_point"] = io::to_json(inter.point);
    outcome["intersection_residual"] = inter.deviation;
    emit(inv, envelope(inv, "kkm-verify", instance_echo(map_json), outcome), out);
    return kOk;
  }
  outcome["violation"] = {{"subset", cert.violation->subset},
                          {"point", io::to_json(cert.violation->point)}};
  emit(inv, envelope(inv, "kkm-verify", instance_echo(map_json), outcome), out);
  return kNegativeCertificate;
}

int run_alternative(Invocation& inv, const std::string& path,
                    std::ostream& out) {
  const json spec = load_json_file(path);
  std::optional<Polytope> x, y;
  if (spec.contains("X")) x = io::polytope_from_json(spec.at("X"));
  if (spec.contains("Y")) y = io::polytope_from_json(spec.at("Y"));
  const double lambda = spec.at("lambda").get<double>();
  const auto f = bifunction_from_json(spec.at("f"), x, y);

  try {
    AlternativeOutcome result;
    if (spec.contains("g")) {
      const auto g = bifunction_from_json(spec.at("g"), x, y);
      result = two_function_alternative(f, g, lambda, {}, inv.config.tol);
    } else {
      result = infsup_alternative(f, lambda, {}, inv.config.tol);
    }
    emit(inv,
         envelope(inv, "alternative", instance_echo(spec),
                  {{"branch", result.branch == Branch::A ? "A" : "B"},
                   {"witness", io::to_json(result.witness)},
                   {"checked_points", result.certificate.checked_points},
                   {"max_violation", result.certificate.max_violation}}),
         out);
    return kOk;
  } catch (const PrecondViolated& e) {
    emit(inv, envelope(inv, "alternative", instance_echo(spec),
                       {{"error", "PrecondViolated"},
                        {"x", io::to_json(e.x)},
                        {"y", io::to_json(e.y)},
                        {"f", e.f_value},
                        {"g", e.g_value}}),
         out);
    return kNegativeCertificate;
  }
}

int run_minimax(Invocation& inv, const std::string& path, std::ostream& out) {
  const json spec = load_json_file(path);
  const Eigen::MatrixXd m = io::matrix_from_json(spec.at("matrix"));
  if (spec.contains("row_simplex") &&
      spec.at("row_simplex").get<int>() != m.rows())
    throw DimensionMismatch("row_simplex does not match the matrix rows");
  if (spec.contains("col_simplex") &&
      spec.at("col_simplex").get<int>() != m.cols())
    throw DimensionMismatch("col_simplex does not match the matrix columns");

  BifunctionInstance inst{
      Polytope(Eigen::MatrixXd::Identity(m.rows(), m.rows())),
      Polytope(Eigen::MatrixXd::Identity(m.cols(), m.cols())),
      [m](const Vector& a, const Vector& b) { return a.dot(m * b); },
      tags_for_builtin("bilinear"),
      BilinearSpec{m, 0.0}};
  const auto s = saddle_point(inst, inv.config.tol);
  emit(inv,
       envelope(inv, "minimax", instance_echo(spec),
                {{"row_strategy", io::to_json(s.x0)},
                 {"col_strategy", io::to_json(s.y0)},
                 {"value", s.value},
                 {"supinf", s.supinf},
                 {"infsup", s.infsup}}),
       out);
  return kOk;
}

int run_vi_solve(Invocation& inv, const std::string& path, std::ostream& out) {
  const json spec = load_json_file(path);
  const Eigen::MatrixXd a = io::matrix_from_json(spec.at("A"));
  const Vector ell_vec = io::vector_from_json(spec.at("ell"));
  const Polytope x_set = io::polytope_from_json(spec.at("X"));
  const double tol = spec.value("tol", inv.config.tol);

  BilinearForm form;
  form.matrix = a;
  form.continuity_C = a.operatorNorm() + 1e-12;
  form.coercivity_alpha =
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(0.5 * (a + a.transpose()))
          .eigenvalues()
          .minCoeff() -
      1e-12;
  if (form.coercivity_alpha <= 0.0) {
    emit(inv, envelope(inv, "vi-solve", instance_echo(spec),
                       {{"error", "NonpositiveAlpha"},
                        {"coercivity_alpha", form.coercivity_alpha}}),
         out);
    return kNegativeCertificate;
  }

  const LinearFunctional ell(ell_vec);
  VIOptions opts;
  opts.tol = tol;
  const auto sol = stampacchia_solve(form, ell, x_set, opts);
  emit(inv,
       envelope(inv, "vi-solve", instance_echo(spec),
                {{"solution", io::to_json(sol.point)},
                 {"residual", sol.residual},
                 {"iterations", sol.iterations},
                 {"continuity_C", form.continuity_C},
                 {"coercivity_alpha", form.coercivity_alpha}}),
       out);
  return kOk;
}

int run_minimize(Invocation& inv, const std::string& path, std::ostream& out) {
  const json spec = load_json_file(path);
  const auto phi = functional_from_json(spec.at("functional"));
  const Polytope x_set = io::polytope_from_json(spec.at("X"));
  const double tol = spec.value("tol", std::max(inv.config.tol, 1e-7));

  try {
    const auto r = mazur_schauder_minimize(phi, x_set, tol);
    emit(inv,
         envelope(inv, "minimize", instance_echo(spec),
                  {{"minimizer", io::to_json(r.xbar)},
                   {"value", r.value},
                   {"evaluations", r.evaluations},
                   {"certificate_violation", r.certificate_violation}}),
         out);
    return kOk;
  } catch (const QuasiconvexityViolated& e) {
    emit(inv, envelope(inv, "minimize", instance_echo(spec),
                       {{"error", "QuasiconvexityViolated"},
                        {"segment_a", io::to_json(e.segment_a)},
                        {"segment_b", io::to_json(e.segment_b)}}),
         out);
    return kNegativeCertificate;
  }
}

int run_fixed_point(Invocation& inv, const std::string& path,
                    std::ostream& out) {
  const json spec = load_json_file(path);
  const Polytope x_set = io::polytope_from_json(spec.at("X"));
  std::vector<AffineMap> maps;
  for (const auto& m : spec.at("maps"))
    maps.push_back(io::affine_map_from_json(m));
  if (maps.empty()) throw Error("fixed-point needs at least one map");

  FixedPointOptions opts;
  opts.tol = inv.config.tol;
  try {
    if (maps.size() == 1) {
      const auto r = affine_fixed_point(maps.front(), x_set, opts);
      emit(inv,
           envelope(inv, "fixed-point", instance_echo(spec),
                    {{"fixed_point", io::to_json(r.point)},
                     {"residual", r.residual},
                     {"fast_path", r.used_fast_path}}),
           out);
      return kOk;
    }
    AffineFamily family{std::move(maps), x_set};
    const auto r = common_fixed_point(family, opts);
    emit(inv,
         envelope(inv, "fixed-point", instance_echo(spec),
                  {{"fixed_point", io::to_json(r.point)},
                   {"residuals", r.residuals},
                   {"exact_slices", r.exact_slices}}),
         out);
    return kOk;
  } catch (const NotSelfMap& e) {
    emit(inv, envelope(inv, "fixed-point", instance_echo(spec),
                       {{"error", "NotSelfMap"},
                        {"vertex_index", e.vertex_index},
                        {"vertex_image", io::to_json(e.vertex_image)}}),
         out);
    return kNegativeCertificate;
  } catch (const CommutativityViolated& e) {
    emit(inv, envelope(inv, "fixed-point", instance_echo(spec),
                       {{"error", "CommutativityViolated"},
                        {"pair", {e.i, e.j}},
                        {"defect", e.defect}}),
         out);
    return kNegativeCertificate;
  }
}

int run_verify_suite(Invocation& inv, const std::vector<std::string>& names,
                     std::ostream& out) {
  inv.config.timing = inv.timing;
  const json report = suites::run_report(
      inv.config, names.empty() ? std::vector<std::string>{"all"} : names);
  emit(inv, report, out);
  return report.at("all_passed").get<bool>() ? kOk : kFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"convexkit: finite-dimensional convex-analysis toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  Invocation inv;
  std::string config_path;
  app.add_option("--config", config_path, "JSON config merged under flags");
  auto* seed_opt = app.add_option("--seed", inv.config.seed, "RNG seed");
  auto* tol_opt = app.add_option("--tol", inv.config.tol, "numeric tolerance")
                      ->envname("CONVEXKIT_TOL");
  auto* res_opt = app.add_option("--resolution", inv.config.resolution,
                                 "grid certification resolution");
  auto* out_opt = app.add_option("--output", inv.output_path,
                                 "report file (default: stdout)");
  app.add_flag("--timing", inv.timing, "add wall-clock timings to the report");

  std::string set_path, point_path, from_path, family_path, map_path,
      inst_path;
  std::vector<std::string> suite_names;
  std::vector<std::string> trial_overrides;

  auto* sep = app.add_subcommand("separate", "strictly separate a point or polytope from a polytope");
  sep->add_option("--set", set_path, "polytope JSON (the set C)")->required();
  sep->add_option("--point", point_path, "vector JSON to separate from C");
  sep->add_option("--from", from_path, "polytope JSON (the compact set K)");

  auto* klee = app.add_subcommand("klee-check", "finite intersection theorem checker");
  klee->add_option("--family", family_path, "family JSON {\"polytopes\": [...]}")->required();

  auto* kkmv = app.add_subcommand("kkm-verify", "certify a finite KKM map and compute its intersection");
  kkmv->add_option("--map", map_path, "KKM map JSON")->required();

  auto* alt = app.add_subcommand("alternative", "nonlinear alternative for one or two bifunctions");
  alt->add_option("--instance", inst_path, "instance JSON")->required();

  auto* mm = app.add_subcommand("minimax", "matrix game saddle point via the program pair");
  mm->add_option("--game", inst_path, "game JSON {\"matrix\": [[...]]}")->required();

  auto* vi = app.add_subcommand("vi-solve", "Stampacchia variational inequality");
  vi->add_option("--instance", inst_path, "instance JSON {A, ell, X}")->required();

  auto* mini = app.add_subcommand("minimize", "quasiconvex minimization over a polytope");
  mini->add_option("--instance", inst_path, "instance JSON {functional, X}")->required();

  auto* fp = app.add_subcommand("fixed-point", "affine fixed points and commuting families");
  fp->add_option("--instance", inst_path, "instance JSON {maps, X}")->required();

  auto* vs = app.add_subcommand("verify-suite", "randomized verification suites");
  vs->add_option("--suite", suite_names, "suite name or 'all' (repeatable)");
  vs->add_option("--trials", trial_overrides,
                 "per-suite trial override name=count (repeatable)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream os;
    const int code = app.exit(e, os, os);
    (code == 0 ? out : err) << os.str();
    return code == 0 ? kOk : kFailure;
  }

  try {
    if (!config_path.empty()) {
      // Config file fills whatever explicit flags did not set.
      const json cfg = load_json_file(config_path);
      if (seed_opt->count() == 0 && cfg.contains("seed"))
        inv.config.seed = cfg.at("seed").get<std::uint64_t>();
      if (tol_opt->count() == 0 && cfg.contains("tol"))
        inv.config.tol = cfg.at("tol").get<double>();
      if (res_opt->count() == 0 && cfg.contains("resolution"))
        inv.config.resolution = cfg.at("resolution").get<double>();
      if (out_opt->count() == 0 && cfg.contains("output_path"))
        inv.output_path = cfg.at("output_path").get<std::string>();
      if (cfg.contains("trial_counts"))
        for (const auto& [k, v] : cfg.at("trial_counts").items())
          inv.config.trial_counts[k] = v.get<int>();
    }
    for (const auto& ov : trial_overrides) {
      const auto eq = ov.find('=');
      if (eq == std::string::npos)
        throw Error("trial override must look like suite=count");
      inv.config.trial_counts[ov.substr(0, eq)] =
          std::stoi(ov.substr(eq + 1));
    }
    if (inv.config.tol <= 0.0) throw Error("tolerance must be positive");
    if (inv.config.resolution <= 0.0 || inv.config.resolution > 1.0)
      throw Error("resolution must lie in (0, 1]");
    inv.config.output_path = inv.output_path;

    if (sep->parsed()) return run_separate(inv, set_path, point_path, from_path, out);
    if (klee->parsed()) return run_klee_check(inv, family_path, out);
    if (kkmv->parsed()) return run_kkm_verify(inv, map_path, out);
    if (alt->parsed()) return run_alternative(inv, inst_path, out);
    if (mm->parsed()) return run_minimax(inv, inst_path, out);
    if (vi->parsed()) return run_vi_solve(inv, inst_path, out);
    if (mini->parsed()) return run_minimize(inv, inst_path, out);
    if (fp->parsed()) return run_fixed_point(inv, inst_path, out);
    if (vs->parsed()) return run_verify_suite(inv, suite_names, out);
    throw Error("no subcommand selected");
  } catch (const json::parse_error& e) {
    json report = envelope(inv, "error", json::object(),
                           {{"error", "MalformedJson"},
                            {"message", e.what()},
                            {"byte", e.byte}});
    emit(inv, report, out);
    err << "malformed JSON at byte " << e.byte << ": " << e.what() << "\n";
    return kMalformedJson;
  } catch (const DimensionMismatch& e) {
    emit(inv, envelope(inv, "error", json::object(),
                       {{"error", "DimensionMismatch"}, {"message", e.what()}}),
         out);
    err << "dimension mismatch: " << e.what() << "\n";
    return kDimensionMismatch;
  } catch (const std::exception& e) {
    emit(inv, envelope(inv, "error", json::object(),
                       {{"error", "Failure"}, {"message", e.what()}}),
         out);
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace convexkit::cli
