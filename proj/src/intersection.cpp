#include "convexkit/intersection.hpp"

#include <algorithm>
#include <cmath>

#include "convexkit/geometry.hpp"
#include "convexkit/grids.hpp"
#include "convexkit/linprog.hpp"
#include "convexkit/rng.hpp"

namespace convexkit {

CommonPointResult find_common_point(const std::vector<Polytope>& family,
                                    double tol) {
  if (family.empty()) throw Error("family must be nonempty");
  const int d = family.front().dim();
  for (const auto& p : family)
    if (p.dim() != d)
      throw DimensionMismatch("family members live in different dimensions");

  const int n = static_cast<int>(family.size());
  if (n == 1) {
    return {true, family[0].vertex(0), 0.0};
  }

  // Variables: one barycentric block per member, then t.
  std::vector<int> offset(static_cast<size_t>(n));
  int nvars = 0;
  for (int i = 0; i < n; ++i) {
    offset[static_cast<size_t>(i)] = nvars;
    nvars += family[static_cast<size_t>(i)].num_vertices();
  }
  const int tcol = nvars++;

  const int nrows = n + 2 * d * (n - 1);
  lp::Problem prob;
  prob.A.setZero(nrows, nvars);
  prob.b.setZero(nrows);
  prob.c.setZero(nvars);
  prob.c[tcol] = 1.0;
  prob.rel.assign(static_cast<size_t>(nrows), lp::Relation::Eq);

  int row = 0;
  for (int i = 0; i < n; ++i) {
    const int ni = family[static_cast<size_t>(i)].num_vertices();
    prob.A.row(row).segment(offset[static_cast<size_t>(i)], ni).setOnes();
    prob.b[row] = 1.0;
    ++row;
  }
  // |V_0 l_0 - V_i l_i| <= t componentwise, i = 1..n-1.
  const auto& v0 = family[0].vertex_matrix();
  for (int i = 1; i < n; ++i) {
    const auto& vi = family[static_cast<size_t>(i)].vertex_matrix();
    const int ni = family[static_cast<size_t>(i)].num_vertices();
    for (int k = 0; k < d; ++k) {
      prob.A.row(row).segment(offset[0], v0.cols()) = v0.row(k);
      prob.A.row(row).segment(offset[static_cast<size_t>(i)], ni) = -vi.row(k);
      prob.A(row, tcol) = -1.0;
      prob.rel[static_cast<size_t>(row)] = lp::Relation::LessEq;
      ++row;
      prob.A.row(row).segment(offset[0], v0.cols()) = v0.row(k);
      prob.A.row(row).segment(offset[static_cast<size_t>(i)], ni) = -vi.row(k);
      prob.A(row, tcol) = 1.0;
      prob.rel[static_cast<size_t>(row)] = lp::Relation::GreaterEq;
      ++row;
    }
  }

  const auto sol = lp::solve(prob);
  if (sol.status != lp::Status::Optimal)
    throw Error("joint common-point program did not solve");

  CommonPointResult out;
  out.deviation = sol.objective;
  out.found = sol.objective <= tol;
  out.point = v0 * sol.x.segment(offset[0], v0.cols());
  return out;
}

namespace {

// First index of a member containing the point, or -1. `first` is tried
// before the others (points sampled from a member are usually still in it).
int member_containing(const std::vector<BarycentricSolver>& solvers,
                      const Vector& x, double tol, int first) {
  const int n = static_cast<int>(solvers.size());
  if (first >= 0 && solvers[static_cast<size_t>(first)].contains(x, tol))
    return first;
  for (int i = 0; i < n; ++i) {
    if (i == first) continue;
    if (solvers[static_cast<size_t>(i)].contains(x, tol)) return i;
  }
  return -1;
}

}  // namespace

FamilyReport check_ghouila_houri(const std::vector<Polytope>& family,
                                 double resolution, double tol,
                                 const GhouilaHouriOptions& opts) {
  const int n = static_cast<int>(family.size());
  if (n < 2 || n > 12)
    throw Error("family size must be between 2 and 12 (subfamily budget)");
  const int d = family.front().dim();
  for (const auto& p : family)
    if (p.dim() != d)
      throw DimensionMismatch("family members live in different dimensions");

  FamilyReport report;

  // (a) every proper subfamily, sizes 1..n-1.
  bool hypothesis_ii = true;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    const int bits = __builtin_popcount(mask);
    if (bits == n) continue;
    SubfamilyRecord rec;
    std::vector<Polytope> sub;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) {
        rec.indices.push_back(i);
        sub.push_back(family[static_cast<size_t>(i)]);
      }
    const auto res = find_common_point(sub, tol);
    rec.nonempty = res.found;
    if (res.found) rec.witness = res.point;
    hypothesis_ii = hypothesis_ii && res.found;
    report.subfamily_intersections.push_back(std::move(rec));
  }

  // (b) union-convexity certification at the requested resolution.
  std::vector<BarycentricSolver> solvers;
  solvers.reserve(static_cast<size_t>(n));
  for (const auto& p : family) solvers.emplace_back(p);

  std::vector<Vector> samples;
  std::vector<int> sample_owner;
  int coarsest_denom = std::max(1, static_cast<int>(std::lround(1.0 / resolution)));
  for (int i = 0; i < n; ++i) {
    int eff = 0;
    auto pts = polytope_sample_grid(family[static_cast<size_t>(i)], resolution,
                                    opts.per_member_sample_cap, &eff);
    coarsest_denom = std::min(coarsest_denom, eff);
    for (auto& x : pts) {
      samples.push_back(std::move(x));
      sample_owner.push_back(i);
    }
  }
  report.union_convexity.certified_at_resolution = 1.0 / coarsest_denom;
  report.union_convexity.sample_points = static_cast<long>(samples.size());

  auto try_pair = [&](size_t a, size_t b) -> bool {
    const Vector mid = 0.5 * (samples[a] + samples[b]);
    const int owner = member_containing(solvers, mid, tol, sample_owner[a]);
    if (owner >= 0) return false;
    report.union_convexity.counter_witness = mid;
    report.union_convexity.witness_pair = {samples[a], samples[b]};
    return true;
  };

  long checked = 0;
  bool refuted = false;
  const size_t m = samples.size();
  for (size_t a = 0; a < m && !refuted; ++a) {
    for (size_t b = a + 1; b < m && !refuted; ++b) {
      if (checked >= opts.pair_budget) break;
      ++checked;
      refuted = try_pair(a, b);
    }
    if (checked >= opts.pair_budget) break;
  }
  if (!refuted) {
    Rng rng(opts.seed);
    for (int r = 0; r < opts.random_pairs && !refuted; ++r) {
      const auto a = static_cast<size_t>(rng.uniform_int(0, static_cast<long>(m) - 1));
      const auto b = static_cast<size_t>(rng.uniform_int(0, static_cast<long>(m) - 1));
      if (a == b) continue;
      ++checked;
      refuted = try_pair(a, b);
    }
  }
  report.union_convexity.pairs_checked = checked;

  // (c) resolve the outcome.
  const auto full = find_common_point(family, tol);
  if (full.found) report.full_intersection = full.point;

  if (!hypothesis_ii) {
    report.outcome = FamilyOutcome::HypothesisIIFailed;
  } else if (full.found) {
    report.outcome = FamilyOutcome::CommonPointFound;
  } else if (refuted) {
    report.outcome = FamilyOutcome::CounterWitnessFound;
  } else {
    // The theorem guarantees a counter-witness exists; this grid missed it.
    report.outcome = FamilyOutcome::ResolutionInsufficient;
  }
  return report;
}

}  // namespace convexkit
