#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "convexkit/types.hpp"

namespace convexkit {

struct CommonPointResult {
  bool found = false;
  Vector point;
  /// Optimal max-coordinate deviation of the joint feasibility program;
  /// <= tol exactly when `found`. For infeasible families this is the
  /// tightest certificate any common-point candidate can achieve.
  double deviation = 0.0;
};

/// One joint linear program over per-polytope barycentric blocks with the
/// combined points tied together. Returns a point lying in every member
/// within tol, or reports the minimal achievable deviation.
CommonPointResult find_common_point(const std::vector<Polytope>& family,
                                    double tol = kDefaultTol);

struct SubfamilyRecord {
  std::vector<int> indices;
  bool nonempty = false;
  std::optional<Vector> witness;
};

struct UnionConvexityReport {
  double certified_at_resolution = 0.0;
  long pairs_checked = 0;
  long sample_points = 0;
  std::optional<Vector> counter_witness;           // midpoint outside the union
  std::optional<std::pair<Vector, Vector>> witness_pair;
};

enum class FamilyOutcome {
  CommonPointFound,        // hypotheses verified, intersection produced
  CounterWitnessFound,     // union convexity refuted, explaining emptiness
  HypothesisIIFailed,      // some proper subfamily is already empty
  ResolutionInsufficient,  // intersection empty but no witness at this grid
};

struct FamilyReport {
  std::vector<SubfamilyRecord> subfamily_intersections;
  UnionConvexityReport union_convexity;
  std::optional<Vector> full_intersection;
  FamilyOutcome outcome = FamilyOutcome::ResolutionInsufficient;
};

struct GhouilaHouriOptions {
  /// Per-member cap on deterministic union samples; the effective
  /// (coarsened) resolution is reported.
  int per_member_sample_cap = 600;
  long pair_budget = 200000;
  int random_pairs = 2000;
  std::uint64_t seed = 0x9e3779b97f4a7c15ull;
};

/// Check the hypotheses of the finite intersection theorem on a family of
/// 2..12 polytopes: every proper subfamily is probed for a common point,
/// union convexity is certified at the given resolution by midpoint
/// sampling, and depending on what holds either a full common point or a
/// convexity counter-witness is produced.
FamilyReport check_ghouila_houri(const std::vector<Polytope>& family,
                                 double resolution, double tol = kDefaultTol,
                                 const GhouilaHouriOptions& opts = {});

}  // namespace convexkit
