#pragma once

#include <optional>
#include <vector>

#include "convexkit/types.hpp"

namespace convexkit {

/// A finite set-valued map: one polytope value per domain point, all values
/// inside a common ambient polytope.
struct FiniteKKMMap {
  std::vector<Vector> domain_points;
  std::vector<Polytope> values;
  Polytope ambient;

  /// Checks shape, nonemptiness and value-inside-ambient (vertex-wise).
  void validate(double tol = kDefaultTol) const;
};

struct KKMViolation {
  std::vector<int> subset;
  Vector point;  // grid point of conv(subset) covered by no subset value
};

struct KKMCertificate {
  bool certified = false;
  double resolution = 0.0;
  long points_checked = 0;
  std::optional<KKMViolation> violation;
};

/// Exhaustively checks, for every nonempty subset S of domain points, that
/// each barycentric grid point of conv(S) at the given resolution lies in
/// the union of the subset's values. At most 10 domain points.
KKMCertificate verify_kkm(const FiniteKKMMap& map, double resolution,
                          double tol = kDefaultTol);

struct KKMIntersectionResult {
  Vector point;
  double deviation = 0.0;  // joint-program residual certificate
};

/// A point lying in every value and in conv(domain_points) — the sharpened
/// conclusion of the finite intersection property. Throws
/// InfeasibleIntersection (with the tightest deviation) when the joint
/// program cannot reach the tolerance.
KKMIntersectionResult kkm_intersection(const FiniteKKMMap& map,
                                       double tol = kDefaultTol);

struct Ball {
  Vector center;
  double radius = 0.0;
};

/// Continuous selection built from a partition of unity subordinated to an
/// open ball cover: s(x) = sum_i w_i(x) y_i with
/// w_i(x) proportional to max(0, r_i - ||x - c_i||).
class SelectionMap {
 public:
  SelectionMap(std::vector<Vector> cover_points, std::vector<Ball> open_sets);

  Eigen::VectorXd weights(const Vector& x) const;
  Vector operator()(const Vector& x) const;

  const std::vector<Vector>& cover_points() const { return cover_points_; }
  const std::vector<Ball>& open_sets() const { return open_sets_; }

 private:
  std::vector<Vector> cover_points_;
  std::vector<Ball> open_sets_;
};

/// Validates that the balls cover K on a barycentric grid at the given
/// resolution (throws CoverGap with the uncovered point otherwise) and
/// returns the subordinated selection map.
SelectionMap build_selection(std::vector<Vector> cover_points,
                             std::vector<Ball> open_sets, const Polytope& k,
                             double resolution, double tol = kDefaultTol);

}  // namespace convexkit
