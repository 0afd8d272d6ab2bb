#pragma once

#include <optional>
#include <vector>

#include "convexkit/types.hpp"

namespace convexkit {

/// phi(x) = A x + b.
struct AffineMap {
  Eigen::MatrixXd A;
  Vector b;

  Vector apply(const Vector& x) const { return A * x + b; }
  int dim() const { return static_cast<int>(A.rows()); }
};

/// Pairwise-commuting affine self-maps of a common compact convex domain.
struct AffineFamily {
  std::vector<AffineMap> maps;
  Polytope domain;

  /// Certifies the self-map property vertex-wise (NotSelfMap) and pairwise
  /// commutativity A_i A_j = A_j A_i, A_i b_j + b_i = A_j b_i + b_j
  /// (CommutativityViolated).
  void validate(double tol = kDefaultTol) const;
};

struct FixedPointOptions {
  double tol = kDefaultTol;
  bool use_fast_path = true;
  long max_matvecs = 4'000'000;
  std::optional<Vector> start;
};

struct FixedPointResult {
  Vector point;
  double residual = 0.0;  // ||phi(x) - x||, re-verified at return
  bool used_fast_path = false;
  long matvecs = 0;
};

/// Fixed point of an affine self-map of a compact polytope. Fast path:
/// solve (I - A) x = b exactly when the system is uniquely solvable and
/// the solution lands in X. Otherwise restarted running means of the orbit
/// from the vertex barycenter, which for affine self-maps damp every
/// non-unit eigenmode. Throws NotSelfMap / NonConvergence.
FixedPointResult affine_fixed_point(const AffineMap& phi, const Polytope& x_set,
                                    const FixedPointOptions& opts = {});

/// V-representation of {x in X : phi(x) = x}, by enumerating basic feasible
/// solutions of the barycentric system. Empty optional when the enumeration
/// budget is exceeded; throws EmptySlice when the slice has no vertices.
std::optional<Polytope> fixed_point_slice(const Polytope& x_set,
                                          const AffineMap& phi,
                                          double tol = kDefaultTol);

struct CommonFixedPointResult {
  Vector point;
  std::vector<double> residuals;  // per map, each <= tol
  /// True when every stage used an explicit re-vertexified slice; false
  /// when the orbit-averaging fallback carried some stage.
  bool exact_slices = true;
};

/// Common fixed point of an abelian family, computed stage by stage: fix
/// the first map, slice the domain by its fixed-point subspace, verify the
/// next map preserves the slice, recurse.
CommonFixedPointResult common_fixed_point(const AffineFamily& family,
                                          const FixedPointOptions& opts = {});

}  // namespace convexkit
