#pragma once

#include "convexkit/geometry.hpp"
#include "convexkit/types.hpp"

namespace convexkit {

/// A strict-separation certificate. The normal is deliberately left
/// unnormalized: with u = x - P_C(x) the gap <u,x> - <u,y> equals ||u||^2
/// exactly, and that identity is the certificate. Callers may normalize
/// for display.
struct SeparationResult {
  Hyperplane hyperplane;
  Vector witness_projection;  // P_C(x), or P_{C-K}(0) for two sets
  double margin = 0.0;        // ||u||^2
  /// Set when the separated point sits within tol of the set: separation
  /// still holds but the certified gap is <= tol.
  bool weak = false;
};

/// Separate an exterior point x from conv(C). With y = P_C(x) and
/// u = x - y, every vertex z of C satisfies <u,z> <= <u,y> < <u,x> and the
/// hyperplane {<u,.> = <u,y>} is returned with margin ||u||^2.
/// Throws PointInsideSet when x is in C within tol.
SeparationResult separate_point(const Polytope& c, const Vector& x,
                                double tol = kDefaultTol);

/// Strictly separate two disjoint polytopes via u = -P_{C-K}(0):
///   max over C of <u,.> + ||u||^2  <=  min over K of <u,.> + tol.
/// Throws SetsIntersect (with a common point) when the hulls meet.
SeparationResult separate_sets(const Polytope& k, const Polytope& c,
                               double tol = kDefaultTol);

}  // namespace convexkit
