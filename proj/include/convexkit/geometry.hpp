#pragma once

#include <Eigen/Dense>
#include <optional>

#include "convexkit/types.hpp"

namespace convexkit {

/// Reusable membership tester for one polytope. Affinely independent
/// vertex sets get an exact barycentric solve off a cached factorization;
/// everything else falls back to a linear feasibility program. Build one
/// of these when testing many points against the same polytope.
class BarycentricSolver {
 public:
  explicit BarycentricSolver(const Polytope& p);

  /// True iff some convex combination of the vertices is within tol of x
  /// in the max norm.
  bool contains(const Vector& x, double tol = kDefaultTol) const;

  /// Minimal max-coordinate deviation between x and the polytope, from the
  /// feasibility program. Always uses the LP route.
  double deviation(const Vector& x) const;

  /// Convex weights reproducing x within tol, when they exist.
  std::optional<BarycentricCoords> weights(const Vector& x,
                                           double tol = kDefaultTol) const;

 private:
  Eigen::MatrixXd verts_;                    // dim x n
  Eigen::MatrixXd lifted_;                   // [V; 1], (dim+1) x n
  bool unique_path_ = false;                 // columns affinely independent
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr_;
};

bool contains(const Polytope& p, const Vector& x, double tol = kDefaultTol);

struct Projection {
  Vector point;              // nearest point of the polytope
  double distance = 0.0;     // Euclidean distance to x
  Eigen::VectorXd weights;   // convex weights of `point` over the vertices
  long iterations = 0;
  double gap = 0.0;          // final linear-optimality gap certificate
};

/// Euclidean projection onto conv(P) by conditional gradient with away
/// steps and exact line search. Terminates when the vertex-wise optimality
/// gap max_z <x - y, z - y> drops below tol/2 (or the iterate is within
/// tol/2 of x). Throws NonConvergence with the achieved gap on budget
/// exhaustion. `warm` seeds the weights, e.g. from a previous projection.
Projection project(const Polytope& p, const Vector& x,
                   double tol = kDefaultTol,
                   const Eigen::VectorXd* warm = nullptr);

/// Vertex set {c - k} over all vertex pairs; conv equals conv(C) - conv(K).
Polytope minkowski_difference(const Polytope& c, const Polytope& k);

struct LinearMax {
  Vector vertex;
  double value = 0.0;
  int index = 0;
};

/// Maximize <u, .> over the vertices (= over the hull); ties go to the
/// lowest vertex index.
LinearMax linear_maximize(const Polytope& p, const Vector& u);

}  // namespace convexkit
