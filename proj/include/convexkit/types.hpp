#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "convexkit/errors.hpp"

namespace convexkit {

using Vector = Eigen::VectorXd;

/// Absolute tolerance threaded through all predicates unless overridden.
inline constexpr double kDefaultTol = 1e-9;

/// Compact convex set given as the convex hull of finitely many vertices.
/// Redundant vertices are permitted; single-vertex and degenerate
/// (lower-dimensional) polytopes are legal everywhere.
class Polytope {
 public:
  explicit Polytope(const std::vector<Vector>& vertices);
  explicit Polytope(Eigen::MatrixXd vertex_matrix);  // dim x n, column = vertex

  int dim() const { return static_cast<int>(vertices_.rows()); }
  int num_vertices() const { return static_cast<int>(vertices_.cols()); }

  /// dim x n matrix whose columns are the vertices.
  const Eigen::MatrixXd& vertex_matrix() const { return vertices_; }
  Vector vertex(int i) const { return vertices_.col(i); }

  Vector barycenter() const { return vertices_.rowwise().mean(); }

  /// Componentwise (lo, hi) over the vertex set.
  std::pair<Vector, Vector> bounding_box() const;

  /// Radius of the vertex set around its barycenter.
  double radius() const;

  bool same_vertices(const Polytope& other, double tol) const;

 private:
  void check_invariants() const;
  Eigen::MatrixXd vertices_;
};

/// { z : <normal, z> = offset } with a nonzero normal.
struct Hyperplane {
  Vector normal;
  double offset = 0.0;

  Hyperplane() = default;
  Hyperplane(Vector n, double c);

  double evaluate(const Vector& z) const { return normal.dot(z) - offset; }
};

/// Convex-combination weights over the vertices of an associated polytope.
struct BarycentricCoords {
  Eigen::VectorXd weights;

  /// Weights must be >= -tol and sum to 1 within tol.
  bool valid(double tol = kDefaultTol) const;
};

bool is_finite(const Vector& v);

}  // namespace convexkit
