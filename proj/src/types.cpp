#include "convexkit/types.hpp"

#include <cmath>

namespace convexkit {

bool is_finite(const Vector& v) { return v.allFinite(); }

Polytope::Polytope(const std::vector<Vector>& vertices) {
  if (vertices.empty()) throw Error("polytope needs at least one vertex");
  const auto d = vertices.front().size();
  vertices_.resize(d, static_cast<Eigen::Index>(vertices.size()));
  for (Eigen::Index j = 0; j < vertices_.cols(); ++j) {
    if (vertices[static_cast<size_t>(j)].size() != d)
      throw DimensionMismatch("polytope vertices have mixed dimensions");
    vertices_.col(j) = vertices[static_cast<size_t>(j)];
  }
  check_invariants();
}

Polytope::Polytope(Eigen::MatrixXd vertex_matrix)
    : vertices_(std::move(vertex_matrix)) {
  check_invariants();
}

void Polytope::check_invariants() const {
  if (vertices_.cols() == 0) throw Error("polytope needs at least one vertex");
  if (vertices_.rows() < 1) throw Error("polytope dimension must be >= 1");
  if (!vertices_.allFinite())
    throw Error("polytope vertices must have finite coordinates");
}

std::pair<Vector, Vector> Polytope::bounding_box() const {
  return {vertices_.rowwise().minCoeff(), vertices_.rowwise().maxCoeff()};
}

double Polytope::radius() const {
  const Vector c = barycenter();
  double r = 0.0;
  for (int j = 0; j < num_vertices(); ++j)
    r = std::max(r, (vertices_.col(j) - c).norm());
  return r;
}

bool Polytope::same_vertices(const Polytope& other, double tol) const {
  if (dim() != other.dim() || num_vertices() != other.num_vertices())
    return false;
  return (vertices_ - other.vertices_).cwiseAbs().maxCoeff() <= tol;
}

Hyperplane::Hyperplane(Vector n, double c) : normal(std::move(n)), offset(c) {
  if (normal.norm() <= 0.0) throw Error("hyperplane normal must be nonzero");
}

bool BarycentricCoords::valid(double tol) const {
  if (weights.size() == 0) return false;
  if (weights.minCoeff() < -tol) return false;
  return std::abs(weights.sum() - 1.0) <= tol;
}

}  // namespace convexkit
