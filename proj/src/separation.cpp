#include "convexkit/separation.hpp"

#include "convexkit/intersection.hpp"

namespace convexkit {

SeparationResult separate_point(const Polytope& c, const Vector& x,
                                double tol) {
  if (c.dim() != x.size())
    throw DimensionMismatch("point dimension does not match polytope");
  if (contains(c, x, tol))
    throw PointInsideSet("cannot separate: point lies in the set", x);

  const Projection pr = project(c, x, tol);
  const Vector u = x - pr.point;

  SeparationResult out;
  out.witness_projection = pr.point;
  out.margin = u.squaredNorm();
  out.weak = out.margin <= tol;
  out.hyperplane = Hyperplane(u, u.dot(pr.point));
  return out;
}

SeparationResult separate_sets(const Polytope& k, const Polytope& c,
                               double tol) {
  if (k.dim() != c.dim())
    throw DimensionMismatch("polytopes live in different dimensions");
  const auto common = find_common_point({k, c}, tol);
  if (common.found)
    throw SetsIntersect("cannot separate: the hulls intersect", common.point);

  const Polytope diff = minkowski_difference(c, k);
  const Projection pr = project(diff, Vector::Zero(c.dim()), tol);
  const Vector u = -pr.point;

  SeparationResult out;
  out.witness_projection = pr.point;
  out.margin = u.squaredNorm();
  out.weak = out.margin <= tol;
  // Offset midway inside the certified gap [sup_C <u,.>, sup_C <u,.> + ||u||^2].
  const double sup_c = linear_maximize(c, u).value;
  out.hyperplane = Hyperplane(u, sup_c + 0.5 * out.margin);
  return out;
}

}  // namespace convexkit
