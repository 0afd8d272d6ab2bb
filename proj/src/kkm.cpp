#include "convexkit/kkm.hpp"

#include <cmath>

#include "convexkit/geometry.hpp"
#include "convexkit/grids.hpp"
#include "convexkit/intersection.hpp"

namespace convexkit {

void FiniteKKMMap::validate(double tol) const {
  if (domain_points.empty()) throw Error("KKM map needs domain points");
  if (values.size() != domain_points.size())
    throw Error("KKM map needs one value per domain point");
  const int d = ambient.dim();
  for (const auto& x : domain_points)
    if (x.size() != d)
      throw DimensionMismatch("domain point dimension mismatch");
  const BarycentricSolver amb(ambient);
  for (const auto& val : values) {
    if (val.dim() != d) throw DimensionMismatch("value dimension mismatch");
    for (int j = 0; j < val.num_vertices(); ++j)
      if (!amb.contains(val.vertex(j), std::max(tol, 1e-8)))
        throw Error("a value vertex escapes the ambient polytope");
  }
}

KKMCertificate verify_kkm(const FiniteKKMMap& map, double resolution,
                          double tol) {
  map.validate(tol);
  const int n = static_cast<int>(map.domain_points.size());
  if (n > 10) throw Error("subset enumeration capped at 10 domain points");
  const int denom =
      std::max(1, static_cast<int>(std::lround(1.0 / resolution)));

  std::vector<BarycentricSolver> solvers;
  solvers.reserve(map.values.size());
  for (const auto& v : map.values) solvers.emplace_back(v);

  KKMCertificate cert;
  cert.resolution = 1.0 / denom;

  const int d = map.ambient.dim();
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> subset;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) subset.push_back(i);
    const int k = static_cast<int>(subset.size());

    Eigen::MatrixXd pts(d, k);
    for (int j = 0; j < k; ++j)
      pts.col(j) = map.domain_points[static_cast<size_t>(subset[static_cast<size_t>(j)])];

    for (const auto& w : simplex_grid_weights(k, denom)) {
      const Vector x = pts * w;
      ++cert.points_checked;
      bool covered = false;
      for (int j = 0; j < k && !covered; ++j)
        covered = solvers[static_cast<size_t>(subset[static_cast<size_t>(j)])]
                      .contains(x, tol);
      if (!covered) {
        cert.certified = false;
        cert.violation = KKMViolation{subset, x};
        return cert;
      }
    }
  }
  cert.certified = true;
  return cert;
}

KKMIntersectionResult kkm_intersection(const FiniteKKMMap& map, double tol) {
  map.validate(tol);
  std::vector<Polytope> family = map.values;
  const int d = map.ambient.dim();
  Eigen::MatrixXd hull(d, map.domain_points.size());
  for (size_t j = 0; j < map.domain_points.size(); ++j)
    hull.col(static_cast<Eigen::Index>(j)) = map.domain_points[j];
  family.emplace_back(std::move(hull));

  const auto res = find_common_point(family, tol);
  if (!res.found)
    throw InfeasibleIntersection(
        "joint program infeasible at tolerance: KKM violation below the "
        "certification resolution or tolerance failure",
        res.deviation);
  return {res.point, res.deviation};
}

SelectionMap::SelectionMap(std::vector<Vector> cover_points,
                           std::vector<Ball> open_sets)
    : cover_points_(std::move(cover_points)), open_sets_(std::move(open_sets)) {
  if (cover_points_.empty() || cover_points_.size() != open_sets_.size())
    throw Error("selection needs one cover point per ball");
}

Eigen::VectorXd SelectionMap::weights(const Vector& x) const {
  const auto n = static_cast<Eigen::Index>(open_sets_.size());
  Eigen::VectorXd w(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& ball = open_sets_[static_cast<size_t>(i)];
    // Distance from x to the complement of the open ball.
    w[i] = std::max(0.0, ball.radius - (x - ball.center).norm());
  }
  const double total = w.sum();
  if (total <= 0.0)
    throw CoverGap("point lies in no ball of the cover", x);
  return w / total;
}

Vector SelectionMap::operator()(const Vector& x) const {
  const Eigen::VectorXd w = weights(x);
  Vector s = Vector::Zero(cover_points_.front().size());
  for (Eigen::Index i = 0; i < w.size(); ++i)
    s += w[i] * cover_points_[static_cast<size_t>(i)];
  return s;
}

SelectionMap build_selection(std::vector<Vector> cover_points,
                             std::vector<Ball> open_sets, const Polytope& k,
                             double resolution, double) {
  SelectionMap map(std::move(cover_points), std::move(open_sets));
  int eff = 0;
  const auto grid = polytope_sample_grid(k, resolution, 200000, &eff);
  for (const auto& x : grid) {
    bool inside = false;
    for (const auto& ball : map.open_sets()) {
      if ((x - ball.center).norm() < ball.radius) {
        inside = true;
        break;
      }
    }
    if (!inside) throw CoverGap("grid point of K lies in no ball", x);
  }
  return map;
}

}  // namespace convexkit
