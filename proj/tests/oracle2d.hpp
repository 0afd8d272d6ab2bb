#pragma once

// Test-side planar membership oracle, independent of the library's
// feasibility programs: monotone-chain hull plus half-plane checks.

#include <Eigen/Core>
#include <algorithm>
#include <vector>

#include "convexkit/types.hpp"

namespace testutil {

inline double cross2(const Eigen::Vector2d& o, const Eigen::Vector2d& a,
                     const Eigen::Vector2d& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

inline std::vector<Eigen::Vector2d> convex_hull_2d(
    std::vector<Eigen::Vector2d> pts) {
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const auto& a, const auto& b) {
                          return (a - b).norm() < 1e-12;
                        }),
            pts.end());
  const int n = static_cast<int>(pts.size());
  if (n <= 2) return pts;
  std::vector<Eigen::Vector2d> hull(2 * static_cast<size_t>(n));
  int k = 0;
  for (int i = 0; i < n; ++i) {
    while (k >= 2 && cross2(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (int i = n - 2, lower = k + 1; i >= 0; --i) {
    while (k >= lower && cross2(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(static_cast<size_t>(k - 1));
  return hull;
}

/// Membership in the hull of a 2-d vertex cloud, within `pad`.
inline bool in_polygon_2d(const convexkit::Polytope& p, const Eigen::Vector2d& x,
                          double pad = 1e-9) {
  std::vector<Eigen::Vector2d> pts;
  for (int j = 0; j < p.num_vertices(); ++j)
    pts.emplace_back(p.vertex(j)[0], p.vertex(j)[1]);
  const auto hull = convex_hull_2d(pts);
  if (hull.size() == 1) return (x - hull[0]).norm() <= pad;
  if (hull.size() == 2) {
    // Segment: distance to the segment.
    const Eigen::Vector2d d = hull[1] - hull[0];
    const double t =
        std::clamp((x - hull[0]).dot(d) / d.squaredNorm(), 0.0, 1.0);
    return (x - (hull[0] + t * d)).norm() <= pad;
  }
  const int n = static_cast<int>(hull.size());
  for (int i = 0; i < n; ++i) {
    const auto& a = hull[static_cast<size_t>(i)];
    const auto& b = hull[static_cast<size_t>((i + 1) % n)];
    const Eigen::Vector2d e = b - a;
    if (cross2(a, b, x) < -pad * e.norm()) return false;
  }
  return true;
}

}  // namespace testutil
