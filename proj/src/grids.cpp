#include "convexkit/grids.hpp"

#include <cmath>

#include "convexkit/errors.hpp"

namespace convexkit {

long simplex_grid_size(int parts, int denom) {
  // C(denom + parts - 1, parts - 1), saturating.
  long result = 1;
  for (int i = 1; i <= parts - 1; ++i) {
    result = result * (denom + i) / i;
    if (result > (1L << 40)) return 1L << 40;
  }
  return result;
}

namespace {

void enumerate(int parts, int remaining, int pos, Eigen::VectorXi& counts,
               int denom, std::vector<Eigen::VectorXd>& out) {
  if (pos == parts - 1) {
    counts[pos] = remaining;
    Eigen::VectorXd w(parts);
    for (int i = 0; i < parts; ++i)
      w[i] = static_cast<double>(counts[i]) / denom;
    out.push_back(w);
    return;
  }
  for (int k = 0; k <= remaining; ++k) {
    counts[pos] = k;
    enumerate(parts, remaining - k, pos + 1, counts, denom, out);
  }
}

}  // namespace

std::vector<Eigen::VectorXd> simplex_grid_weights(int parts, int denom) {
  if (parts < 1 || denom < 1)
    throw Error("simplex grid needs at least one part and step <= 1");
  if (simplex_grid_size(parts, denom) > 5'000'000)
    throw Error("simplex grid too large; coarsen the resolution");
  std::vector<Eigen::VectorXd> out;
  out.reserve(static_cast<size_t>(simplex_grid_size(parts, denom)));
  Eigen::VectorXi counts(parts);
  enumerate(parts, denom, 0, counts, denom, out);
  return out;
}

std::vector<Vector> polytope_sample_grid(const Polytope& p, double resolution,
                                         long cap, int* effective_denom) {
  if (resolution <= 0.0 || resolution > 1.0)
    throw Error("resolution must lie in (0, 1]");
  int denom = std::max(1, static_cast<int>(std::lround(1.0 / resolution)));
  const int parts = p.num_vertices();
  while (denom > 1 && simplex_grid_size(parts, denom) > cap) --denom;
  if (effective_denom) *effective_denom = denom;

  std::vector<Vector> pts;
  const auto weights = simplex_grid_weights(parts, denom);
  pts.reserve(weights.size());
  for (const auto& w : weights) pts.push_back(p.vertex_matrix() * w);
  return pts;
}

std::vector<Vector> box_grid(const Vector& lo, const Vector& hi, int per_axis) {
  const int d = static_cast<int>(lo.size());
  long total = 1;
  for (int i = 0; i < d; ++i) {
    total *= per_axis;
    if (total > 2'000'000) throw Error("box grid too large");
  }
  std::vector<Vector> pts;
  pts.reserve(static_cast<size_t>(total));
  Eigen::VectorXi idx = Eigen::VectorXi::Zero(d);
  for (long t = 0; t < total; ++t) {
    Vector x(d);
    for (int i = 0; i < d; ++i) {
      const double frac =
          per_axis == 1 ? 0.5 : static_cast<double>(idx[i]) / (per_axis - 1);
      x[i] = lo[i] + frac * (hi[i] - lo[i]);
    }
    pts.push_back(x);
    for (int i = 0; i < d; ++i) {
      if (++idx[i] < per_axis) break;
      idx[i] = 0;
    }
  }
  return pts;
}

}  // namespace convexkit
