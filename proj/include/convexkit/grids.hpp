#pragma once

#include <Eigen/Core>
#include <vector>

#include "convexkit/types.hpp"

namespace convexkit {

/// Number of barycentric grid points for `parts` weights at step 1/denom,
/// i.e. compositions of denom into parts nonnegative integers.
long simplex_grid_size(int parts, int denom);

/// All weight vectors w with w_i = k_i/denom, sum k_i = denom.
/// Deterministic lexicographic order.
std::vector<Eigen::VectorXd> simplex_grid_weights(int parts, int denom);

/// Barycentric grid over the polytope's vertices at the given resolution
/// (step = resolution, denom = round(1/resolution)). When the full grid
/// would exceed `cap` points the denominator is coarsened to the largest
/// value that fits; the denominator actually used is written back.
std::vector<Vector> polytope_sample_grid(const Polytope& p, double resolution,
                                         long cap, int* effective_denom);

/// Axis-aligned grid of `per_axis` points per coordinate over [lo, hi].
std::vector<Vector> box_grid(const Vector& lo, const Vector& hi, int per_axis);

}  // namespace convexkit
