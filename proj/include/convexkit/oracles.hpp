#pragma once

#include <Eigen/Core>
#include <utility>

namespace convexkit::oracles {

/// Verification-side reference routines. These deliberately take different
/// algorithmic routes from the library operations they cross-check: the
/// projections here are accelerated projected gradient with exact sort
/// projection onto the simplex, the stationary distributions come from a
/// singular value decomposition, and game values are certified through
/// pure-strategy bounds. Keep them independent of the solver paths.

/// Euclidean projection of v onto the standard probability simplex.
Eigen::VectorXd project_to_simplex(const Eigen::VectorXd& v);

struct DistanceResult {
  double distance_sq = 0.0;
  Eigen::VectorXd weights_c, weights_k;
  long iterations = 0;
};

/// Squared distance between conv(C) and conv(K) (columns = vertices) by
/// accelerated projected gradient over the product of simplices.
DistanceResult polytope_distance_sq(const Eigen::MatrixXd& c,
                                    const Eigen::MatrixXd& k,
                                    double gap_tol = 1e-10,
                                    long max_iters = 50000);

struct QpResult {
  Eigen::VectorXd point;
  double value = 0.0;
  long iterations = 0;
};

/// Minimize x'Qx + b'x (Q symmetric positive semidefinite) over conv(V)
/// by accelerated projected gradient on barycentric weights.
QpResult quadratic_minimize(const Eigen::MatrixXd& q, const Eigen::VectorXd& b,
                            const Eigen::MatrixXd& v, double gap_tol = 1e-11,
                            long max_iters = 100000);

/// Stationary distribution of a row-stochastic matrix, from the null space
/// of (P' - I).
Eigen::VectorXd stationary_distribution(const Eigen::MatrixXd& p);

/// Pure-strategy certificate for a claimed equilibrium of the game x'My:
/// first = min_j (x'M)_j, second = max_i (M y)_i. The game value lies in
/// [first, second] whenever x, y are valid mixed strategies.
std::pair<double, double> pure_strategy_bounds(const Eigen::MatrixXd& m,
                                               const Eigen::VectorXd& x,
                                               const Eigen::VectorXd& y);

}  // namespace convexkit::oracles
