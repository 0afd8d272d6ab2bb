#pragma once

#include <vector>

#include "convexkit/fixed_points.hpp"
#include "convexkit/kkm.hpp"
#include "convexkit/rng.hpp"
#include "convexkit/types.hpp"
#include "convexkit/vi.hpp"

namespace convexkit::gen {

/// Instance generators for the randomized verification suites. Positive
/// instances are built around planted witnesses (a planted common point,
/// planted interior point, planted stationary vector, ...) so ground truth
/// is known by construction rather than trusted from the code under test.

/// The n+2 facets of the (n+1)-dimensional standard simplex in R^{n+2}:
/// every n+1 of them share a vertex, the full intersection is empty, and
/// the union (the simplex boundary) is not convex.
std::vector<Polytope> simplex_faces_family(int n);

/// Random full-dimensional simplex with d+1 affinely independent vertices.
Polytope random_simplex(Rng& rng, int dim);

/// Corner-cover KKM map on a random simplex: pick an interior point z,
/// set per-vertex thresholds below z's barycentric weights, and take
/// Gamma(x_i) = {barycentric weight of x_i >= t_i}. Every value contains z
/// by construction and the thresholds sum below one, so the map is KKM at
/// any resolution.
FiniteKKMMap star_kkm_map(Rng& rng, int dim);

/// The barycentric cover of the standard 2-simplex with thresholds 1/3;
/// its intersection is exactly (1/3, 1/3, 1/3).
FiniteKKMMap barycentric_cover_map();

/// Positive intersection family: the two smallest members coincide and the
/// rest grow outward by adding vertices, so every subfamily intersection
/// equals the base, the union is the largest member, and a common point is
/// guaranteed around the planted base.
std::vector<Polytope> positive_family(Rng& rng, int dim, int count);

/// Leave-one-out conversion of an intersection family into a finite KKM
/// map: Gamma(x_j) = C_j with x_j a common point of the other members.
FiniteKKMMap family_to_kkm(const std::vector<Polytope>& family,
                           double tol = kDefaultTol);

struct ViInstance {
  BilinearForm a;
  LinearFunctional ell;
  Polytope x_set;
  Vector y0;  // designated element for the a-priori bound
};

/// Random coercive instance: A = R + s I with the constants computed from
/// the spectrum, a random functional, and a random polytope domain.
ViInstance random_vi_instance(Rng& rng, int dim);

/// Random matrix game with entries in [-1, 1].
Eigen::MatrixXd random_game(Rng& rng, int rows, int cols);

struct SelectionInstance {
  Polytope k;
  std::vector<Vector> cover_points;
  std::vector<Ball> open_sets;
};

/// Ball cover of a random polytope, radii picked to guarantee coverage.
SelectionInstance random_selection_instance(Rng& rng, int dim, int balls);

/// Ergodic row-stochastic matrix (uniform mixing floor).
Eigen::MatrixXd random_stochastic_matrix(Rng& rng, int n, double mix = 0.15);

/// Commuting pair of convex-combination polynomials of one stochastic
/// matrix, acting on the probability simplex as distribution maps.
std::vector<AffineMap> stochastic_polynomial_family(Rng& rng,
                                                    const Eigen::MatrixXd& t);

}  // namespace convexkit::gen
