#pragma once

#include <Eigen/Dense>
#include <vector>

#include "convexkit/rng.hpp"
#include "convexkit/types.hpp"

namespace testutil {

using convexkit::Polytope;
using convexkit::Vector;

inline Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

inline Polytope poly(std::initializer_list<std::initializer_list<double>> vs) {
  std::vector<Vector> verts;
  for (const auto& v : vs) verts.push_back(vec(v));
  return Polytope(verts);
}

inline Polytope unit_square() {
  return poly({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

inline Polytope segment1d(double a, double b) { return poly({{a}, {b}}); }

/// Standard probability simplex in R^n (vertices = basis vectors).
inline Polytope standard_simplex(int n) {
  return Polytope(Eigen::MatrixXd::Identity(n, n));
}

/// Random polytope: nv vertices in a ball of the given radius around center.
inline Polytope random_polytope(convexkit::Rng& rng, int dim, int nv,
                                const Vector& center, double radius) {
  Eigen::MatrixXd verts(dim, nv);
  for (int j = 0; j < nv; ++j)
    verts.col(j) = center + radius * rng.uniform(0.2, 1.0) * rng.unit_vector(dim);
  return Polytope(verts);
}

/// Row-stochastic matrix with a uniform mixing floor, hence ergodic.
inline Eigen::MatrixXd random_stochastic(convexkit::Rng& rng, int n,
                                         double mix = 0.15) {
  Eigen::MatrixXd p(n, n);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
      p(i, j) = rng.uniform(0.05, 1.0);
      s += p(i, j);
    }
    p.row(i) /= s;
  }
  return (1.0 - mix) * p + mix * Eigen::MatrixXd::Constant(n, n, 1.0 / n);
}

}  // namespace testutil
