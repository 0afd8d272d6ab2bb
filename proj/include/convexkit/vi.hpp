#pragma once

#include <functional>
#include <optional>

#include "convexkit/types.hpp"

namespace convexkit {

/// Bilinear form a(x, z) = x' A z with certified continuity and coercivity
/// constants: |a(x,z)| <= C ||x|| ||z|| and a(x,x) >= alpha ||x||^2.
struct BilinearForm {
  Eigen::MatrixXd matrix;
  double continuity_C = 0.0;
  double coercivity_alpha = 0.0;

  double operator()(const Vector& x, const Vector& z) const {
    return x.dot(matrix * z);
  }

  /// Checks the constants against the spectrum: C >= ||A||_2 - tol,
  /// 0 < alpha <= lambda_min((A + A')/2) + tol.
  void validate(double tol = kDefaultTol) const;
};

/// ell(x) = <vector, x> with its norm carried alongside.
struct LinearFunctional {
  Vector vector;
  double norm = 0.0;

  explicit LinearFunctional(Vector v) : vector(std::move(v)), norm(vector.norm()) {}
  LinearFunctional(Vector v, double n);

  double operator()(const Vector& x) const { return vector.dot(x); }
};

struct CoercivityBound {
  double beta = 0.0;
  double gamma = 0.0;
  double M = 0.0;  // (beta + sqrt(beta^2 + 4 gamma)) / 2
};

/// A-priori bound on the norm of any x with a(x,x) <= a(x,y0) + ell(x-y0):
/// beta = (C ||y0|| + ||ell||)/alpha, gamma = ||ell|| ||y0|| / alpha.
/// Throws NonpositiveAlpha when alpha <= 0.
CoercivityBound coercivity_bound(double continuity_C, double alpha,
                                 double ell_norm, double y0_norm);

struct VIOptions {
  double tol = kDefaultTol;
  long max_iterations = 500000;
  std::optional<Vector> start;
  /// Called with (iteration, current iterate); used by verification suites
  /// to watch a-priori bounds along the trajectory.
  std::function<void(long, const Vector&)> observer;
};

struct VISolution {
  Vector point;
  /// max over vertices y of a(x, x - y) - ell(x - y); <= tol on success.
  double residual = 0.0;
  long iterations = 0;
};

/// Unique solution of a(xbar, xbar - y) <= ell(xbar) - ell(y) for all y in
/// conv(X), by the projected contraction x <- P_X(x - rho (A'x - ell)) with
/// rho = alpha / C^2. Affineness in y means vertex checks certify the hull.
VISolution stampacchia_solve(const BilinearForm& a, const LinearFunctional& ell,
                             const Polytope& x_set, const VIOptions& opts = {});

/// Unbounded domain descriptor for coercive minimization: for a level L,
/// radius_for_level(L) must return R with phi(x) > L whenever ||x|| > R.
struct CoerciveDomain {
  int dim = 0;
  std::function<double(double)> radius_for_level;
};

struct MinimizeOptions {
  int restarts = 5;
  int sweeps = 200;
  std::uint64_t seed = 0xA11CE;
  bool validate_quasiconvexity = true;
};

struct MinimizeResult {
  Vector xbar;
  double value = 0.0;
  long evaluations = 0;
  /// max over verification samples of value - phi(sample); <= tol.
  double certificate_violation = 0.0;
};

/// Minimize a quasiconvex functional over a compact polytope by
/// coordinate-segment search restarted from seeded points, with grid
/// refinement as fallback. Validates quasiconvexity along sampled segments
/// first (QuasiconvexityViolated carries a witness segment).
MinimizeResult mazur_schauder_minimize(
    const std::function<double(const Vector&)>& phi, const Polytope& x_set,
    double tol = kDefaultTol, const MinimizeOptions& opts = {});

/// Unbounded variant: truncates to the box given by the coercivity radius
/// at the starting level, then minimizes over the compact truncation.
/// Throws CoercivityRadiusMissing when the descriptor lacks the radius.
MinimizeResult mazur_schauder_minimize(
    const std::function<double(const Vector&)>& phi, const CoerciveDomain& dom,
    double tol = kDefaultTol, const MinimizeOptions& opts = {});

}  // namespace convexkit
