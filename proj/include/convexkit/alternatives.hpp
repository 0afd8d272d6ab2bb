#pragma once

#include <functional>
#include <optional>

#include "convexkit/types.hpp"

namespace convexkit {

/// Declared semicontinuity/quasiconvexity structure of a bifunction.
/// Quasi-tags are spot-validated along sampled segments; semicontinuity
/// tags are carried but not numerically checkable.
struct StructureTags {
  bool lsc_in_x = false, usc_in_x = false;
  bool quasiconvex_in_x = false, quasiconcave_in_x = false;
  bool lsc_in_y = false, usc_in_y = false;
  bool quasiconvex_in_y = false, quasiconcave_in_y = false;
};

/// f(x, y) = x' M y + constant over standard probability simplices.
/// The flag is explicit: solvers never sniff for bilinearity.
struct BilinearSpec {
  Eigen::MatrixXd matrix;
  double constant = 0.0;
};

struct BifunctionInstance {
  Polytope X;
  Polytope Y;
  std::function<double(const Vector&, const Vector&)> eval;
  StructureTags tags;
  std::optional<BilinearSpec> bilinear;
};

enum class Branch { A, B };

struct SearchCertificate {
  long checked_points = 0;
  double max_violation = 0.0;
};

struct AlternativeOutcome {
  Branch branch = Branch::A;
  Vector witness;
  SearchCertificate certificate;
};

/// Necessary-condition test for quasiconvexity of f along [a, b]: every
/// sampled middle value must not exceed the max of its sampled ends by
/// more than tol. A validator, not a proof.
bool is_quasiconvex_1d(const std::function<double(const Vector&)>& f,
                       const Vector& a, const Vector& b, int samples,
                       double tol = kDefaultTol);

/// Same, reporting a violating (t1, t2, t3) parameter triple.
struct QuasiconvexityCheck {
  bool ok = true;
  double t1 = 0.0, t2 = 0.0, t3 = 0.0;
};
QuasiconvexityCheck check_quasiconvex_1d(
    const std::function<double(const Vector&)>& f, const Vector& a,
    const Vector& b, int samples, double tol = kDefaultTol);

/// Grid refinement schedule for the search operations.
struct GridSchedule {
  int initial_per_axis = 9;
  int rounds = 5;
};

/// Ky Fan style alternative for one bifunction with Y inside X. Either the
/// diagonal carries a point with f(x,x) > lambda (branch A), or some
/// xbar in Y has f(xbar, y) <= lambda + tol across the Y grid (branch B).
/// Throws ResolutionInsufficient when neither certifies.
AlternativeOutcome infsup_alternative(const BifunctionInstance& inst,
                                      double lambda,
                                      const GridSchedule& grid = {},
                                      double tol = kDefaultTol);

/// Two-function alternative for f <= g on X x Y: branch A produces xbar
/// with g(xbar, .) >= lambda - tol on the Y grid; branch B produces ybar
/// with f(., ybar) <= lambda + tol on the X grid.
AlternativeOutcome two_function_alternative(const BifunctionInstance& f,
                                            const BifunctionInstance& g,
                                            double lambda,
                                            const GridSchedule& grid = {},
                                            double tol = kDefaultTol);

struct GapResult {
  double alpha = 0.0;  // sup_x inf_y g
  double beta = 0.0;   // inf_y sup_x f
};

/// Computes alpha = max_x min_y g and beta = min_y max_x f (grids, or the
/// exact program pair for flagged bilinear instances) and asserts
/// alpha >= beta - tol, throwing TheoremViolation otherwise.
GapResult supinf_infsup_gap(const BifunctionInstance& f,
                            const BifunctionInstance& g,
                            const GridSchedule& grid = {},
                            double tol = kDefaultTol);

struct SaddleResult {
  Vector x0;
  Vector y0;
  double value = 0.0;
  double supinf = 0.0;
  double infsup = 0.0;
};

/// Saddle point of f on X x Y (x maximizes, y minimizes). Bilinear
/// instances over simplices are solved exactly by the dual program pair;
/// everything else by alternating grid refinement at the stated tolerance.
SaddleResult saddle_point(const BifunctionInstance& inst,
                          double tol = kDefaultTol,
                          const GridSchedule& grid = {});

}  // namespace convexkit
