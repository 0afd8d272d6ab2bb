#pragma once

#include <Eigen/Core>
#include <stdexcept>
#include <string>
#include <utility>

namespace convexkit {

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Inputs live in spaces of different dimensions.
struct DimensionMismatch : Error {
  using Error::Error;
};

/// Precondition of point separation fails: the point is inside the set.
struct PointInsideSet : Error {
  Eigen::VectorXd point;
  PointInsideSet(std::string msg, Eigen::VectorXd p)
      : Error(std::move(msg)), point(std::move(p)) {}
};

/// Precondition of set separation fails; `witness` is a common point.
struct SetsIntersect : Error {
  Eigen::VectorXd witness;
  SetsIntersect(std::string msg, Eigen::VectorXd w)
      : Error(std::move(msg)), witness(std::move(w)) {}
};

/// An iterative solver ran out of budget; `residual` is what it achieved.
struct NonConvergence : Error {
  double residual;
  long iterations;
  NonConvergence(std::string msg, double res, long iters)
      : Error(std::move(msg)), residual(res), iterations(iters) {}
};

/// The joint feasibility program behind a guaranteed intersection failed.
/// `best_deviation` is the tightest max-coordinate deviation achievable.
struct InfeasibleIntersection : Error {
  double best_deviation;
  InfeasibleIntersection(std::string msg, double dev)
      : Error(std::move(msg)), best_deviation(dev) {}
};

/// A grid point of the compact set lies in no ball of the cover.
struct CoverGap : Error {
  Eigen::VectorXd point;
  CoverGap(std::string msg, Eigen::VectorXd p)
      : Error(std::move(msg)), point(std::move(p)) {}
};

/// A map fails to send the domain into itself.
struct NotSelfMap : Error {
  int vertex_index;
  Eigen::VectorXd vertex_image;
  NotSelfMap(std::string msg, int idx, Eigen::VectorXd img)
      : Error(std::move(msg)), vertex_index(idx), vertex_image(std::move(img)) {}
};

/// Two maps of a family fail to commute.
struct CommutativityViolated : Error {
  int i, j;
  double defect;
  CommutativityViolated(std::string msg, int a, int b, double d)
      : Error(std::move(msg)), i(a), j(b), defect(d) {}
};

/// Slicing a polytope by a fixed-point subspace produced no vertices.
struct EmptySlice : Error {
  using Error::Error;
};

/// Neither branch of an alternative could be certified at this resolution.
struct ResolutionInsufficient : Error {
  using Error::Error;
};

/// A declared structure tag failed spot validation along a segment.
struct StructureViolation : Error {
  Eigen::VectorXd segment_a, segment_b;
  StructureViolation(std::string msg, Eigen::VectorXd a, Eigen::VectorXd b)
      : Error(std::move(msg)), segment_a(std::move(a)), segment_b(std::move(b)) {}
};

/// The two-function hypothesis f <= g fails; carries the witness pair.
struct PrecondViolated : Error {
  Eigen::VectorXd x, y;
  double f_value, g_value;
  PrecondViolated(std::string msg, Eigen::VectorXd xv, Eigen::VectorXd yv,
                  double fv, double gv)
      : Error(std::move(msg)), x(std::move(xv)), y(std::move(yv)),
        f_value(fv), g_value(gv) {}
};

/// A functional declared quasiconvex is not, along the witness segment.
struct QuasiconvexityViolated : Error {
  Eigen::VectorXd segment_a, segment_b;
  QuasiconvexityViolated(std::string msg, Eigen::VectorXd a, Eigen::VectorXd b)
      : Error(std::move(msg)), segment_a(std::move(a)), segment_b(std::move(b)) {}
};

/// An unbounded minimization domain needs a coercivity radius function.
struct CoercivityRadiusMissing : Error {
  using Error::Error;
};

/// Coercivity constants must be strictly positive.
struct NonpositiveAlpha : Error {
  using Error::Error;
};

/// A grid evaluation contradicts a theorem; indicates tag or grid misuse.
struct TheoremViolation : Error {
  double alpha, beta;
  TheoremViolation(std::string msg, double a, double b)
      : Error(std::move(msg)), alpha(a), beta(b) {}
};

}  // namespace convexkit
