#pragma once

#include <Eigen/Dense>
#include <vector>

namespace convexkit::lp {

enum class Relation { LessEq, Eq, GreaterEq };

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

/// minimize c'x  subject to  A x (rel) b,  x >= 0
struct Problem {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd c;
  std::vector<Relation> rel;
};

struct Solution {
  Status status = Status::IterationLimit;
  Eigen::VectorXd x;
  double objective = 0.0;
  /// Phase-1 optimum: how far from feasible the constraints are.
  double infeasibility = 0.0;
  long iterations = 0;
};

/// Dense two-phase primal simplex. Dantzig pricing with a Bland fallback
/// after a degeneracy budget; deterministic tie-breaking throughout.
Solution solve(const Problem& p);

}  // namespace convexkit::lp
