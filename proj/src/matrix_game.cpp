#include "convexkit/matrix_game.hpp"

#include "convexkit/errors.hpp"
#include "convexkit/linprog.hpp"

namespace convexkit {

GameSolution solve_matrix_game(const Eigen::MatrixXd& m) {
  const int rows = static_cast<int>(m.rows());
  const int cols = static_cast<int>(m.cols());
  if (rows < 1 || cols < 1) throw Error("game matrix must be nonempty");

  // Shift so every entry is positive; the game value shifts with it.
  const double sigma = 1.0 + m.cwiseAbs().maxCoeff();
  const Eigen::MatrixXd shifted = m.array() + sigma;

  GameSolution out;

  {  // Row program: min sum p  s.t.  shifted' p >= 1, p >= 0.
    lp::Problem prob;
    prob.A = shifted.transpose();
    prob.b = Eigen::VectorXd::Ones(cols);
    prob.c = Eigen::VectorXd::Ones(rows);
    prob.rel.assign(static_cast<size_t>(cols), lp::Relation::GreaterEq);
    const auto sol = lp::solve(prob);
    if (sol.status != lp::Status::Optimal)
      throw Error("row game program did not solve");
    const double v = 1.0 / sol.objective;
    out.row_strategy = sol.x * v;
    out.row_value = v - sigma;
  }

  {  // Column program: max sum q  s.t.  shifted q <= 1, q >= 0.
    lp::Problem prob;
    prob.A = shifted;
    prob.b = Eigen::VectorXd::Ones(rows);
    prob.c = -Eigen::VectorXd::Ones(cols);
    prob.rel.assign(static_cast<size_t>(rows), lp::Relation::LessEq);
    const auto sol = lp::solve(prob);
    if (sol.status != lp::Status::Optimal)
      throw Error("column game program did not solve");
    const double v = 1.0 / (-sol.objective);
    out.col_strategy = sol.x * v;
    out.col_value = v - sigma;
  }

  return out;
}

}  // namespace convexkit
