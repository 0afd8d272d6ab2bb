#pragma once

#include <Eigen/Core>

namespace convexkit {

/// Zero-sum matrix game x' M y with x the maximizer over the row simplex
/// and y the minimizer over the column simplex.
struct GameSolution {
  Eigen::VectorXd row_strategy;
  Eigen::VectorXd col_strategy;
  double row_value = 0.0;  // max_x min_y, from the row program
  double col_value = 0.0;  // min_y max_x, from the column program
};

/// Solves both sides of the dual linear-program pair.
GameSolution solve_matrix_game(const Eigen::MatrixXd& m);

}  // namespace convexkit
