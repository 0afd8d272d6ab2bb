#include "convexkit/oracles.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "convexkit/errors.hpp"

namespace convexkit::oracles {

Eigen::VectorXd project_to_simplex(const Eigen::VectorXd& v) {
  const auto n = v.size();
  std::vector<double> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double css = 0.0, theta = 0.0;
  int rho = 0;
  for (int i = 0; i < n; ++i) {
    css += u[static_cast<size_t>(i)];
    const double t = (css - 1.0) / (i + 1);
    if (u[static_cast<size_t>(i)] - t > 0.0) {
      rho = i + 1;
      theta = t;
    }
  }
  (void)rho;
  return (v.array() - theta).cwiseMax(0.0);
}

namespace {

double operator_norm_sq(const Eigen::MatrixXd& m) {
  // Power iteration on M'M; deterministic start.
  Eigen::VectorXd x = Eigen::VectorXd::Ones(m.cols()).normalized();
  double lam = 0.0;
  for (int it = 0; it < 60; ++it) {
    x = m.transpose() * (m * x);
    const double n = x.norm();
    if (n == 0.0) return 0.0;
    lam = n;
    x /= n;
  }
  return lam;
}

}  // namespace

DistanceResult polytope_distance_sq(const Eigen::MatrixXd& c,
                                    const Eigen::MatrixXd& k, double gap_tol,
                                    long max_iters) {
  const int nc = static_cast<int>(c.cols());
  const int nk = static_cast<int>(k.cols());

  // F(l, m) = 0.5 || C l - K m ||^2 over the product of simplices.
  Eigen::MatrixXd stacked(c.rows(), nc + nk);
  stacked.leftCols(nc) = c;
  stacked.rightCols(nk) = -k;
  const double lips = std::max(operator_norm_sq(stacked), 1e-12);

  Eigen::VectorXd lc = Eigen::VectorXd::Constant(nc, 1.0 / nc);
  Eigen::VectorXd lk = Eigen::VectorXd::Constant(nk, 1.0 / nk);
  Eigen::VectorXd yc = lc, yk = lk, pc = lc, pk = lk;
  double t_momentum = 1.0;
  double f_prev = std::numeric_limits<double>::infinity();

  DistanceResult out;
  for (long it = 0; it < max_iters; ++it) {
    out.iterations = it + 1;
    const Eigen::VectorXd diff = c * yc - k * yk;
    const Eigen::VectorXd gc = c.transpose() * diff;
    const Eigen::VectorXd gk = -(k.transpose() * diff);

    pc = lc;
    pk = lk;
    lc = project_to_simplex(yc - gc / lips);
    lk = project_to_simplex(yk - gk / lips);

    const Eigen::VectorXd d2 = c * lc - k * lk;
    const double f = 0.5 * d2.squaredNorm();
    if (f > f_prev) {  // function restart
      t_momentum = 1.0;
      yc = lc;
      yk = lk;
    } else {
      const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_momentum * t_momentum));
      const double w = (t_momentum - 1.0) / t_next;
      yc = lc + w * (lc - pc);
      yk = lk + w * (lk - pk);
      t_momentum = t_next;
    }
    f_prev = f;

    // Linear-optimality gap over the product of vertex sets.
    const Eigen::VectorXd gc2 = c.transpose() * d2;
    const Eigen::VectorXd gk2 = -(k.transpose() * d2);
    const double gap = (gc2.dot(lc) - gc2.minCoeff()) +
                       (gk2.dot(lk) - gk2.minCoeff());
    if (gap <= gap_tol) break;
  }

  out.weights_c = lc;
  out.weights_k = lk;
  out.distance_sq = (c * lc - k * lk).squaredNorm();
  return out;
}

QpResult quadratic_minimize(const Eigen::MatrixXd& q, const Eigen::VectorXd& b,
                            const Eigen::MatrixXd& v, double gap_tol,
                            long max_iters) {
  const int n = static_cast<int>(v.cols());
  const double lq = std::sqrt(std::max(operator_norm_sq(q), 0.0));
  const double lv = operator_norm_sq(v);
  const double lips = std::max(2.0 * lq * lv + 1e-9, 1e-9);

  auto value = [&](const Eigen::VectorXd& lam) {
    const Eigen::VectorXd p = v * lam;
    return p.dot(q * p) + b.dot(p);
  };
  auto grad = [&](const Eigen::VectorXd& lam) {
    const Eigen::VectorXd p = v * lam;
    return (v.transpose() * (2.0 * (q * p) + b)).eval();
  };

  Eigen::VectorXd lam = Eigen::VectorXd::Constant(n, 1.0 / n);
  Eigen::VectorXd y = lam, prev = lam;
  double t_momentum = 1.0;
  double f_prev = std::numeric_limits<double>::infinity();

  QpResult out;
  for (long it = 0; it < max_iters; ++it) {
    out.iterations = it + 1;
    prev = lam;
    lam = project_to_simplex(y - grad(y) / lips);
    const double f = value(lam);
    if (f > f_prev) {
      t_momentum = 1.0;
      y = lam;
    } else {
      const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_momentum * t_momentum));
      const double w = (t_momentum - 1.0) / t_next;
      y = lam + w * (lam - prev);
      t_momentum = t_next;
    }
    f_prev = f;

    const Eigen::VectorXd g = grad(lam);
    const double gap = g.dot(lam) - g.minCoeff();
    if (gap <= gap_tol) break;
  }

  out.point = v * lam;
  out.value = value(lam);
  return out;
}

Eigen::VectorXd stationary_distribution(const Eigen::MatrixXd& p) {
  if (p.rows() != p.cols()) throw Error("stochastic matrix must be square");
  const auto n = p.rows();
  const Eigen::MatrixXd m = p.transpose() - Eigen::MatrixXd::Identity(n, n);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  Eigen::VectorXd v = svd.matrixV().col(n - 1);
  if (v.sum() < 0.0) v = -v;
  if (v.minCoeff() < -1e-9)
    throw Error("null vector is not sign-definite; chain may be reducible");
  v = v.cwiseMax(0.0);
  return v / v.sum();
}

std::pair<double, double> pure_strategy_bounds(const Eigen::MatrixXd& m,
                                               const Eigen::VectorXd& x,
                                               const Eigen::VectorXd& y) {
  const Eigen::VectorXd row_payoffs = m * y;       // vs pure rows
  const Eigen::VectorXd col_payoffs = m.transpose() * x;  // vs pure columns
  return {col_payoffs.minCoeff(), row_payoffs.maxCoeff()};
}

}  // namespace convexkit::oracles
