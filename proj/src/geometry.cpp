#include "convexkit/geometry.hpp"

#include <cmath>
#include <limits>

#include "convexkit/linprog.hpp"

namespace convexkit {

namespace {

void check_dims(const Polytope& p, const Vector& x) {
  if (p.dim() != x.size())
    throw DimensionMismatch("point dimension does not match polytope");
  if (!is_finite(x)) throw Error("point has non-finite coordinates");
}

// min t  s.t.  -t <= (V l - x)_k <= t,  sum l = 1,  l >= 0, t >= 0.
// Always feasible, so the optimum is the max-norm distance of x from the
// set of convex combinations.
lp::Solution membership_lp(const Eigen::MatrixXd& verts, const Vector& x) {
  const int d = static_cast<int>(verts.rows());
  const int n = static_cast<int>(verts.cols());
  lp::Problem prob;
  prob.A.setZero(2 * d + 1, n + 1);
  prob.b.resize(2 * d + 1);
  prob.c.setZero(n + 1);
  prob.c[n] = 1.0;
  prob.rel.assign(static_cast<size_t>(2 * d + 1), lp::Relation::LessEq);
  for (int k = 0; k < d; ++k) {
    prob.A.row(k).head(n) = verts.row(k);
    prob.A(k, n) = -1.0;
    prob.b[k] = x[k];  // V l - t <= x
    prob.A.row(d + k).head(n) = verts.row(k);
    prob.A(d + k, n) = 1.0;
    prob.b[d + k] = x[k];  // V l + t >= x
    prob.rel[static_cast<size_t>(d + k)] = lp::Relation::GreaterEq;
  }
  prob.A.row(2 * d).head(n).setOnes();
  prob.b[2 * d] = 1.0;
  prob.rel[static_cast<size_t>(2 * d)] = lp::Relation::Eq;
  return lp::solve(prob);
}

}  // namespace

BarycentricSolver::BarycentricSolver(const Polytope& p)
    : verts_(p.vertex_matrix()) {
  lifted_.resize(verts_.rows() + 1, verts_.cols());
  lifted_.topRows(verts_.rows()) = verts_;
  lifted_.row(verts_.rows()).setOnes();
  qr_.compute(lifted_);
  qr_.setThreshold(1e-10);
  unique_path_ = (qr_.rank() == lifted_.cols());
}

bool BarycentricSolver::contains(const Vector& x, double tol) const {
  if (x.size() != verts_.rows())
    throw DimensionMismatch("point dimension does not match polytope");
  if (unique_path_) {
    Eigen::VectorXd rhs(x.size() + 1);
    rhs.head(x.size()) = x;
    rhs[x.size()] = 1.0;
    const Eigen::VectorXd w = qr_.solve(rhs);
    const double resid = (lifted_ * w - rhs).lpNorm<Eigen::Infinity>();
    return resid <= tol && w.minCoeff() >= -tol;
  }
  const auto sol = membership_lp(verts_, x);
  return sol.status == lp::Status::Optimal && sol.objective <= tol;
}

double BarycentricSolver::deviation(const Vector& x) const {
  const auto sol = membership_lp(verts_, x);
  if (sol.status != lp::Status::Optimal)
    throw Error("membership feasibility program did not solve");
  return sol.objective;
}

std::optional<BarycentricCoords> BarycentricSolver::weights(const Vector& x,
                                                            double tol) const {
  if (unique_path_) {
    Eigen::VectorXd rhs(x.size() + 1);
    rhs.head(x.size()) = x;
    rhs[x.size()] = 1.0;
    const Eigen::VectorXd w = qr_.solve(rhs);
    const double resid = (lifted_ * w - rhs).lpNorm<Eigen::Infinity>();
    if (resid <= tol && w.minCoeff() >= -tol) return BarycentricCoords{w};
    return std::nullopt;
  }
  const auto sol = membership_lp(verts_, x);
  if (sol.status == lp::Status::Optimal && sol.objective <= tol)
    return BarycentricCoords{sol.x.head(verts_.cols())};
  return std::nullopt;
}

bool contains(const Polytope& p, const Vector& x, double tol) {
  check_dims(p, x);
  return BarycentricSolver(p).contains(x, tol);
}

Projection project(const Polytope& p, const Vector& x, double tol,
                   const Eigen::VectorXd* warm) {
  check_dims(p, x);
  const Eigen::MatrixXd& V = p.vertex_matrix();
  const int n = p.num_vertices();

  Projection out;
  if (n == 1) {
    out.point = V.col(0);
    out.weights = Eigen::VectorXd::Ones(1);
    out.distance = (x - out.point).norm();
    return out;
  }

  Eigen::VectorXd lambda;
  if (warm && warm->size() == n && warm->minCoeff() >= 0.0 &&
      std::abs(warm->sum() - 1.0) < 1e-6) {
    lambda = *warm / warm->sum();
  } else {
    // Start at the nearest vertex.
    int i0 = 0;
    double best = (V.col(0) - x).squaredNorm();
    for (int j = 1; j < n; ++j) {
      const double d2 = (V.col(j) - x).squaredNorm();
      if (d2 < best) { best = d2; i0 = j; }
    }
    lambda.setZero(n);
    lambda[i0] = 1.0;
  }

  Vector y = V * lambda;
  const double gap_target = 0.5 * tol;
  const double dist_target_sq = 0.25 * tol * tol;
  const long max_iter =
      64 + static_cast<long>(10.0 * p.dim() * n * std::log(1.0 / std::min(tol, 0.5)));

  // Exact equality-constrained least squares on the current support; a
  // Wolfe-style corrective jump that lands on machine-precision optima
  // once the right face is active. Monotone: the affine minimizer cannot
  // be worse than the current point of the same support.
  auto corrective = [&](Eigen::VectorXd& lam, Vector& point) {
    std::vector<int> act;
    for (int i = 0; i < n; ++i)
      if (lam[i] > 1e-14) act.push_back(i);
    const int k = static_cast<int>(act.size());
    if (k == 0) return;
    Eigen::MatrixXd va(V.rows(), k);
    for (int j = 0; j < k; ++j) va.col(j) = V.col(act[static_cast<size_t>(j)]);
    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(k + 1, k + 1);
    kkt.topLeftCorner(k, k) = va.transpose() * va;
    kkt.topRightCorner(k, 1).setOnes();
    kkt.bottomLeftCorner(1, k).setOnes();
    Eigen::VectorXd rhs(k + 1);
    rhs.head(k) = va.transpose() * x;
    rhs[k] = 1.0;
    const Eigen::VectorXd sol = kkt.colPivHouseholderQr().solve(rhs);
    if (!sol.allFinite()) return;
    if ((kkt * sol - rhs).lpNorm<Eigen::Infinity>() > 1e-9) return;
    const Eigen::VectorXd mu = sol.head(k);
    if (mu.minCoeff() < -1e-13) return;
    lam.setZero();
    for (int j = 0; j < k; ++j)
      lam[act[static_cast<size_t>(j)]] = std::max(mu[j], 0.0);
    lam /= lam.sum();
    point = V * lam;
  };

  long it = 0;
  double gap = std::numeric_limits<double>::infinity();
  for (; it < max_iter; ++it) {
    const Vector g = y - x;  // gradient of 0.5 ||y - x||^2
    if (g.squaredNorm() <= dist_target_sq) { gap = 0.0; break; }

    const Eigen::VectorXd scores = V.transpose() * g;
    int fw = 0, away = -1;
    double fw_score = scores[0];
    double away_score = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
      if (scores[j] < fw_score) { fw_score = scores[j]; fw = j; }
      if (lambda[j] > 1e-15 && scores[j] > away_score) {
        away_score = scores[j];
        away = j;
      }
    }
    const double gy = g.dot(y);
    gap = gy - fw_score;  // max_z <x - y, z - y>
    if (gap <= gap_target) break;

    const double away_gap = away >= 0 ? away_score - gy : 0.0;
    Vector d;
    double gamma_max;
    bool is_away;
    if (away >= 0 && away_gap > gap) {
      d = y - V.col(away);
      const double la = lambda[away];
      gamma_max = la / std::max(1.0 - la, 1e-300);
      is_away = true;
    } else {
      d = V.col(fw) - y;
      gamma_max = 1.0;
      is_away = false;
    }
    const double dd = d.squaredNorm();
    if (dd <= 0.0) break;
    double gamma = -g.dot(d) / dd;
    gamma = std::min(std::max(gamma, 0.0), gamma_max);
    if (gamma <= 0.0) break;

    if (is_away) {
      lambda *= (1.0 + gamma);
      lambda[away] -= gamma;
      if (lambda[away] < 1e-15) lambda[away] = 0.0;
    } else {
      lambda *= (1.0 - gamma);
      lambda[fw] += gamma;
    }
    y += gamma * d;
    if ((it & 63) == 63) {
      // Periodically resync against drift and try the exact face solve.
      lambda /= lambda.sum();
      y = V * lambda;
      corrective(lambda, y);
    }
  }

  if (gap > gap_target && y.squaredNorm() > 0.0) {
    corrective(lambda, y);
    const Vector g = y - x;
    const Eigen::VectorXd scores = V.transpose() * g;
    gap = g.dot(y) - scores.minCoeff();
    if ((x - y).squaredNorm() <= dist_target_sq) gap = 0.0;
  }
  if (gap > tol)
    throw NonConvergence("projection did not reach the requested gap", gap, it);

  lambda /= lambda.sum();
  out.point = V * lambda;
  out.weights = lambda;
  out.distance = (x - out.point).norm();
  out.iterations = it;
  out.gap = gap;
  return out;
}

Polytope minkowski_difference(const Polytope& c, const Polytope& k) {
  if (c.dim() != k.dim())
    throw DimensionMismatch("minkowski difference needs equal dimensions");
  const int nc = c.num_vertices(), nk = k.num_vertices();
  Eigen::MatrixXd verts(c.dim(), nc * nk);
  int col = 0;
  for (int i = 0; i < nc; ++i)
    for (int j = 0; j < nk; ++j)
      verts.col(col++) = c.vertex_matrix().col(i) - k.vertex_matrix().col(j);
  return Polytope(std::move(verts));
}

LinearMax linear_maximize(const Polytope& p, const Vector& u) {
  check_dims(p, u);
  LinearMax out;
  const Eigen::VectorXd vals = p.vertex_matrix().transpose() * u;
  out.index = 0;
  out.value = vals[0];
  for (int j = 1; j < p.num_vertices(); ++j) {
    if (vals[j] > out.value) {
      out.value = vals[j];
      out.index = j;
    }
  }
  out.vertex = p.vertex(out.index);
  return out;
}

}  // namespace convexkit
