#include "convexkit/linprog.hpp"

#include <cmath>
#include <limits>

#include "convexkit/errors.hpp"

namespace convexkit::lp {
namespace {

constexpr double kCostTol = 1e-10;  // reduced-cost threshold for entering
constexpr double kPivotTol = 1e-9;  // minimum usable pivot magnitude

struct Tableau {
  // rows 0..m-1: constraints, row m: phase-2 cost, row m+1: phase-1 cost.
  Eigen::MatrixXd t;
  std::vector<int> basis;   // basic variable per constraint row
  std::vector<bool> banned; // artificials barred after phase 1
  int m = 0, n = 0;         // constraints, total columns (sans rhs)

  double& rhs(int i) { return t(i, n); }

  void pivot(int row, int col) {
    t.row(row) /= t(row, col);
    for (int i = 0; i < t.rows(); ++i) {
      if (i == row) continue;
      const double f = t(i, col);
      if (f != 0.0) t.row(i) -= f * t.row(row);
    }
    basis[static_cast<size_t>(row)] = col;
  }
};

// One simplex phase on cost row `crow`.
Status run_phase(Tableau& tb, int crow, long& iters, long max_iters,
                 bool bland_always) {
  const long bland_after = 16L * (tb.m + tb.n) + 64;
  long local = 0;
  for (;;) {
    if (++iters > max_iters) return Status::IterationLimit;
    const bool bland = bland_always || ++local > bland_after;

    int enter = -1;
    double best = -kCostTol;
    for (int j = 0; j < tb.n; ++j) {
      if (tb.banned[static_cast<size_t>(j)]) continue;
      const double rc = tb.t(crow, j);
      if (bland) {
        if (rc < -kCostTol) { enter = j; break; }
      } else if (rc < best) {
        best = rc;
        enter = j;
      }
    }
    if (enter < 0) return Status::Optimal;

    // Ratio test. Ties within a small window break toward the largest
    // pivot magnitude (stability); under Bland, toward the lowest basic
    // index (anti-cycling).
    int leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    double best_pivot = 0.0;
    for (int i = 0; i < tb.m; ++i) {
      const double a = tb.t(i, enter);
      if (a <= kPivotTol) continue;
      const double ratio = tb.rhs(i) / a;
      bool take = false;
      if (ratio < best_ratio - 1e-10) {
        take = true;
      } else if (ratio < best_ratio + 1e-10 && leave >= 0) {
        take = bland ? tb.basis[static_cast<size_t>(i)] <
                           tb.basis[static_cast<size_t>(leave)]
                     : a > best_pivot;
      }
      if (take) {
        best_ratio = ratio;
        best_pivot = a;
        leave = i;
      }
    }
    if (leave < 0) return Status::Unbounded;
    tb.pivot(leave, enter);
  }
}

Solution solve_once(const Problem& p, bool bland_always) {
  const int m = static_cast<int>(p.A.rows());
  const int nv = static_cast<int>(p.A.cols());

  // Equilibrate and normalize rows to b >= 0.
  Eigen::MatrixXd a = p.A;
  Eigen::VectorXd b = p.b;
  std::vector<Relation> rel = p.rel;
  for (int i = 0; i < m; ++i) {
    const double scale = std::max(a.row(i).cwiseAbs().maxCoeff(),
                                  std::abs(b[i]));
    if (scale > 0.0) {
      a.row(i) /= scale;
      b[i] /= scale;
    }
    if (b[i] < 0.0) {
      a.row(i) *= -1.0;
      b[i] *= -1.0;
      if (rel[static_cast<size_t>(i)] == Relation::LessEq)
        rel[static_cast<size_t>(i)] = Relation::GreaterEq;
      else if (rel[static_cast<size_t>(i)] == Relation::GreaterEq)
        rel[static_cast<size_t>(i)] = Relation::LessEq;
    }
  }

  int n_slack = 0, n_art = 0;
  for (auto r : rel) {
    if (r != Relation::Eq) ++n_slack;
    if (r != Relation::LessEq) ++n_art;
  }

  Tableau tb;
  tb.m = m;
  tb.n = nv + n_slack + n_art;
  tb.t.setZero(m + 2, tb.n + 1);
  tb.t.topLeftCorner(m, nv) = a;
  tb.t.col(tb.n).head(m) = b;
  tb.basis.assign(static_cast<size_t>(m), -1);
  tb.banned.assign(static_cast<size_t>(tb.n), false);

  int scol = nv, acol = nv + n_slack;
  const int art_begin = acol;
  for (int i = 0; i < m; ++i) {
    switch (rel[static_cast<size_t>(i)]) {
      case Relation::LessEq:
        tb.t(i, scol) = 1.0;
        tb.basis[static_cast<size_t>(i)] = scol++;
        break;
      case Relation::GreaterEq:
        tb.t(i, scol++) = -1.0;
        tb.t(i, acol) = 1.0;
        tb.basis[static_cast<size_t>(i)] = acol++;
        break;
      case Relation::Eq:
        tb.t(i, acol) = 1.0;
        tb.basis[static_cast<size_t>(i)] = acol++;
        break;
    }
  }

  tb.t.row(m).head(nv) = p.c.transpose();

  // Phase-1 cost: sum of artificials, reduced against the starting basis.
  for (int j = art_begin; j < tb.n; ++j) tb.t(m + 1, j) = 1.0;
  for (int i = 0; i < m; ++i)
    if (tb.basis[static_cast<size_t>(i)] >= art_begin)
      tb.t.row(m + 1) -= tb.t.row(i);

  Solution sol;
  const long max_iters = 2000L + 400L * static_cast<long>(m + tb.n);

  if (n_art > 0) {
    const Status s1 = run_phase(tb, m + 1, sol.iterations, max_iters, bland_always);
    sol.infeasibility = -tb.t(m + 1, tb.n);
    if (s1 == Status::IterationLimit) {
      sol.status = Status::IterationLimit;
      return sol;
    }
    if (sol.infeasibility > 1e-8) {
      sol.status = Status::Infeasible;
      return sol;
    }
    // Drive leftover artificials out of the basis where possible.
    for (int i = 0; i < m; ++i) {
      if (tb.basis[static_cast<size_t>(i)] < art_begin) continue;
      int piv = -1;
      for (int j = 0; j < art_begin; ++j)
        if (std::abs(tb.t(i, j)) > 1e-7) { piv = j; break; }
      if (piv >= 0) tb.pivot(i, piv);
      // else: redundant row; its artificial stays basic at zero.
    }
    for (int j = art_begin; j < tb.n; ++j) tb.banned[static_cast<size_t>(j)] = true;
  }

  const Status s2 = run_phase(tb, m, sol.iterations, max_iters, bland_always);
  if (s2 != Status::Optimal) {
    sol.status = s2;
    return sol;
  }

  sol.x.setZero(nv);
  for (int i = 0; i < m; ++i) {
    const int bj = tb.basis[static_cast<size_t>(i)];
    if (bj < nv) sol.x[bj] = tb.rhs(i);
  }
  sol.objective = p.c.dot(sol.x);
  sol.status = Status::Optimal;
  return sol;
}

}  // namespace

Solution solve(const Problem& p) {
  const int m = static_cast<int>(p.A.rows());
  const int nv = static_cast<int>(p.A.cols());
  if (p.b.size() != m || static_cast<int>(p.rel.size()) != m || p.c.size() != nv)
    throw Error("linear program has inconsistent shapes");

  Solution sol = solve_once(p, false);
  if (sol.status == Status::Optimal || sol.status == Status::Unbounded)
    return sol;
  // Infeasible or stalled under Dantzig pricing can be a numerical
  // artifact of an unlucky pivot sequence; one deterministic retry under
  // Bland's rule settles it.
  Solution retry = solve_once(p, true);
  retry.iterations += sol.iterations;
  return retry;
}

}  // namespace convexkit::lp
