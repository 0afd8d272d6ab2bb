#include "convexkit/fixed_points.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "convexkit/geometry.hpp"

namespace convexkit {

void AffineFamily::validate(double tol) const {
  const double pad = std::max(tol, 1e-8);
  BarycentricSolver inside(domain);
  for (const auto& m : maps) {
    if (m.A.rows() != domain.dim() || m.A.cols() != domain.dim() ||
        m.b.size() != domain.dim())
      throw DimensionMismatch("map dimensions do not match the domain");
    for (int j = 0; j < domain.num_vertices(); ++j) {
      const Vector img = m.apply(domain.vertex(j));
      if (!inside.contains(img, pad))
        throw NotSelfMap("a vertex image escapes the domain", j, img);
    }
  }
  for (size_t i = 0; i < maps.size(); ++i) {
    for (size_t j = i + 1; j < maps.size(); ++j) {
      const auto& mi = maps[i];
      const auto& mj = maps[j];
      const double defect = std::max(
          (mi.A * mj.A - mj.A * mi.A).cwiseAbs().maxCoeff(),
          (mi.A * mj.b + mi.b - (mj.A * mi.b + mj.b)).cwiseAbs().maxCoeff());
      if (defect > pad)
        throw CommutativityViolated("maps do not commute", static_cast<int>(i),
                                    static_cast<int>(j), defect);
    }
  }
}

namespace {

struct AverageOutcome {
  Vector point;
  double residual;
  long matvecs;
  bool converged;
};

// Restarted running means of the orbit. Each round replaces z by the mean
// of N orbit points; on the spectrum this multiplies every eigenmode
// lambda != 1 by (lambda^N - 1)/(N (lambda - 1)), which has modulus < 1,
// while fixing the lambda = 1 component.
AverageOutcome orbit_average(const AffineMap& phi, Vector z, double tol,
                             long max_matvecs) {
  AverageOutcome out{z, std::numeric_limits<double>::infinity(), 0, false};
  long n = 64;
  const long n_cap = 1L << 20;
  while (out.matvecs < max_matvecs) {
    Vector acc = Vector::Zero(z.size());
    Vector w = z;
    for (long k = 0; k < n; ++k) {
      acc += w;
      w = phi.apply(w);
    }
    out.matvecs += n;
    z = acc / static_cast<double>(n);
    out.residual = (phi.apply(z) - z).norm();
    ++out.matvecs;
    out.point = z;
    if (out.residual <= tol) {
      out.converged = true;
      return out;
    }
    n = std::min(2 * n, n_cap);
  }
  return out;
}

}  // namespace

FixedPointResult affine_fixed_point(const AffineMap& phi, const Polytope& x_set,
                                    const FixedPointOptions& opts) {
  if (phi.A.rows() != x_set.dim() || phi.A.cols() != x_set.dim() ||
      phi.b.size() != x_set.dim())
    throw DimensionMismatch("map dimensions do not match the domain");
  const double pad = std::max(opts.tol, 1e-8);
  BarycentricSolver inside(x_set);
  for (int j = 0; j < x_set.num_vertices(); ++j) {
    const Vector img = phi.apply(x_set.vertex(j));
    if (!inside.contains(img, pad))
      throw NotSelfMap("map does not send the polytope into itself", j, img);
  }

  const int d = x_set.dim();
  if (opts.use_fast_path) {
    const Eigen::MatrixXd m = Eigen::MatrixXd::Identity(d, d) - phi.A;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    lu.setThreshold(1e-10);
    if (lu.rank() == d) {
      const Vector x = lu.solve(phi.b);
      if ((m * x - phi.b).lpNorm<Eigen::Infinity>() <=
              1e-10 * (1.0 + phi.b.lpNorm<Eigen::Infinity>()) &&
          inside.contains(x, pad)) {
        FixedPointResult out;
        out.point = x;
        out.residual = (phi.apply(x) - x).norm();
        out.used_fast_path = true;
        return out;
      }
    }
  }

  const Vector start = opts.start ? *opts.start : x_set.barycenter();
  const auto avg = orbit_average(phi, start, opts.tol, opts.max_matvecs);
  if (!avg.converged)
    throw NonConvergence("orbit averaging missed the residual target",
                         avg.residual, avg.matvecs);
  FixedPointResult out;
  out.point = avg.point;
  out.residual = avg.residual;
  out.matvecs = avg.matvecs;
  return out;
}

std::optional<Polytope> fixed_point_slice(const Polytope& x_set,
                                          const AffineMap& phi, double tol) {
  const int d = x_set.dim();
  const int n = x_set.num_vertices();
  const Eigen::MatrixXd c = Eigen::MatrixXd::Identity(d, d) - phi.A;

  // Barycentric system: [1'; C V] lambda = [1; b], lambda >= 0.
  Eigen::MatrixXd m(d + 1, n);
  m.row(0).setOnes();
  m.bottomRows(d) = c * x_set.vertex_matrix();
  Eigen::VectorXd rhs(d + 1);
  rhs[0] = 1.0;
  rhs.tail(d) = phi.b;

  // Keep an independent row subset.
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m.transpose());
  qr.setThreshold(1e-10);
  const int rk = static_cast<int>(qr.rank());
  std::vector<int> rows(static_cast<size_t>(rk));
  for (int i = 0; i < rk; ++i)
    rows[static_cast<size_t>(i)] = qr.colsPermutation().indices()[i];
  std::sort(rows.begin(), rows.end());

  Eigen::MatrixXd mr(rk, n);
  Eigen::VectorXd rr(rk);
  for (int i = 0; i < rk; ++i) {
    mr.row(i) = m.row(rows[static_cast<size_t>(i)]);
    rr[i] = rhs[rows[static_cast<size_t>(i)]];
  }

  // Enumeration budget: C(n, rk) basis candidates.
  double combos = 1.0;
  for (int i = 0; i < rk; ++i)
    combos *= static_cast<double>(n - i) / (i + 1);
  if (combos > 200000.0) return std::nullopt;

  const double feas_pad = std::max(tol, 1e-9);
  std::vector<Vector> verts;
  std::vector<int> pick(static_cast<size_t>(rk));
  for (int i = 0; i < rk; ++i) pick[static_cast<size_t>(i)] = i;
  const auto advance = [&]() {
    int i = rk - 1;
    while (i >= 0 && pick[static_cast<size_t>(i)] == n - rk + i) --i;
    if (i < 0) return false;
    ++pick[static_cast<size_t>(i)];
    for (int j = i + 1; j < rk; ++j)
      pick[static_cast<size_t>(j)] = pick[static_cast<size_t>(j - 1)] + 1;
    return true;
  };

  do {
    Eigen::MatrixXd basis(rk, rk);
    for (int j = 0; j < rk; ++j)
      basis.col(j) = mr.col(pick[static_cast<size_t>(j)]);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(basis);
    lu.setThreshold(1e-10);
    if (lu.rank() < rk) continue;
    const Eigen::VectorXd lb = lu.solve(rr);
    if (lb.minCoeff() < -feas_pad) continue;
    Eigen::VectorXd lambda = Eigen::VectorXd::Zero(n);
    for (int j = 0; j < rk; ++j)
      lambda[pick[static_cast<size_t>(j)]] = std::max(lb[j], 0.0);
    if ((m * lambda - rhs).lpNorm<Eigen::Infinity>() > feas_pad) continue;
    const Vector x = x_set.vertex_matrix() * lambda;
    bool fresh = true;
    for (const auto& v : verts)
      if ((v - x).lpNorm<Eigen::Infinity>() <= 1e-8) {
        fresh = false;
        break;
      }
    if (fresh) verts.push_back(x);
  } while (advance());

  if (verts.empty())
    throw EmptySlice("fixed-point slice has no vertices at tolerance");
  return Polytope(verts);
}

CommonFixedPointResult common_fixed_point(const AffineFamily& family,
                                          const FixedPointOptions& opts) {
  if (family.maps.empty()) throw Error("family must contain at least one map");
  family.validate(opts.tol);

  const double pad = std::max(opts.tol, 1e-7);
  CommonFixedPointResult out;

  Polytope slice = family.domain;
  bool exact = true;
  Vector current;

  for (size_t i = 0; i < family.maps.size(); ++i) {
    const auto& phi = family.maps[i];
    if (exact) {
      // The commuting argument: phi must preserve the accumulated slice.
      BarycentricSolver inside(slice);
      for (int j = 0; j < slice.num_vertices() && exact; ++j)
        exact = inside.contains(phi.apply(slice.vertex(j)), pad);
    }
    if (exact) {
      FixedPointOptions stage = opts;
      stage.start.reset();
      current = affine_fixed_point(phi, slice, stage).point;
      if (i + 1 < family.maps.size()) {
        auto next = fixed_point_slice(slice, phi, opts.tol);
        if (next)
          slice = std::move(*next);
        else
          exact = false;  // enumeration over budget; carry on implicitly
      }
    } else {
      // Orbit averaging started inside the accumulated fixed-point set
      // stays there (the maps commute), no explicit slice needed.
      const auto avg = orbit_average(phi, current, opts.tol, opts.max_matvecs);
      if (!avg.converged)
        throw NonConvergence("orbit averaging missed the residual target",
                             avg.residual, avg.matvecs);
      current = avg.point;
    }
  }

  out.point = current;
  out.exact_slices = exact;
  for (const auto& phi : family.maps) {
    const double r = (phi.apply(current) - current).norm();
    out.residuals.push_back(r);
    if (r > std::max(opts.tol, 1e-8))
      throw NonConvergence("a family residual exceeds tolerance at return", r,
                           0);
  }
  return out;
}

}  // namespace convexkit
