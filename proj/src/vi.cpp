#include "convexkit/vi.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>

#include "convexkit/alternatives.hpp"
#include "convexkit/geometry.hpp"
#include "convexkit/grids.hpp"
#include "convexkit/linprog.hpp"
#include "convexkit/rng.hpp"

namespace convexkit {

void BilinearForm::validate(double tol) const {
  if (matrix.rows() != matrix.cols())
    throw Error("bilinear form needs a square matrix");
  if (coercivity_alpha <= 0.0)
    throw NonpositiveAlpha("coercivity constant must be positive");
  const double spec =
      matrix.jacobiSvd().singularValues().maxCoeff();
  if (continuity_C < spec - tol)
    throw Error("continuity constant below the spectral norm");
  const Eigen::MatrixXd sym = 0.5 * (matrix + matrix.transpose());
  const double lmin =
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(sym).eigenvalues().minCoeff();
  if (coercivity_alpha > lmin + tol)
    throw Error("coercivity constant above the symmetric-part spectrum");
}

LinearFunctional::LinearFunctional(Vector v, double n)
    : vector(std::move(v)), norm(n) {
  if (std::abs(norm - vector.norm()) > 1e-7)
    throw Error("declared functional norm inconsistent with its vector");
}

CoercivityBound coercivity_bound(double continuity_C, double alpha,
                                 double ell_norm, double y0_norm) {
  if (alpha <= 0.0)
    throw NonpositiveAlpha("coercivity bound needs alpha > 0");
  if (continuity_C < 0.0 || ell_norm < 0.0 || y0_norm < 0.0)
    throw Error("norms must be nonnegative");
  CoercivityBound out;
  out.beta = (continuity_C * y0_norm + ell_norm) / alpha;
  out.gamma = ell_norm * y0_norm / alpha;
  out.M = 0.5 * (out.beta + std::sqrt(out.beta * out.beta + 4.0 * out.gamma));
  return out;
}

VISolution stampacchia_solve(const BilinearForm& a, const LinearFunctional& ell,
                             const Polytope& x_set, const VIOptions& opts) {
  a.validate(std::max(opts.tol, 1e-9));
  if (x_set.dim() != a.matrix.rows() || ell.vector.size() != x_set.dim())
    throw DimensionMismatch("form, functional and set dimensions differ");

  const double C = a.continuity_C, alpha = a.coercivity_alpha;
  const double rho = alpha / (C * C);
  const double q = std::sqrt(std::max(1.0 - alpha * alpha / (C * C), 0.0));
  const double qc = std::min(std::max(q, 1e-12), 1.0 - 1e-12);
  const double step_tol = opts.tol * (1.0 - qc) / qc;

  // The VI map: x satisfies the inequality iff x = P_X(x - rho F(x)) with
  // F(x) = A'x - ell.
  const Eigen::MatrixXd At = a.matrix.transpose();
  auto residual_over_vertices = [&](const Vector& x) {
    const Vector fx = At * x - ell.vector;
    double r = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < x_set.num_vertices(); ++j)
      r = std::max(r, fx.dot(x - x_set.vertex(j)));
    return r;
  };

  // Inner projections run two orders tighter than the target residual so
  // their own stopping noise cannot floor the certificate.
  const double proj_tol = std::max(opts.tol * 1e-2, 1e-14);
  Vector x = opts.start ? *opts.start : x_set.barycenter();
  Eigen::VectorXd warm;
  {
    const Projection p0 = project(x_set, x, proj_tol);
    x = p0.point;
    warm = p0.weights;
  }

  VISolution out;
  // The step criterion from the contraction constant is the first gate;
  // when the certified vertex residual still exceeds tol (scales larger
  // than one), keep contracting with a tightened step target.
  double step_target = step_tol;
  for (long k = 0; k < opts.max_iterations; ++k) {
    if (opts.observer) opts.observer(k, x);
    const Vector target = x - rho * (At * x - ell.vector);
    const Projection pr = project(x_set, target, proj_tol, &warm);
    warm = pr.weights;
    const double step = (pr.point - x).norm();
    x = pr.point;
    out.iterations = k + 1;
    if (step <= step_target) {
      out.residual = residual_over_vertices(x);
      if (out.residual <= opts.tol) {
        out.point = x;
        return out;
      }
      step_target = std::max(0.25 * step_target, 1e-17);
    }
  }
  out.residual = residual_over_vertices(x);
  if (out.residual <= opts.tol) {
    out.point = x;
    return out;
  }
  throw NonConvergence("projected contraction missed the residual target",
                       out.residual, out.iterations);
}

namespace {

struct Tracker {
  long evals = 0;
};

double golden_section(const std::function<double(double)>& h, double lo,
                      double hi, int iters, double* arg) {
  const double phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = h(x1), f2 = h(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 <= f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - phi * (b - a);
      f1 = h(x1);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + phi * (b - a);
      f2 = h(x2);
    }
  }
  if (f1 <= f2) { *arg = x1; return f1; }
  *arg = x2;
  return f2;
}

}  // namespace

MinimizeResult mazur_schauder_minimize(
    const std::function<double(const Vector&)>& phi, const Polytope& x_set,
    double tol, const MinimizeOptions& opts) {
  Tracker trk;
  auto eval = [&](const Vector& v) {
    ++trk.evals;
    return phi(v);
  };

  Rng rng(opts.seed);
  if (opts.validate_quasiconvexity) {
    for (int s = 0; s < 12; ++s) {
      const Vector a = x_set.vertex_matrix() * rng.simplex_weights(x_set.num_vertices());
      const Vector b = x_set.vertex_matrix() * rng.simplex_weights(x_set.num_vertices());
      if (!is_quasiconvex_1d(phi, a, b, 33, std::max(tol, 1e-7)))
        throw QuasiconvexityViolated("functional fails quasiconvexity", a, b);
    }
  }

  // Multi-start coordinate-segment search in barycentric coordinates:
  // transfer weight between two vertices at a time. The slice stays inside
  // the hull by construction and is unimodal on convex level sets.
  const Eigen::MatrixXd& verts = x_set.vertex_matrix();
  const int nv = x_set.num_vertices();
  std::vector<Eigen::VectorXd> starts{
      Eigen::VectorXd::Constant(nv, 1.0 / nv)};
  for (int r = 1; r < opts.restarts; ++r)
    starts.push_back(rng.simplex_weights(nv));

  Vector best_x = verts * starts.front();
  double best_v = eval(best_x);
  for (const auto& start : starts) {
    Eigen::VectorXd lam = start;
    Vector x = verts * lam;
    double v = eval(x);
    for (int sweep = 0; sweep < opts.sweeps; ++sweep) {
      const double before = v;
      for (int i = 0; i < nv; ++i) {
        for (int j = i + 1; j < nv; ++j) {
          const double tlo = -lam[i], thi = lam[j];
          if (thi - tlo <= 1e-15) continue;
          const Vector dir = verts.col(i) - verts.col(j);
          if (dir.norm() <= 1e-14) continue;
          double targ = 0.0;
          const double tv = golden_section(
              [&](double t) { return eval(x + t * dir); }, tlo, thi, 80, &targ);
          if (tv < v) {
            v = tv;
            lam[i] += targ;
            lam[j] -= targ;
            x += targ * dir;
          }
        }
      }
      if (before - v <= 1e-14 * (1.0 + std::abs(v))) break;
    }
    if (v < best_v) {
      best_v = v;
      best_x = x;
    }
  }

  // Fallback polish: box-grid refinement around the incumbent.
  {
    BarycentricSolver inside(x_set);
    auto [lo, hi] = x_set.bounding_box();
    Vector half = (hi - lo) / 2.0;
    Vector center = best_x;
    for (int round = 0; round < 6; ++round) {
      const Vector glo = lo.cwiseMax(center - half);
      const Vector ghi = hi.cwiseMin(center + half).cwiseMax(glo);
      for (const auto& p : box_grid(glo, ghi, 7)) {
        if (!inside.contains(p, 1e-9)) continue;
        const double v = eval(p);
        if (v < best_v) {
          best_v = v;
          best_x = p;
        }
      }
      center = best_x;
      half /= 2.0;
    }
  }

  MinimizeResult out;
  out.xbar = best_x;
  out.value = best_v;
  out.evaluations = trk.evals;

  // Certificate sweep: the reported value must undercut every sample.
  double viol = 0.0;
  BarycentricSolver inside(x_set);
  auto [lo, hi] = x_set.bounding_box();
  for (const auto& p : box_grid(lo, hi, 9))
    if (inside.contains(p, 1e-9)) viol = std::max(viol, out.value - eval(p));
  for (int s = 0; s < 64; ++s) {
    const Vector p =
        x_set.vertex_matrix() * rng.simplex_weights(x_set.num_vertices());
    viol = std::max(viol, out.value - eval(p));
  }
  out.certificate_violation = viol;
  if (viol > tol)
    throw NonConvergence("minimizer certificate failed", viol, trk.evals);
  return out;
}

MinimizeResult mazur_schauder_minimize(
    const std::function<double(const Vector&)>& phi, const CoerciveDomain& dom,
    double tol, const MinimizeOptions& opts) {
  if (dom.dim < 1) throw Error("coercive domain needs a positive dimension");
  if (!dom.radius_for_level)
    throw CoercivityRadiusMissing(
        "unbounded minimization needs a coercivity radius function");

  // Truncate to the compact box the coercivity level guarantees, then
  // minimize there; points outside the ball cannot undercut the seed level.
  const Vector origin = Vector::Zero(dom.dim);
  const double level = phi(origin);
  const double radius = dom.radius_for_level(level);
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw CoercivityRadiusMissing("radius function returned no usable radius");

  const int corners = 1 << dom.dim;
  Eigen::MatrixXd verts(dom.dim, corners);
  for (int cmask = 0; cmask < corners; ++cmask)
    for (int j = 0; j < dom.dim; ++j)
      verts(j, cmask) = (cmask & (1 << j)) ? radius : -radius;
  return mazur_schauder_minimize(phi, Polytope(std::move(verts)), tol, opts);
}

}  // namespace convexkit
