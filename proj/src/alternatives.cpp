#include "convexkit/alternatives.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "convexkit/geometry.hpp"
#include "convexkit/grids.hpp"
#include "convexkit/matrix_game.hpp"
#include "convexkit/rng.hpp"

namespace convexkit {

QuasiconvexityCheck check_quasiconvex_1d(
    const std::function<double(const Vector&)>& f, const Vector& a,
    const Vector& b, int samples, double tol) {
  if (samples < 3) throw Error("quasiconvexity check needs >= 3 samples");
  std::vector<double> ts(static_cast<size_t>(samples));
  std::vector<double> vals(static_cast<size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    const double t = static_cast<double>(i) / (samples - 1);
    ts[static_cast<size_t>(i)] = t;
    vals[static_cast<size_t>(i)] = f(a + t * (b - a));
  }
  // f(mid) <= max(f(ends)) + tol for all sampled triples; a middle value
  // violates iff it strictly exceeds both some prefix and some suffix value.
  std::vector<double> prefix_min(vals), suffix_min(vals);
  std::vector<int> prefix_arg(vals.size()), suffix_arg(vals.size());
  prefix_arg[0] = 0;
  for (size_t i = 1; i < vals.size(); ++i) {
    prefix_min[i] = std::min(prefix_min[i - 1], vals[i]);
    prefix_arg[i] = prefix_min[i - 1] <= vals[i] ? prefix_arg[i - 1]
                                                 : static_cast<int>(i);
  }
  suffix_arg[vals.size() - 1] = static_cast<int>(vals.size()) - 1;
  for (size_t i = vals.size() - 1; i-- > 0;) {
    suffix_min[i] = std::min(suffix_min[i + 1], vals[i]);
    suffix_arg[i] = suffix_min[i + 1] <= vals[i] ? suffix_arg[i + 1]
                                                 : static_cast<int>(i);
  }
  for (size_t j = 1; j + 1 < vals.size(); ++j) {
    if (vals[j] > prefix_min[j - 1] + tol && vals[j] > suffix_min[j + 1] + tol) {
      return {false, ts[static_cast<size_t>(prefix_arg[j - 1])], ts[j],
              ts[static_cast<size_t>(suffix_arg[j + 1])]};
    }
  }
  return {};
}

bool is_quasiconvex_1d(const std::function<double(const Vector&)>& f,
                       const Vector& a, const Vector& b, int samples,
                       double tol) {
  return check_quasiconvex_1d(f, a, b, samples, tol).ok;
}

namespace {

constexpr std::uint64_t kValidatorSeed = 0x5eed5eedULL;

Vector random_hull_point(Rng& rng, const Polytope& p) {
  return p.vertex_matrix() * rng.simplex_weights(p.num_vertices());
}

// Spot validation of the declared quasi-structure along sampled segments.
void validate_tags(const BifunctionInstance& inst, double tol) {
  Rng rng(kValidatorSeed);
  const int segments = 4, anchors = 3, samples = 17;
  const double pad = std::max(tol, 1e-7);

  for (int a = 0; a < anchors; ++a) {
    const Vector y = random_hull_point(rng, inst.Y);
    const Vector x = random_hull_point(rng, inst.X);
    for (int s = 0; s < segments; ++s) {
      const Vector x1 = random_hull_point(rng, inst.X);
      const Vector x2 = random_hull_point(rng, inst.X);
      if (inst.tags.quasiconvex_in_x &&
          !is_quasiconvex_1d([&](const Vector& z) { return inst.eval(z, y); },
                             x1, x2, samples, pad))
        throw StructureViolation("quasiconvexity in x fails along a segment",
                                 x1, x2);
      if (inst.tags.quasiconcave_in_x &&
          !is_quasiconvex_1d([&](const Vector& z) { return -inst.eval(z, y); },
                             x1, x2, samples, pad))
        throw StructureViolation("quasiconcavity in x fails along a segment",
                                 x1, x2);
      const Vector y1 = random_hull_point(rng, inst.Y);
      const Vector y2 = random_hull_point(rng, inst.Y);
      if (inst.tags.quasiconvex_in_y &&
          !is_quasiconvex_1d([&](const Vector& z) { return inst.eval(x, z); },
                             y1, y2, samples, pad))
        throw StructureViolation("quasiconvexity in y fails along a segment",
                                 y1, y2);
      if (inst.tags.quasiconcave_in_y &&
          !is_quasiconvex_1d([&](const Vector& z) { return -inst.eval(x, z); },
                             y1, y2, samples, pad))
        throw StructureViolation("quasiconcavity in y fails along a segment",
                                 y1, y2);
    }
  }
}

// Membership-filtered axis grids over a polytope, with refinement windows.
class PolytopeGrid {
 public:
  explicit PolytopeGrid(const Polytope& p) : poly_(p), solver_(p) {
    std::tie(lo_, hi_) = p.bounding_box();
  }

  std::vector<Vector> global(int per_axis) const {
    return filtered(lo_, hi_, per_axis);
  }

  std::vector<Vector> around(const Vector& center, const Vector& half,
                             int per_axis) const {
    const Vector lo = lo_.cwiseMax(center - half);
    const Vector hi = hi_.cwiseMin(center + half).cwiseMax(lo);
    return filtered(lo, hi, per_axis);
  }

  Vector span() const { return hi_ - lo_; }

 private:
  std::vector<Vector> filtered(const Vector& lo, const Vector& hi,
                               int per_axis) const {
    std::vector<Vector> out;
    for (auto& x : box_grid(lo, hi, per_axis))
      if (solver_.contains(x, 1e-9)) out.push_back(std::move(x));
    if (out.empty())
      for (int j = 0; j < poly_.num_vertices(); ++j)
        out.push_back(poly_.vertex(j));
    return out;
  }

  const Polytope& poly_;
  BarycentricSolver solver_;
  Vector lo_, hi_;
};

struct BestPoint {
  Vector point;
  double value = -std::numeric_limits<double>::infinity();
};

bool is_standard_simplex(const Polytope& p, double tol) {
  if (p.num_vertices() != p.dim()) return false;
  return (p.vertex_matrix() -
          Eigen::MatrixXd::Identity(p.dim(), p.dim()))
             .cwiseAbs()
             .maxCoeff() <= tol;
}

void require_standard_simplices(const BifunctionInstance& inst) {
  if (!is_standard_simplex(inst.X, 1e-12) ||
      !is_standard_simplex(inst.Y, 1e-12))
    throw Error("bilinear instances must live on standard simplices");
}

double bilinear_maxmin(const BifunctionInstance& inst) {
  require_standard_simplices(inst);
  return solve_matrix_game(inst.bilinear->matrix).row_value +
         inst.bilinear->constant;
}

double bilinear_minmax(const BifunctionInstance& inst) {
  require_standard_simplices(inst);
  return solve_matrix_game(inst.bilinear->matrix).col_value +
         inst.bilinear->constant;
}

}  // namespace

AlternativeOutcome infsup_alternative(const BifunctionInstance& inst,
                                      double lambda, const GridSchedule& grid,
                                      double tol) {
  if (!inst.tags.lsc_in_x || !inst.tags.quasiconvex_in_x ||
      !inst.tags.quasiconcave_in_y)
    throw Error(
        "infsup alternative needs tags {lsc + quasiconvex in x, quasiconcave "
        "in y}");
  {
    // Y must sit inside X (vertex containment).
    BarycentricSolver in_x(inst.X);
    for (int j = 0; j < inst.Y.num_vertices(); ++j)
      if (!in_x.contains(inst.Y.vertex(j), std::max(tol, 1e-8)))
        throw Error("Y is not contained in X");
  }
  validate_tags(inst, tol);

  AlternativeOutcome out;
  long checked = 0;

  // Branch A: scan the diagonal for f(x, x) > lambda. The diagonal lives
  // where both arguments make sense, i.e. on Y.
  PolytopeGrid ygrid(inst.Y);
  {
    BestPoint best;
    Vector half = ygrid.span() / 2.0;
    std::vector<Vector> pts = ygrid.global(grid.initial_per_axis);
    for (int round = 0; round < grid.rounds; ++round) {
      for (const auto& x : pts) {
        ++checked;
        const double v = inst.eval(x, x);
        if (v > best.value) best = {x, v};
        if (v > lambda) {
          out.branch = Branch::A;
          out.witness = x;
          out.certificate = {checked, v - lambda};
          return out;
        }
      }
      half /= 2.0;
      pts = ygrid.around(best.point, half, grid.initial_per_axis);
    }
  }

  // Branch B: minimize the Y-grid max of f over Y.
  const std::vector<Vector> yfix = ygrid.global(grid.initial_per_axis);
  auto sup_over_y = [&](const Vector& x) {
    double s = -std::numeric_limits<double>::infinity();
    for (const auto& y : yfix) {
      ++checked;
      s = std::max(s, inst.eval(x, y));
    }
    return s;
  };
  BestPoint inc;
  inc.value = std::numeric_limits<double>::infinity();
  Vector half = ygrid.span() / 2.0;
  std::vector<Vector> pts = ygrid.global(grid.initial_per_axis);
  for (int round = 0; round < grid.rounds; ++round) {
    for (const auto& x : pts) {
      const double s = sup_over_y(x);
      if (s < inc.value) inc = {x, s};
    }
    if (inc.value <= lambda + tol) {
      out.branch = Branch::B;
      out.witness = inc.point;
      out.certificate = {checked, inc.value - lambda};
      return out;
    }
    half /= 2.0;
    pts = ygrid.around(inc.point, half, grid.initial_per_axis);
  }

  throw ResolutionInsufficient(
      "neither alternative branch certified at this resolution");
}

AlternativeOutcome two_function_alternative(const BifunctionInstance& f,
                                            const BifunctionInstance& g,
                                            double lambda,
                                            const GridSchedule& grid,
                                            double tol) {
  if (!f.X.same_vertices(g.X, 1e-12) || !f.Y.same_vertices(g.Y, 1e-12))
    throw Error("the two bifunctions must share X and Y");

  AlternativeOutcome out;

  if (f.bilinear && g.bilinear) {
    // f <= g entrywise suffices on simplices.
    const Eigen::MatrixXd fm = f.bilinear->matrix.array() + f.bilinear->constant;
    const Eigen::MatrixXd gm = g.bilinear->matrix.array() + g.bilinear->constant;
    for (int i = 0; i < fm.rows(); ++i)
      for (int j = 0; j < fm.cols(); ++j)
        if (fm(i, j) > gm(i, j) + tol)
          throw PrecondViolated("f > g at a vertex pair",
                                Vector::Unit(fm.rows(), i),
                                Vector::Unit(fm.cols(), j), fm(i, j), gm(i, j));
    const auto ggame = solve_matrix_game(g.bilinear->matrix);
    const double alpha = ggame.row_value + g.bilinear->constant;
    if (alpha >= lambda - tol) {
      out.branch = Branch::A;
      out.witness = ggame.row_strategy;
      out.certificate = {2, lambda - alpha};
      return out;
    }
    const auto fgame = solve_matrix_game(f.bilinear->matrix);
    const double beta = fgame.col_value + f.bilinear->constant;
    if (beta <= lambda + tol) {
      out.branch = Branch::B;
      out.witness = fgame.col_strategy;
      out.certificate = {2, beta - lambda};
      return out;
    }
    throw ResolutionInsufficient("program pair certified neither branch");
  }

  validate_tags(f, tol);
  validate_tags(g, tol);

  PolytopeGrid xgrid(f.X), ygrid(f.Y);
  const std::vector<Vector> xs = xgrid.global(grid.initial_per_axis);
  const std::vector<Vector> ys = ygrid.global(grid.initial_per_axis);

  long checked = 0;
  // Hypothesis (i): f <= g, spot-checked on the product grid.
  for (const auto& x : xs)
    for (const auto& y : ys) {
      ++checked;
      const double fv = f.eval(x, y), gv = g.eval(x, y);
      if (fv > gv + std::max(tol, 1e-9))
        throw PrecondViolated("f > g on the grid", x, y, fv, gv);
    }

  // Branch A: maximize over x the Y-grid min of g.
  {
    BestPoint best;
    Vector half = xgrid.span() / 2.0;
    std::vector<Vector> pts = xs;
    for (int round = 0; round < grid.rounds; ++round) {
      for (const auto& x : pts) {
        double m = std::numeric_limits<double>::infinity();
        for (const auto& y : ys) {
          ++checked;
          m = std::min(m, g.eval(x, y));
        }
        if (m > best.value) best = {x, m};
      }
      if (best.value >= lambda - tol) {
        out.branch = Branch::A;
        out.witness = best.point;
        out.certificate = {checked, lambda - best.value};
        return out;
      }
      half /= 2.0;
      pts = xgrid.around(best.point, half, grid.initial_per_axis);
    }
  }

  // Branch B: minimize over y the X-grid max of f.
  {
    BestPoint best;
    best.value = std::numeric_limits<double>::infinity();
    Vector half = ygrid.span() / 2.0;
    std::vector<Vector> pts = ys;
    for (int round = 0; round < grid.rounds; ++round) {
      for (const auto& y : pts) {
        double m = -std::numeric_limits<double>::infinity();
        for (const auto& x : xs) {
          ++checked;
          m = std::max(m, f.eval(x, y));
        }
        if (m < best.value) best = {y, m};
      }
      if (best.value <= lambda + tol) {
        out.branch = Branch::B;
        out.witness = best.point;
        out.certificate = {checked, best.value - lambda};
        return out;
      }
      half /= 2.0;
      pts = ygrid.around(best.point, half, grid.initial_per_axis);
    }
  }

  throw ResolutionInsufficient(
      "neither alternative branch certified at this resolution");
}

GapResult supinf_infsup_gap(const BifunctionInstance& f,
                            const BifunctionInstance& g,
                            const GridSchedule& grid, double tol) {
  if (!f.X.same_vertices(g.X, 1e-12) || !f.Y.same_vertices(g.Y, 1e-12))
    throw Error("the two bifunctions must share X and Y");

  GapResult out;
  if (f.bilinear && g.bilinear) {
    out.alpha = bilinear_maxmin(g);
    out.beta = bilinear_minmax(f);
  } else {
    PolytopeGrid xgrid(f.X), ygrid(f.Y);
    const auto xs = xgrid.global(grid.initial_per_axis);
    const auto ys = ygrid.global(grid.initial_per_axis);
    out.alpha = -std::numeric_limits<double>::infinity();
    for (const auto& x : xs) {
      double m = std::numeric_limits<double>::infinity();
      for (const auto& y : ys) m = std::min(m, g.eval(x, y));
      out.alpha = std::max(out.alpha, m);
    }
    out.beta = std::numeric_limits<double>::infinity();
    for (const auto& y : ys) {
      double m = -std::numeric_limits<double>::infinity();
      for (const auto& x : xs) m = std::max(m, f.eval(x, y));
      out.beta = std::min(out.beta, m);
    }
  }
  if (out.alpha < out.beta - tol)
    throw TheoremViolation("sup inf fell below inf sup: tag or grid misuse",
                           out.alpha, out.beta);
  return out;
}

SaddleResult saddle_point(const BifunctionInstance& inst, double tol,
                          const GridSchedule& grid) {
  SaddleResult out;
  if (inst.bilinear) {
    require_standard_simplices(inst);
    const auto game = solve_matrix_game(inst.bilinear->matrix);
    out.x0 = game.row_strategy;
    out.y0 = game.col_strategy;
    out.supinf = game.row_value + inst.bilinear->constant;
    out.infsup = game.col_value + inst.bilinear->constant;
    out.value = out.supinf;
    return out;
  }

  validate_tags(inst, tol);
  PolytopeGrid xgrid(inst.X), ygrid(inst.Y);
  std::vector<Vector> xs = xgrid.global(grid.initial_per_axis);
  std::vector<Vector> ys = ygrid.global(grid.initial_per_axis);
  Vector xhalf = xgrid.span() / 2.0, yhalf = ygrid.span() / 2.0;

  for (int round = 0; round < grid.rounds; ++round) {
    BestPoint bx;
    for (const auto& x : xs) {
      double m = std::numeric_limits<double>::infinity();
      for (const auto& y : ys) m = std::min(m, inst.eval(x, y));
      if (m > bx.value) bx = {x, m};
    }
    BestPoint by;
    by.value = std::numeric_limits<double>::infinity();
    for (const auto& y : ys) {
      double m = -std::numeric_limits<double>::infinity();
      for (const auto& x : xs) m = std::max(m, inst.eval(x, y));
      if (m < by.value) by = {y, m};
    }
    out.x0 = bx.point;
    out.y0 = by.point;
    out.supinf = bx.value;
    out.infsup = by.value;
    out.value = inst.eval(bx.point, by.point);

    bool saddle = true;
    for (const auto& x : xs)
      saddle = saddle && inst.eval(x, out.y0) <= out.value + tol;
    for (const auto& y : ys)
      saddle = saddle && inst.eval(out.x0, y) >= out.value - tol;
    if (saddle && std::abs(out.supinf - out.infsup) <= 2 * tol) return out;

    xhalf /= 2.0;
    yhalf /= 2.0;
    xs = xgrid.around(out.x0, xhalf, grid.initial_per_axis);
    ys = ygrid.around(out.y0, yhalf, grid.initial_per_axis);
  }
  throw ResolutionInsufficient("no saddle certificate at this resolution");
}

}  // namespace convexkit
