#include "convexkit/generators.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "convexkit/grids.hpp"
#include "convexkit/intersection.hpp"

namespace convexkit::gen {

std::vector<Polytope> simplex_faces_family(int n) {
  if (n < 0) throw Error("simplex face family needs n >= 0");
  const int amb = n + 2;  // vertices of the (n+1)-simplex
  std::vector<Polytope> family;
  family.reserve(static_cast<size_t>(amb));
  for (int skip = 0; skip < amb; ++skip) {
    Eigen::MatrixXd verts(amb, amb - 1);
    int col = 0;
    for (int j = 0; j < amb; ++j) {
      if (j == skip) continue;
      verts.col(col++) = Eigen::VectorXd::Unit(amb, j);
    }
    family.emplace_back(std::move(verts));
  }
  return family;
}

Polytope random_simplex(Rng& rng, int dim) {
  for (;;) {
    Eigen::MatrixXd verts(dim, dim + 1);
    for (int j = 0; j <= dim; ++j)
      verts.col(j) = 2.0 * rng.gaussian_vector(dim);
    Eigen::MatrixXd edges(dim, dim);
    for (int j = 0; j < dim; ++j)
      edges.col(j) = verts.col(j + 1) - verts.col(0);
    // Reject flat samples.
    if (std::abs(edges.fullPivLu().determinant()) > 0.05) return Polytope(verts);
  }
}

FiniteKKMMap star_kkm_map(Rng& rng, int dim) {
  const Polytope simplex = random_simplex(rng, dim);
  const int n = dim + 1;

  Eigen::VectorXd z_weights(n);
  for (int i = 0; i < n; ++i) z_weights[i] = rng.uniform(0.08, 1.0);
  z_weights /= z_weights.sum();

  Eigen::VectorXd thresholds(n);
  for (int i = 0; i < n; ++i)
    thresholds[i] = rng.uniform(0.3, 0.9) * z_weights[i];

  FiniteKKMMap map{{}, {}, simplex};
  for (int i = 0; i < n; ++i) map.domain_points.push_back(simplex.vertex(i));
  for (int i = 0; i < n; ++i) {
    // {weight_i >= t_i}: the corner simplex spanned by x_i and the points
    // where the i-th weight has decayed to t_i along each edge.
    Eigen::MatrixXd verts(dim, n);
    verts.col(0) = simplex.vertex(i);
    int col = 1;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      verts.col(col++) = thresholds[i] * simplex.vertex(i) +
                         (1.0 - thresholds[i]) * simplex.vertex(j);
    }
    map.values.emplace_back(std::move(verts));
  }
  return map;
}

FiniteKKMMap barycentric_cover_map() {
  const Polytope simplex(Eigen::MatrixXd::Identity(3, 3));
  FiniteKKMMap map{{}, {}, simplex};
  const double t = 1.0 / 3.0;
  for (int i = 0; i < 3; ++i) map.domain_points.push_back(simplex.vertex(i));
  for (int i = 0; i < 3; ++i) {
    Eigen::MatrixXd verts(3, 3);
    verts.col(0) = simplex.vertex(i);
    int col = 1;
    for (int j = 0; j < 3; ++j) {
      if (j == i) continue;
      verts.col(col++) = t * simplex.vertex(i) + (1.0 - t) * simplex.vertex(j);
    }
    map.values.emplace_back(std::move(verts));
  }
  return map;
}

std::vector<Polytope> positive_family(Rng& rng, int dim, int count) {
  if (count < 2) throw Error("positive family needs at least two members");
  const Vector planted = rng.gaussian_vector(dim);
  const Polytope base = [&] {
    Eigen::MatrixXd verts(dim, dim + 1);
    const Polytope s = random_simplex(rng, dim);
    for (int j = 0; j <= dim; ++j)
      verts.col(j) = planted + 0.6 * (s.vertex(j) - s.barycenter());
    return Polytope(verts);
  }();

  std::vector<Polytope> family{base, base};
  Eigen::MatrixXd grown = base.vertex_matrix();
  for (int k = 2; k < count; ++k) {
    const int extra = static_cast<int>(rng.uniform_int(1, 2));
    Eigen::MatrixXd next(dim, grown.cols() + extra);
    next.leftCols(grown.cols()) = grown;
    for (int e = 0; e < extra; ++e)
      next.col(grown.cols() + e) =
          planted + rng.uniform(0.8, 2.5) * rng.unit_vector(dim);
    grown = next;
    family.emplace_back(grown);
  }
  return family;
}

FiniteKKMMap family_to_kkm(const std::vector<Polytope>& family, double tol) {
  const int n = static_cast<int>(family.size());
  if (n < 2) throw Error("conversion needs at least two members");

  FiniteKKMMap map{{}, {}, family.back()};
  // Ambient: any member whose hull contains all values; the union equals
  // the largest member for the generated families. For safety take the
  // hull of everything.
  std::vector<Vector> all_verts;
  for (const auto& p : family)
    for (int j = 0; j < p.num_vertices(); ++j) all_verts.push_back(p.vertex(j));
  map.ambient = Polytope(all_verts);

  for (int j = 0; j < n; ++j) {
    std::vector<Polytope> rest;
    for (int i = 0; i < n; ++i)
      if (i != j) rest.push_back(family[static_cast<size_t>(i)]);
    const auto witness = find_common_point(rest, tol);
    if (!witness.found)
      throw Error("family is not a positive instance: a subfamily is empty");
    map.domain_points.push_back(witness.point);
    map.values.push_back(family[static_cast<size_t>(j)]);
  }
  return map;
}

ViInstance random_vi_instance(Rng& rng, int dim) {
  Eigen::MatrixXd r(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) r(i, j) = rng.uniform(-1.0, 1.0);
  r /= std::max(1.0, r.operatorNorm());
  const double shift = rng.uniform(1.3, 2.5);
  Eigen::MatrixXd a = r + shift * Eigen::MatrixXd::Identity(dim, dim);

  BilinearForm form;
  form.matrix = a;
  form.continuity_C = a.operatorNorm() + 1e-12;
  const Eigen::MatrixXd sym = 0.5 * (a + a.transpose());
  form.coercivity_alpha =
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(sym).eigenvalues().minCoeff() -
      1e-12;

  LinearFunctional ell(2.0 * rng.gaussian_vector(dim));

  const Vector center = rng.gaussian_vector(dim);
  Polytope x_set = [&] {
    const int nv = dim + 1 + static_cast<int>(rng.uniform_int(1, 4));
    Eigen::MatrixXd verts(dim, nv);
    for (int j = 0; j < nv; ++j)
      verts.col(j) = center + rng.uniform(0.4, 1.6) * rng.unit_vector(dim);
    return Polytope(verts);
  }();

  const Vector y0 = x_set.vertex(0);
  return {form, ell, x_set, y0};
}

Eigen::MatrixXd random_game(Rng& rng, int rows, int cols) {
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = rng.uniform(-1.0, 1.0);
  return m;
}

SelectionInstance random_selection_instance(Rng& rng, int dim, int balls) {
  const Vector center = rng.gaussian_vector(dim);
  const int nv = dim + 2;
  Eigen::MatrixXd verts(dim, nv);
  for (int j = 0; j < nv; ++j)
    verts.col(j) = center + rng.uniform(0.5, 1.5) * rng.unit_vector(dim);
  Polytope k(std::move(verts));

  SelectionInstance inst{std::move(k), {}, {}};
  std::vector<Vector> centers;
  for (int i = 0; i < balls; ++i)
    centers.push_back(inst.k.vertex_matrix() * rng.simplex_weights(nv));

  // Radius large enough that the balls cover every hull grid point.
  double worst = 0.0;
  int eff = 0;
  for (const auto& x : polytope_sample_grid(inst.k, 1.0 / 8, 4000, &eff)) {
    double nearest = 1e300;
    for (const auto& c : centers) nearest = std::min(nearest, (x - c).norm());
    worst = std::max(worst, nearest);
  }
  const double base = worst + 0.05 * inst.k.radius() + 1e-6;

  const int ydim = 2;
  for (int i = 0; i < balls; ++i) {
    inst.open_sets.push_back({centers[static_cast<size_t>(i)],
                              base * rng.uniform(1.05, 1.6)});
    inst.cover_points.push_back(rng.gaussian_vector(ydim));
  }
  return inst;
}

Eigen::MatrixXd random_stochastic_matrix(Rng& rng, int n, double mix) {
  Eigen::MatrixXd p(n, n);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
      p(i, j) = rng.uniform(0.05, 1.0);
      s += p(i, j);
    }
    p.row(i) /= s;
  }
  return (1.0 - mix) * p + mix * Eigen::MatrixXd::Constant(n, n, 1.0 / n);
}

std::vector<AffineMap> stochastic_polynomial_family(Rng& rng,
                                                    const Eigen::MatrixXd& t) {
  const auto n = t.rows();
  const Eigen::MatrixXd tt = t.transpose();  // distribution action
  std::vector<AffineMap> maps;
  for (int m = 0; m < 2; ++m) {
    Eigen::VectorXd coeff = rng.simplex_weights(4);
    Eigen::MatrixXd acc = coeff[0] * Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd power = Eigen::MatrixXd::Identity(n, n);
    for (int k = 1; k < 4; ++k) {
      power = power * tt;
      acc += coeff[k] * power;
    }
    maps.push_back({acc, Vector::Zero(n)});
  }
  return maps;
}

}  // namespace convexkit::gen
