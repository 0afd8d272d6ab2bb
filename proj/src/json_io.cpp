#include "convexkit/json_io.hpp"

namespace convexkit::io {

using nlohmann::json;

json to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

json to_json(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(row);
  }
  return out;
}

json to_json(const Polytope& p) {
  json verts = json::array();
  for (int j = 0; j < p.num_vertices(); ++j) verts.push_back(to_json(p.vertex(j)));
  return json{{"vertices", verts}};
}

Vector vector_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw Error("vector JSON must be a nonempty array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  Eigen::Index i = 0;
  for (const auto& x : j) {
    if (!x.is_number()) throw Error("vector entries must be numbers");
    v[i++] = x.get<double>();
  }
  return v;
}

Eigen::MatrixXd matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw Error("matrix JSON must be a nonempty array of rows");
  const auto cols = j.front().size();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(j.size()),
                    static_cast<Eigen::Index>(cols));
  Eigen::Index i = 0;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != cols)
      throw Error("matrix rows must be arrays of equal length");
    Eigen::Index k = 0;
    for (const auto& x : row) m(i, k++) = x.get<double>();
    ++i;
  }
  return m;
}

Polytope polytope_from_json(const json& j) {
  if (!j.contains("vertices"))
    throw Error("polytope JSON needs a \"vertices\" array");
  std::vector<Vector> verts;
  for (const auto& v : j.at("vertices")) verts.push_back(vector_from_json(v));
  return Polytope(verts);
}

AffineMap affine_map_from_json(const json& j) {
  return {matrix_from_json(j.at("A")), vector_from_json(j.at("b"))};
}

FiniteKKMMap kkm_map_from_json(const json& j) {
  FiniteKKMMap map{{}, {}, polytope_from_json(j.at("ambient"))};
  for (const auto& x : j.at("domain_points"))
    map.domain_points.push_back(vector_from_json(x));
  for (const auto& v : j.at("values"))
    map.values.push_back(polytope_from_json(v));
  return map;
}

}  // namespace convexkit::io
