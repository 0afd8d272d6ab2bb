#pragma once

#include <json.hpp>

#include "convexkit/fixed_points.hpp"
#include "convexkit/kkm.hpp"
#include "convexkit/types.hpp"

namespace convexkit::io {

nlohmann::json to_json(const Vector& v);
nlohmann::json to_json(const Eigen::MatrixXd& m);
nlohmann::json to_json(const Polytope& p);  // {"vertices": [[...], ...]}

Vector vector_from_json(const nlohmann::json& j);
Eigen::MatrixXd matrix_from_json(const nlohmann::json& j);
Polytope polytope_from_json(const nlohmann::json& j);
AffineMap affine_map_from_json(const nlohmann::json& j);  // {"A":…, "b":…}
FiniteKKMMap kkm_map_from_json(const nlohmann::json& j);

}  // namespace convexkit::io
