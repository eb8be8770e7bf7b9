#pragma once

#include <json.hpp>

#include "hmom/matrix_core.hpp"

namespace hmom::detail {

using nlohmann::json;

json matrix_to_json(const CMatrix& a);
CMatrix matrix_from_json(const json& j, int q, const std::string& where);
json tolerances_to_json(const Tolerances& t);
Tolerances tolerances_from_json(const json& j, Tolerances base);

}  // namespace hmom::detail
