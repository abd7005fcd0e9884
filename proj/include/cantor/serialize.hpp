#pragma once

#include "json.hpp"

#include "cantor/clopen.hpp"
#include "cantor/compare.hpp"
#include "cantor/crossed.hpp"
#include "cantor/returns.hpp"
#include "cantor/shape.hpp"
#include "cantor/tiling.hpp"

namespace cantor {

// External formats (JSON syntax):
//   system:  {"kind":"odometer","bases":[2,2]} | {"kind":"substitution",
//            "rules":{"a":"ab","b":"a"}} | {"kind":"cycle","n":4} |
//            {"kind":"product","factors":[...]}
//   clopen:  {"radius":r,"words":["...", ...]}  (display words; product
//            factors separated by '|')
//   crossed: {"support":[g...],"coeffs":{"g":{"radius":r,"values":{...}}}}

nlohmann::json system_to_json(const System& s);
SystemPtr system_from_json(const nlohmann::json& j);

nlohmann::json clopen_to_json(const Clopen& e);
Clopen clopen_from_json(const SystemPtr& sys, const nlohmann::json& j);

nlohmann::json group_element_to_json(const GroupElement& g);
GroupElement group_element_from_json(const nlohmann::json& j, int dim);

nlohmann::json towers_to_json(const TowerDecomposition& t);
TowerDecomposition towers_from_json(const SystemPtr& sys, const nlohmann::json& j);

nlohmann::json tiling_to_json(const Tiling& t);
nlohmann::json shape_function_to_json(const ShapeFunction& s);

nlohmann::json witness_to_json(const SubequivalenceWitness& w);
SubequivalenceWitness witness_from_json(const SystemPtr& sys, const nlohmann::json& j);

nlohmann::json crossed_to_json(const CrossedElement& a);
CrossedElement crossed_from_json(const SystemPtr& sys, const nlohmann::json& j);

/// Rejects unknown keys (schema validation for config files).
void require_keys(const nlohmann::json& j, const std::vector<std::string>& allowed,
                  const std::string& context);

}  // namespace cantor
