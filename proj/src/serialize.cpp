#include "cantor/serialize.hpp"

#include <algorithm>
#include <stdexcept>

namespace cantor {

using nlohmann::json;

void require_keys(const json& j, const std::vector<std::string>& allowed,
                  const std::string& context) {
  if (!j.is_object()) throw std::invalid_argument(context + ": expected an object");
  for (const auto& [k, v] : j.items())
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
      throw std::invalid_argument(context + ": unknown field '" + k + "'");
}

json system_to_json(const System& s) {
  json j;
  switch (s.kind()) {
    case SystemKind::Odometer:
      j["kind"] = "odometer";
      j["bases"] = s.odometer_bases();
      break;
    case SystemKind::Cycle:
      j["kind"] = "cycle";
      j["n"] = s.cycle_period();
      break;
    case SystemKind::Substitution: {
      j["kind"] = "substitution";
      json rules = json::object();
      const auto& letters = s.substitution_letters();
      const auto& images = s.substitution_images();
      for (std::size_t i = 0; i < letters.size(); ++i) {
        std::string img;
        for (char sym : images[i]) img += letters[static_cast<int>(sym)];
        rules[std::string(1, letters[i])] = img;
      }
      j["rules"] = rules;
      break;
    }
    case SystemKind::Product: {
      j["kind"] = "product";
      json factors = json::array();
      for (int i = 0; i < s.factor_count(); ++i) factors.push_back(system_to_json(s.factor(i)));
      j["factors"] = factors;
      break;
    }
  }
  return j;
}

SystemPtr system_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw std::invalid_argument("system: missing 'kind'");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "odometer") {
    require_keys(j, {"kind", "bases"}, "system");
    return System::odometer(j.at("bases").get<std::vector<int>>());
  }
  if (kind == "cycle") {
    require_keys(j, {"kind", "n"}, "system");
    return System::cycle(j.at("n").get<int>());
  }
  if (kind == "substitution") {
    require_keys(j, {"kind", "rules"}, "system");
    std::map<std::string, std::string> rules;
    for (const auto& [k, v] : j.at("rules").items()) rules[k] = v.get<std::string>();
    return System::substitution(rules);
  }
  if (kind == "product") {
    require_keys(j, {"kind", "factors"}, "system");
    std::vector<SystemPtr> factors;
    for (const auto& f : j.at("factors")) factors.push_back(system_from_json(f));
    return System::product(std::move(factors));
  }
  throw std::invalid_argument("system: unknown kind '" + kind + "'");
}

json clopen_to_json(const Clopen& e) {
  json j;
  j["radius"] = e.radius();
  json words = json::array();
  for (const auto& w : e.words()) words.push_back(e.system()->display(w));
  j["words"] = words;
  return j;
}

Clopen clopen_from_json(const SystemPtr& sys, const json& j) {
  require_keys(j, {"radius", "words"}, "clopen");
  const int radius = j.at("radius").get<int>();
  std::vector<Word> words;
  for (const auto& w : j.at("words"))
    words.push_back(sys->from_display(w.get<std::string>(), radius));
  return Clopen::from_words(sys, radius, std::move(words));
}

json group_element_to_json(const GroupElement& g) {
  if (g.rank() == 1) return json(g.coords[0]);
  return json(g.coords);
}

GroupElement group_element_from_json(const json& j, int dim) {
  if (j.is_number_integer()) {
    if (dim != 1)
      throw std::invalid_argument("group element: expected " + std::to_string(dim) +
                                  " coordinates");
    return GroupElement::z(j.get<std::int64_t>());
  }
  auto coords = j.get<std::vector<std::int64_t>>();
  if (static_cast<int>(coords.size()) != dim)
    throw std::invalid_argument("group element: rank mismatch");
  return GroupElement(std::move(coords));
}

json towers_to_json(const TowerDecomposition& t) {
  json j;
  json towers = json::array();
  for (const auto& tw : t.towers) {
    json one;
    one["base"] = clopen_to_json(tw.base);
    json shape = json::array();
    for (const auto& g : tw.shape.elements()) shape.push_back(group_element_to_json(g));
    one["shape"] = shape;
    towers.push_back(one);
  }
  j["towers"] = towers;
  j["complement"] = clopen_to_json(t.complement);
  return j;
}

TowerDecomposition towers_from_json(const SystemPtr& sys, const json& j) {
  require_keys(j, {"towers", "complement"}, "towers");
  TowerDecomposition t;
  for (const auto& one : j.at("towers")) {
    require_keys(one, {"base", "shape"}, "tower");
    Tower tw;
    tw.base = clopen_from_json(sys, one.at("base"));
    std::vector<GroupElement> shape;
    for (const auto& g : one.at("shape")) shape.push_back(group_element_from_json(g, sys->dim()));
    tw.shape = FiniteGroupSet(std::move(shape));
    t.towers.push_back(std::move(tw));
  }
  t.complement = clopen_from_json(sys, j.at("complement"));
  return t;
}

json tiling_to_json(const Tiling& t) {
  json j;
  json tiles = json::array();
  for (const auto& tile : t.tiles) {
    json one = json::array();
    for (const auto& g : tile.elements()) one.push_back(group_element_to_json(g));
    tiles.push_back(one);
  }
  j["tiles"] = tiles;
  json cells = json::array();
  for (const auto& c : t.cells) {
    json one;
    one["cell"] = clopen_to_json(c.cell);
    one["tile"] = c.tile;
    one["offset"] = group_element_to_json(c.offset);
    cells.push_back(one);
  }
  j["cells"] = cells;
  j["continuity_radius"] = t.continuity_radius;
  return j;
}

json shape_function_to_json(const ShapeFunction& s) {
  json j;
  json cells = json::array();
  for (const auto& c : s.cells) {
    json one;
    json shape = json::array();
    for (const auto& g : c.shape.elements()) shape.push_back(group_element_to_json(g));
    one["shape"] = shape;
    one["cell"] = clopen_to_json(c.cell);
    cells.push_back(one);
  }
  j["cells"] = cells;
  j["domain"] = clopen_to_json(s.domain);
  return j;
}

json witness_to_json(const SubequivalenceWitness& w) {
  json j;
  json pieces = json::array();
  for (const auto& [piece, g] : w.pieces) {
    json one;
    one["piece"] = clopen_to_json(piece);
    one["translation"] = group_element_to_json(g);
    pieces.push_back(one);
  }
  j["pieces"] = pieces;
  return j;
}

SubequivalenceWitness witness_from_json(const SystemPtr& sys, const json& j) {
  require_keys(j, {"pieces"}, "witness");
  SubequivalenceWitness w;
  for (const auto& one : j.at("pieces")) {
    require_keys(one, {"piece", "translation"}, "witness piece");
    w.pieces.push_back({clopen_from_json(sys, one.at("piece")),
                        group_element_from_json(one.at("translation"), sys->dim())});
  }
  return w;
}

json crossed_to_json(const CrossedElement& a) {
  json j;
  json support = json::array();
  json coeffs = json::object();
  for (const auto& [g, f] : a.coefficients()) {
    support.push_back(group_element_to_json(g));
    json cj;
    cj["radius"] = f.radius();
    json values = json::object();
    const auto& atoms = a.system()->admissible(f.radius());
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if (f.values()[i] != 0.0) values[a.system()->display(atoms[i])] = f.values()[i];
    cj["values"] = values;
    coeffs[g.str()] = cj;
  }
  j["support"] = support;
  j["coeffs"] = coeffs;
  return j;
}

CrossedElement crossed_from_json(const SystemPtr& sys, const json& j) {
  require_keys(j, {"support", "coeffs"}, "crossed element");
  CrossedElement a(sys);
  for (const auto& [key, cj] : j.at("coeffs").items()) {
    require_keys(cj, {"radius", "values"}, "crossed coefficient");
    GroupElement g;
    if (!key.empty() && key.front() == '(') {
      std::vector<std::int64_t> coords;
      std::string cur;
      for (char c : key) {
        if (c == '(') continue;
        if (c == ',' || c == ')') {
          coords.push_back(std::stoll(cur));
          cur.clear();
        } else {
          cur += c;
        }
      }
      g = GroupElement(std::move(coords));
    } else {
      g = GroupElement::z(std::stoll(key));
    }
    const int radius = cj.at("radius").get<int>();
    std::vector<double> values(sys->admissible(radius).size(), 0.0);
    for (const auto& [word, v] : cj.at("values").items())
      values[sys->atom_index(sys->from_display(word, radius), radius)] = v.get<double>();
    a.set_coefficient(g, LcReal::from_values(sys, radius, std::move(values)));
  }
  return a;
}

}  // namespace cantor
