#include <map>
#include <tuple>

#include "sphcover/cover.hpp"

namespace sphcover {

namespace {

using nlohmann::json;

json belt_params_json(const BeltGeometry& g) {
  const auto& p = g.params();
  return {{"d", g.d()}, {"eps1", p.eps1}, {"eps2", p.eps2}, {"delta1p", p.delta1p}, {"delta2p", p.delta2p}, {"tau", p.tau}};
}

json set_to_json(const CoverSet& set) {
  if (const auto* h = std::get_if<Hemisphere>(&set)) {
    json pole = json::array();
    for (const auto& c : h->pole.coords()) pole.push_back(to_string(c));
    return {{"type", "hemisphere"}, {"pole", pole}};
  }
  const auto kind = *predicate_kind(set);
  json out = {{"type", "predicate"}, {"kind", to_string(kind)}};
  if (const auto* a = std::get_if<ArcSet>(&set)) {
    out["params"] = {{"center_deg", a->center_deg}, {"half_width_deg", a->half_width_deg}};
  } else if (const auto* b = std::get_if<BeltSet>(&set)) {
    out["params"] = belt_params_json(*b->geometry);
    out["params"]["index"] = b->index;
  } else {
    out["params"] = json::object();
  }
  return out;
}

const json& require(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw std::invalid_argument(std::string("cover document: missing '") + key + "'");
  return obj.at(key);
}

int require_int(const json& obj, const char* key) {
  const auto& v = require(obj, key);
  if (!v.is_number_integer()) throw std::invalid_argument(std::string("cover document: '") + key + "' must be an integer");
  return v.get<int>();
}

double require_number(const json& obj, const char* key) {
  const auto& v = require(obj, key);
  if (!v.is_number()) throw std::invalid_argument(std::string("cover document: '") + key + "' must be a number");
  return v.get<double>();
}

using BeltKey = std::tuple<int, double, double, double, double, double>;

}  // namespace

json to_json(const Cover& cover) {
  json sets = json::array();
  for (const auto& s : cover.sets()) sets.push_back(set_to_json(s));
  const auto& c = cover.claims();
  json claims = {{"n", c.n}, {"m", c.m ? json(*c.m) : json(nullptr)}, {"north_closed", c.north_closed}};
  return {{"dim", cover.dim()},
          {"kind", cover.is_hemisphere_cover() ? "hemispheres" : "predicate"},
          {"sets", sets},
          {"claims", claims},
          {"provenance", cover.provenance()}};
}

Cover cover_from_json(const json& doc) {
  const int dim = require_int(doc, "dim");
  const auto& kind = require(doc, "kind");
  if (!kind.is_string() || (kind != "hemispheres" && kind != "predicate")) {
    throw std::invalid_argument("cover document: kind must be 'hemispheres' or 'predicate'");
  }
  const auto& sets_json = require(doc, "sets");
  if (!sets_json.is_array()) throw std::invalid_argument("cover document: 'sets' must be an array");

  std::map<BeltKey, std::shared_ptr<const BeltGeometry>> geometries;
  std::vector<CoverSet> sets;
  for (const auto& s : sets_json) {
    const auto& type = require(s, "type");
    if (type == "hemisphere") {
      const auto& pole = require(s, "pole");
      if (!pole.is_array()) throw std::invalid_argument("cover document: pole must be an array");
      std::vector<Rat> coords;
      for (const auto& c : pole) {
        if (!c.is_string()) throw std::invalid_argument("cover document: pole coordinates must be \"p/q\" strings");
        coords.push_back(parse_rat(c.get<std::string>()));
      }
      sets.push_back(Hemisphere{Direction(std::move(coords))});
    } else if (type == "predicate") {
      const auto& k = require(s, "kind");
      const auto& params = s.contains("params") ? s.at("params") : json::object();
      if (k == "arc") {
        sets.push_back(ArcSet{require_number(params, "center_deg"), require_number(params, "half_width_deg")});
      } else if (k == "northern-hemisphere") {
        sets.push_back(NorthernHemisphereSet{});
      } else if (k == "facet-extension" || k == "cap-extension") {
        BeltParams bp;
        bp.eps1 = require_number(params, "eps1");
        bp.eps2 = require_number(params, "eps2");
        bp.delta1p = require_number(params, "delta1p");
        bp.delta2p = require_number(params, "delta2p");
        bp.tau = require_number(params, "tau");
        const int d = require_int(params, "d");
        const int index = require_int(params, "index");
        const BeltKey key{d, bp.eps1, bp.eps2, bp.delta1p, bp.delta2p, bp.tau};
        auto& g = geometries[key];
        if (!g) g = std::make_shared<const BeltGeometry>(d, bp);
        const bool is_cap = index == d + 1;
        if (is_cap != (k == "cap-extension")) throw std::invalid_argument("cover document: belt kind does not match index");
        sets.push_back(BeltSet{g, index});
      } else {
        throw std::invalid_argument("cover document: unknown predicate kind " + k.dump());
      }
    } else {
      throw std::invalid_argument("cover document: unknown set type " + type.dump());
    }
  }

  const auto& cj = require(doc, "claims");
  Claims claims;
  claims.n = require_int(cj, "n");
  if (cj.contains("m") && !cj.at("m").is_null()) claims.m = require_int(cj, "m");
  if (cj.contains("north_closed")) {
    if (!cj.at("north_closed").is_boolean()) throw std::invalid_argument("cover document: north_closed must be boolean");
    claims.north_closed = cj.at("north_closed").get<bool>();
  }
  json provenance = doc.contains("provenance") ? doc.at("provenance") : json::object();
  Cover cover(dim, std::move(sets), claims, std::move(provenance));
  if ((kind == "hemispheres") != cover.is_hemisphere_cover()) {
    throw std::invalid_argument("cover document: 'kind' does not match the set types");
  }
  return cover;
}

}  // namespace sphcover
