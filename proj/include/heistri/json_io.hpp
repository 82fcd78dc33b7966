#ifndef HEISTRI__JSON_IO_HPP_
#define HEISTRI__JSON_IO_HPP_

// JSON encodings: HPoint {"n","w"}, chains {"k","n","terms":[...]}, regularity reports.
// Terms may carry explicit "cells"; such a file describes maps, not just descriptors.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "grid_regularity.hpp"
#include "heis_core.hpp"
#include "horizontal_builder.hpp"
#include "simplex_chain.hpp"

namespace heistri {

using json = nlohmann::json;

inline json to_json(const HPoint & p) { return json{{"n", p.n()}, {"w", p.w()}}; }

inline HPoint hpoint_from_json(const json & j)
{
  try {
    return {j.at("n").get<int>(), j.at("w").get<std::vector<double>>()};
  } catch (const json::exception & e) {
    throw Error(std::string("malformed point: ") + e.what());
  }
}

inline json cells_to_json(const PLMap & m)
{
  json cells = json::array();
  for (const auto & c : m.cells) {
    json img = json::array();
    for (const auto & p : c.images()) { img.push_back(p.w()); }
    cells.push_back({{"domain", c.domain()}, {"images", std::move(img)}});
  }
  return cells;
}

/// A chain plus, optionally, explicit maps for some of its terms.
struct ChainFile
{
  Chain chain;
  std::map<SimplexDescriptor, PLMap> maps;

  /// The explicit map if present, otherwise the map the descriptor builds.
  [[nodiscard]] PLMap map_for(const SimplexDescriptor & d) const
  {
    if (auto it = maps.find(d); it != maps.end()) { return it->second; }
    return build_simplex(d);
  }
};

inline json to_json(const Chain & c, const std::map<SimplexDescriptor, PLMap> * maps = nullptr)
{
  json terms = json::array();
  for (const auto & [d, coeff] : c.terms) {
    json vs = json::array();
    for (const auto & v : d.vertices) { vs.push_back(v.w()); }
    json t{{"coeff", coeff}, {"builder", to_string(d.builder)}, {"vertices", std::move(vs)}};
    if (maps != nullptr) {
      if (auto it = maps->find(d); it != maps->end()) { t["cells"] = cells_to_json(it->second); }
    }
    terms.push_back(std::move(t));
  }
  return json{{"k", c.k}, {"n", c.n}, {"terms", std::move(terms)}};
}

inline json to_json(const ChainFile & f) { return to_json(f.chain, &f.maps); }

inline ChainFile chain_file_from_json(const json & j)
{
  try {
    ChainFile f;
    f.chain = Chain(j.at("k").get<int>(), j.at("n").get<int>());
    const int n = f.chain.n;
    for (const auto & t : j.at("terms")) {
      std::vector<HPoint> vs;
      for (const auto & w : t.at("vertices")) { vs.emplace_back(n, w.get<std::vector<double>>()); }
      SimplexDescriptor d(builder_from_string(t.at("builder").get<std::string>()), n, std::move(vs));
      if (d.k() != f.chain.k) { throw Error("term vertex count does not match k"); }
      if (!t.at("coeff").is_number_integer()) { throw Error("chain coefficient must be an integer"); }
      const auto coeff = t.at("coeff").get<std::int64_t>();
      if (coeff == 0) { throw Error("zero coefficient in chain file"); }
      if (f.chain.terms.count(d) != 0) { throw Error("duplicate term in chain file"); }
      f.chain.add_term(d, coeff);
      if (t.contains("cells")) {
        PLMap m{d.k(), n, {}, d, false};
        for (const auto & c : t.at("cells")) {
          std::vector<HPoint> img;
          for (const auto & w : c.at("images")) { img.emplace_back(n, w.get<std::vector<double>>()); }
          auto dom = c.at("domain").get<std::vector<std::vector<double>>>();
          for (const auto & s : dom) {
            if (s.size() != static_cast<std::size_t>(d.k() + 1)) { throw Error("cell domain point has wrong dimension"); }
          }
          m.cells.emplace_back(std::move(dom), std::move(img));
        }
        if (m.cells.empty()) { throw Error("explicit map without cells"); }
        f.maps.emplace(d, std::move(m));
      }
    }
    return f;
  } catch (const json::exception & e) {
    throw Error(std::string("malformed chain JSON: ") + e.what());
  }
}

inline Chain chain_from_json(const json & j) { return chain_file_from_json(j).chain; }

inline const char * to_string(Side s) { return s == Side::Low ? "LOW" : "HIGH"; }

inline json cube_to_json(const Cube & c) { return json{{"n", c.n}, {"base", c.base}, {"eps", c.eps}}; }

inline json to_json(const RegularityReport & r)
{
  json w = json::array();
  for (const auto & p : r.witnesses) { w.push_back(to_json(p)); }
  return json{{"classification", to_string(r.classification)}, {"codimension", r.codimension},
              {"reason", r.reason}, {"witnesses", std::move(w)}};
}

inline json to_json(const Face & f, const RegularityReport & r)
{
  json j = to_json(r);
  j["face"] = {{"cube", cube_to_json(f.cube)}, {"axis", f.axis + 1}, {"side", to_string(f.side)}, {"name", f.name()}};
  return j;
}

inline json to_json(const Subface & s, const RegularityReport & r)
{
  json j = to_json(r);
  j["subface"] = {{"cube", cube_to_json(s.cube)},
                  {"axes", {s.axes.first + 1, s.axes.second + 1}},
                  {"sides", {to_string(s.sides.first), to_string(s.sides.second)}},
                  {"name", s.name()}};
  return j;
}

}  // namespace heistri

#endif  // HEISTRI__JSON_IO_HPP_
