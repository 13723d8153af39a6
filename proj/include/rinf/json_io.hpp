#pragma once

#include <string>

#include "json.hpp"
#include "rinf/char_sphere.hpp"
#include "rinf/finite_group.hpp"
#include "rinf/houghton.hpp"
#include "rinf/sphere_points.hpp"
#include "rinf/tailed_permutation.hpp"
#include "rinf/thompson.hpp"

namespace rinf::io {

using nlohmann::json;

// ---- tailed permutations ----------------------------------------------------

inline json to_json(const TailedPermutation& f) {
  json tails = json::array();
  for (int j = 1; j <= f.ray_count(); ++j) {
    const Tail& t = f.tail(j);
    tails.push_back({{"target", t.target}, {"period", t.period()}, {"offsets", t.offsets}});
  }
  json table = json::array();
  for (const auto& [a, b] : f.table())
    table.push_back(json::array({json::array({a.ray, a.height}), json::array({b.ray, b.height})}));
  return {{"n", f.ray_count()}, {"threshold", f.threshold()}, {"table", table}, {"tails", tails}};
}

// Re-validates bijectivity through the constructor.
inline TailedPermutation tailed_permutation_from_json(const json& j) {
  int n = j.at("n").get<int>();
  std::int64_t threshold = j.at("threshold").get<std::int64_t>();
  std::vector<Tail> tails;
  for (const auto& t : j.at("tails")) {
    Tail tail;
    tail.target = t.at("target").get<int>();
    tail.offsets = t.at("offsets").get<std::vector<std::int64_t>>();
    if (t.contains("period") && t.at("period").get<int>() != (int)tail.offsets.size())
      throw std::invalid_argument("tailed permutation json: period does not match offsets");
    tails.push_back(std::move(tail));
  }
  std::map<Point, Point> table;
  for (const auto& entry : j.at("table")) {
    Point a{entry.at(0).at(0).get<int>(), entry.at(0).at(1).get<std::int64_t>()};
    Point b{entry.at(1).at(0).get<int>(), entry.at(1).at(1).get<std::int64_t>()};
    table[a] = b;
  }
  return TailedPermutation(n, threshold, std::move(tails), std::move(table));
}

inline json to_json(const houghton::HoughtonElement& h) {
  json j = to_json(h.permutation());
  j["translation"] = houghton::translation_part(h);
  return j;
}

inline json to_json(const houghton::NormalizerElement& f) {
  json j = to_json(f.permutation());
  j["ray_permutation"] = houghton::ray_permutation_of(f);
  return j;
}

inline houghton::HoughtonElement houghton_from_json(const json& j) {
  auto f = tailed_permutation_from_json(j);
  houghton::HoughtonElement h{std::move(f)};
  if (j.contains("translation") &&
      j.at("translation").get<std::vector<std::int64_t>>() != houghton::translation_part(h))
    throw std::invalid_argument("houghton json: translation does not match tails");
  return h;
}

inline houghton::NormalizerElement normalizer_from_json(const json& j) {
  auto f = tailed_permutation_from_json(j);
  houghton::NormalizerElement e{std::move(f)};
  if (j.contains("ray_permutation") &&
      j.at("ray_permutation").get<std::vector<int>>() != houghton::ray_permutation_of(e))
    throw std::invalid_argument("normalizer json: ray permutation does not match tails");
  return e;
}

// ---- finite groups ----------------------------------------------------------

inline json to_json(const oracle::FiniteGroupTable& g) {
  json rows = json::array();
  for (int a = 0; a < g.order(); ++a) {
    json row = json::array();
    for (int b = 0; b < g.order(); ++b) row.push_back(g.op(a, b));
    rows.push_back(std::move(row));
  }
  return {{"name", g.name()}, {"order", g.order()}, {"table", rows}};
}

inline oracle::FiniteGroupTable group_from_json(const json& j) {
  int order = j.at("order").get<int>();
  std::vector<int> flat;
  for (const auto& row : j.at("table"))
    for (const auto& v : row) flat.push_back(v.get<int>());
  std::string name = j.contains("name") ? j.at("name").get<std::string>() : "user";
  return oracle::FiniteGroupTable(name, order, std::move(flat));
}

// ---- characters and monomial matrices ---------------------------------------

inline std::string pair_key(int i, int j) {
  return std::to_string(i) + "," + std::to_string(j);
}

inline std::pair<int, int> parse_pair_key(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos)
    throw std::invalid_argument("pair key must look like \"i,j\"");
  return {std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1))};
}

inline json to_json(const sphere::RationalCharacter& chi) {
  sphere::PairBasis basis{chi.n};
  json coords = json::object();
  for (int idx = 0; idx < basis.dim(); ++idx) {
    if (chi.coords[(std::size_t)idx].is_zero()) continue;
    auto [i, j] = basis.pair_of(idx);
    coords[pair_key(i, j)] = chi.coords[(std::size_t)idx].str();
  }
  return {{"n", chi.n}, {"coords", coords}};
}

inline sphere::RationalCharacter character_from_json(const json& j) {
  int n = j.at("n").get<int>();
  auto chi = sphere::RationalCharacter::zero(n);
  sphere::PairBasis basis{n};
  for (const auto& [key, value] : j.at("coords").items()) {
    auto [i, jdx] = parse_pair_key(key);
    chi.coords[(std::size_t)basis.index(i, jdx)] = Rational::parse(value.get<std::string>());
  }
  return chi;
}

inline json to_json(const sphere::MonomialMatrix& m, int n) {
  sphere::PairBasis basis{n};
  json slots = json::object();
  for (int idx = 0; idx < basis.dim(); ++idx) {
    auto [i, j] = basis.pair_of(idx);
    auto [p, q] = basis.pair_of(m.image[(std::size_t)idx]);
    slots[pair_key(i, j)] = {{"to", pair_key(p, q)}, {"sign", m.sign[(std::size_t)idx]}};
  }
  return {{"n", n}, {"slots", slots}};
}

// Accepts either the slot form {"n", "slots"} or the generated form
// {"n", "sigma", "signs"} with signs keyed by pair.
inline sphere::MonomialMatrix monomial_from_json(const json& j) {
  int n = j.at("n").get<int>();
  sphere::PairBasis basis{n};
  if (j.contains("sigma")) {
    auto sigma = j.at("sigma").get<std::vector<int>>();
    std::vector<int> signs((std::size_t)basis.dim(), 1);
    if (j.contains("signs"))
      for (const auto& [key, value] : j.at("signs").items()) {
        auto [i, jdx] = parse_pair_key(key);
        signs[(std::size_t)basis.index(i, jdx)] = value.get<int>();
      }
    return sphere::MonomialMatrix::from_pair_action(n, sigma, signs);
  }
  sphere::MonomialMatrix m;
  m.image.assign((std::size_t)basis.dim(), -1);
  m.sign.assign((std::size_t)basis.dim(), 0);
  for (const auto& [key, value] : j.at("slots").items()) {
    auto [i, jdx] = parse_pair_key(key);
    auto [p, q] = parse_pair_key(value.at("to").get<std::string>());
    m.image[(std::size_t)basis.index(i, jdx)] = basis.index(p, q);
    m.sign[(std::size_t)basis.index(i, jdx)] = value.at("sign").get<int>();
  }
  for (int v : m.image)
    if (v < 0) throw std::invalid_argument("monomial json: missing slots");
  return m;
}

// ---- sphere point sets --------------------------------------------------------

inline json to_json(const sphere::SpherePointSet& set) {
  json factors = json::object();
  for (const auto& [f, dim] : set.factor_dims()) {
    json entry = {{"dim", dim}};
    if (set.has_certificate(f)) entry["hemisphere"] = set.hemispheres().at(f);
    factors[std::to_string(f)] = std::move(entry);
  }
  json points = json::array();
  for (const auto& p : set.points()) {
    const char* tag = p.tag == sphere::PointTag::IsolatedRational
                          ? "DQ"
                          : (p.tag == sphere::PointTag::RationalLimit ? "LQ" : "L");
    points.push_back({{"factor", p.factor}, {"tag", tag}, {"direction", p.direction}});
  }
  return {{"factors", factors}, {"points", points}};
}

inline sphere::SpherePointSet sphere_points_from_json(const json& j) {
  std::map<int, std::size_t> dims;
  std::map<int, std::vector<std::int64_t>> hemis;
  for (const auto& [key, entry] : j.at("factors").items()) {
    int f = std::stoi(key);
    dims[f] = entry.at("dim").get<std::size_t>();
    if (entry.contains("hemisphere"))
      hemis[f] = entry.at("hemisphere").get<std::vector<std::int64_t>>();
  }
  std::vector<sphere::SpherePoint> points;
  for (const auto& p : j.at("points")) {
    sphere::SpherePoint pt;
    pt.factor = p.at("factor").get<int>();
    std::string tag = p.at("tag").get<std::string>();
    pt.tag = tag == "DQ" ? sphere::PointTag::IsolatedRational
                         : (tag == "LQ" ? sphere::PointTag::RationalLimit
                                        : sphere::PointTag::Limit);
    pt.direction = p.at("direction").get<std::vector<std::int64_t>>();
    points.push_back(std::move(pt));
  }
  return sphere::SpherePointSet(std::move(dims), std::move(points), std::move(hemis));
}

// ---- circle maps --------------------------------------------------------------

inline json to_json(const thompson::PLCircleMap& f) {
  if (f.is_rotation())
    return {{"breakpoints", json::array()},
            {"values", json::array()},
            {"slopes", json::array()},
            {"rotation", f.rotation_offset().str()}};
  json breaks = json::array(), values = json::array(), slopes = json::array();
  for (const auto& b : f.breakpoints()) breaks.push_back(b.str());
  for (const auto& v : f.values()) values.push_back(v.str());
  for (int e : f.slope_exponents()) slopes.push_back("2^" + std::to_string(e));
  return {{"breakpoints", breaks}, {"values", values}, {"slopes", slopes}};
}

inline thompson::PLCircleMap circle_map_from_json(const json& j) {
  if (j.contains("rotation") && j.at("breakpoints").empty())
    return thompson::PLCircleMap::rotation(thompson::Dyadic::parse(j.at("rotation")));
  std::vector<thompson::Dyadic> breaks, values;
  std::vector<int> exps;
  for (const auto& b : j.at("breakpoints")) breaks.push_back(thompson::Dyadic::parse(b));
  for (const auto& v : j.at("values")) values.push_back(thompson::Dyadic::parse(v));
  for (const auto& s : j.at("slopes")) {
    std::string str = s.get<std::string>();
    if (str.rfind("2^", 0) != 0)
      throw std::invalid_argument("circle map json: slope must be a power of two");
    exps.push_back(std::stoi(str.substr(2)));
  }
  return thompson::PLCircleMap(std::move(breaks), std::move(values), std::move(exps));
}

}  // namespace rinf::io
