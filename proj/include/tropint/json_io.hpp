#pragma once

// JSON forms of matroids, fan cycles and piecewise linear functions. Output is
// canonical: sorted keys, sorted rays and cones, integers never as floats.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tropint/bergman.hpp"
#include "tropint/fan_cycle.hpp"
#include "tropint/matroid.hpp"

namespace tropint::json {

using Json = nlohmann::json;

/// Integers that fit in 64 bits are numbers, larger ones decimal strings.
inline Json integer(const Integer& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(x);
  return x.str();
}

inline Integer parse_integer(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return Integer(j.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  fail(ErrorKind::ParseError, where + ": expected an integer");
}

inline Json vector(const IntVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(integer(x));
  return out;
}

inline IntVector parse_vector(const Json& j, std::size_t n, const std::string& where) {
  if (!j.is_array()) fail(ErrorKind::ParseError, where + ": expected an array");
  if (j.size() != n)
    fail(ErrorKind::DimensionMismatch,
         where + ": expected " + std::to_string(n) + " entries, got " + std::to_string(j.size()));
  IntVector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(parse_integer(j[i], where + "[" + std::to_string(i) + "]"));
  return v;
}

inline const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorKind::ParseError, where + ": missing field \"" + key + "\"");
  return j.at(key);
}

inline int parse_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(ErrorKind::ParseError, where + ": expected an integer");
  return j.get<int>();
}

/// A set as the sorted list of its 1-based elements.
inline Json subset(SubsetMask s) {
  Json out = Json::array();
  for (int i : elements_of(s)) out.push_back(i + 1);
  return out;
}

inline SubsetMask parse_subset(const Json& j, int n, const std::string& where) {
  if (!j.is_array()) fail(ErrorKind::ParseError, where + ": expected a list of elements");
  SubsetMask s = 0;
  for (const auto& e : j) {
    const int i = parse_int(e, where);
    if (i < 1 || i > n)
      fail(ErrorKind::IndexOutOfRange, where + ": element " + std::to_string(i) + " outside 1.." + std::to_string(n));
    s |= SubsetMask{1} << (i - 1);
  }
  return s;
}

/// "1,2,5" -> mask; the empty string is the empty set.
inline SubsetMask parse_subset_text(const std::string& text, int n, const std::string& where) {
  Json list = Json::array();
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string item = text.substr(pos, comma - pos);
    try {
      std::size_t used = 0;
      list.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      fail(ErrorKind::ParseError, where + ": bad element \"" + item + "\"");
    }
    pos = comma + 1;
  }
  return parse_subset(list, n, where);
}

// ---- matroids ---------------------------------------------------------------

inline Matroid parse_matroid(const Json& j) {
  const std::string where = "matroid";
  const std::string kind = [&] {
    const Json& k = field(j, "kind", where);
    if (!k.is_string()) fail(ErrorKind::ParseError, "matroid: \"kind\" must be a string");
    return k.get<std::string>();
  }();
  const std::string label = j.contains("label") && j["label"].is_string() ? j["label"].get<std::string>() : "";
  if (kind == "graphic_complete") {
    const int m = parse_int(field(j, "vertices", where), "matroid.vertices");
    Matroid g = graphic_complete(m);
    if (j.contains("n") && parse_int(j["n"], "matroid.n") != g.size())
      fail(ErrorKind::GroundSetMismatch, "matroid: n does not match the edge count of K_" + std::to_string(m));
    return g;
  }
  const int n = parse_int(field(j, "n", where), "matroid.n");
  if (n < 0 || n > max_ground_set())
    fail(ErrorKind::SizeOverflow, "matroid: n = " + std::to_string(n) + " exceeds the cap " +
                                      std::to_string(max_ground_set()));
  if (kind == "uniform") return uniform(parse_int(field(j, "rank", where), "matroid.rank"), n);
  if (kind == "bases") {
    const Json& list = field(j, "bases", where);
    if (!list.is_array()) fail(ErrorKind::ParseError, "matroid.bases: expected a list");
    std::vector<SubsetMask> bases;
    for (std::size_t i = 0; i < list.size(); ++i)
      bases.push_back(parse_subset(list[i], n, "matroid.bases[" + std::to_string(i) + "]"));
    return from_bases(n, std::move(bases), label);
  }
  if (kind == "rank_table") {
    const Json& table = field(j, "rank_table", where);
    if (!table.is_array() || table.size() != (std::size_t{1} << n))
      fail(ErrorKind::ParseError, "matroid.rank_table: expected 2^n entries");
    std::vector<std::uint8_t> ranks;
    for (std::size_t i = 0; i < table.size(); ++i) {
      const int r = parse_int(table[i], "matroid.rank_table[" + std::to_string(i) + "]");
      if (r < 0 || r > n) fail(ErrorKind::InvalidRank, "matroid.rank_table[" + std::to_string(i) + "] out of range");
      ranks.push_back(static_cast<std::uint8_t>(r));
    }
    return Matroid(n, std::move(ranks), label);
  }
  fail(ErrorKind::ParseError, "matroid: unknown kind \"" + kind + "\"");
}

/// Always written as a rank table, indexed by subset bitmask.
inline Json matroid(const Matroid& m) {
  Json table = Json::array();
  for (SubsetMask s = 0; s <= full_mask(m.size()); ++s) {
    table.push_back(m.rank(s));
    if (s == full_mask(m.size())) break;
  }
  Json out = {{"kind", "rank_table"}, {"n", m.size()}, {"rank_table", table}};
  if (!m.label().empty()) out["label"] = m.label();
  return out;
}

// ---- fans -------------------------------------------------------------------

inline Json fan(const FanCycle& x) {
  std::vector<Json> facets;
  for (const auto& [c, w] : x.facets()) {
    if (w == 0) continue;
    std::vector<IntVector> rays = c.rays();
    std::sort(rays.begin(), rays.end());
    Json r = Json::array(), l = Json::array();
    for (const auto& v : rays) r.push_back(vector(v));
    for (const auto& v : c.lineality()) l.push_back(vector(v));
    facets.push_back({{"lineality", l}, {"rays", r}, {"weight", integer(w)}});
  }
  std::sort(facets.begin(), facets.end(), [](const Json& a, const Json& b) {
    return std::tie(a["rays"], a["lineality"], a["weight"]) < std::tie(b["rays"], b["lineality"], b["weight"]);
  });
  return {{"ambient_dim", x.ambient()}, {"dim", x.is_zero() ? x.declared_dim() : x.dim()}, {"facets", facets}};
}

inline FanCycle parse_fan(const Json& j) {
  const int n = parse_int(field(j, "ambient_dim", "fan"), "fan.ambient_dim");
  const int d = parse_int(field(j, "dim", "fan"), "fan.dim");
  if (n < 0) fail(ErrorKind::ParseError, "fan.ambient_dim must be nonnegative");
  const Json& facets = field(j, "facets", "fan");
  if (!facets.is_array()) fail(ErrorKind::ParseError, "fan.facets: expected a list");
  FanCycle out(n, facets.empty() ? kZeroDim : d);
  for (std::size_t i = 0; i < facets.size(); ++i) {
    const std::string where = "fan.facets[" + std::to_string(i) + "]";
    const Json& f = facets[i];
    IntMatrix rays, lin;
    for (const auto& r : field(f, "rays", where)) rays.push_back(parse_vector(r, n, where + ".rays"));
    if (f.contains("lineality"))
      for (const auto& l : f["lineality"]) lin.push_back(parse_vector(l, n, where + ".lineality"));
    const Cone c(n, rays, lin);
    if (c.dim() != d)
      fail(ErrorKind::NotPure, where + " has dimension " + std::to_string(c.dim()) + ", expected " + std::to_string(d));
    out.add(c, f.contains("weight") ? parse_integer(f["weight"], where + ".weight") : Integer(1));
  }
  return out;
}

// ---- functions --------------------------------------------------------------

/// {"ray_values": {"1,2": -1, ...}, "lineality_values": [v]} describes a function on the
/// braid rays V_F (unlisted rays are 0) with value v on (1,...,1);
/// {"max_of": [[...], ...]} is a maximum of integer linear forms.
inline PLFunction parse_function(const Json& j, int n) {
  if (j.contains("max_of")) {
    IntMatrix forms;
    for (const auto& f : j["max_of"]) forms.push_back(parse_vector(f, n, "function.max_of"));
    if (forms.empty()) fail(ErrorKind::ParseError, "function.max_of: needs at least one form");
    return PLFunction::max_of(forms);
  }
  const Json& values = field(j, "ray_values", "function");
  if (!values.is_object()) fail(ErrorKind::ParseError, "function.ray_values: expected an object");
  BraidFunction phi = BraidFunction::from(n, [](SubsetMask) { return std::int64_t{0}; });
  for (const auto& [key, v] : values.items()) {
    const SubsetMask s = parse_subset_text(key, n, "function.ray_values");
    if (s == 0 || s == full_mask(n))
      fail(ErrorKind::ParseError, "function.ray_values: \"" + key + "\" is not a proper nonempty subset");
    phi.set(s, static_cast<std::int64_t>(parse_integer(v, "function.ray_values." + key)));
  }
  if (j.contains("lineality_values")) {
    const Json& l = j["lineality_values"];
    if (!l.is_array() || l.size() != 1) fail(ErrorKind::ParseError, "function.lineality_values: expected one value");
    phi.set(full_mask(n), -static_cast<std::int64_t>(parse_integer(l[0], "function.lineality_values")));
  }
  return PLFunction::from_braid(phi);
}

/// Canonical text: one line, sorted keys, trailing newline.
inline std::string dump(const Json& j) { return j.dump() + "\n"; }

}  // namespace tropint::json
