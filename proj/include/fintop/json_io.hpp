//  Copyright 2026 The fintop Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#ifndef FINTOP_JSON_IO_HPP
#define FINTOP_JSON_IO_HPP

// JSON file formats. nlohmann::json keeps object keys sorted, and every set
// is written as a sorted index list, so output is byte-stable.
//
// Malformed documents raise InvalidInput; documents that parse but describe
// something invalid (say, a family that is not a topology) raise the error of
// the failing check.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fintop/action.hpp"
#include "fintop/error.hpp"
#include "fintop/ktheory.hpp"
#include "fintop/space.hpp"

namespace fintop::io {

using json = nlohmann::json;

namespace detail {

[[noreturn]] inline void malformed(const std::string& what) { throw Error(ErrorKind::InvalidInput, what); }

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline std::size_t index(const json& j, std::size_t bound, const char* what) {
  if (!j.is_number_integer()) malformed(std::string(what) + " must be an integer");
  const auto v = j.get<std::int64_t>();
  if (v < 0 || static_cast<std::uint64_t>(v) >= bound) malformed(std::string(what) + " out of range");
  return static_cast<std::size_t>(v);
}

inline std::size_t count(const json& j, const char* what) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) malformed(std::string(what) + " must be a non-negative integer");
  const auto v = j.get<std::uint64_t>();
  if (v > kMaxPoints) throw Error(ErrorKind::CapExceeded, std::string(what) + " exceeds " + std::to_string(kMaxPoints));
  return static_cast<std::size_t>(v);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Sets and spaces
// ---------------------------------------------------------------------------

inline json to_json(PointSet s) {
  json out = json::array();
  s.for_each([&](std::size_t p) { out.push_back(p); });
  return out;
}

inline PointSet set_from_json(const json& j, std::size_t n) {
  if (!j.is_array()) detail::malformed("a set must be an array of point indices");
  PointSet s;
  for (const auto& e : j) s.insert(detail::index(e, n, "point index"));
  return s;
}

inline json to_json(const FiniteSpace& x) {
  json out;
  out["size"] = x.size();
  out["opens"] = json::array();
  for (auto u : x.opens()) out["opens"].push_back(to_json(u));
  if (x.has_labels()) out["points"] = x.labels();
  return out;
}

inline std::vector<std::string> labels_from_json(const json& j, std::size_t n) {
  if (!j.contains("points")) return {};
  const auto& pts = j.at("points");
  if (!pts.is_array() || pts.size() != n) detail::malformed("\"points\" must list one label per point");
  std::vector<std::string> labels;
  for (const auto& p : pts) {
    if (!p.is_string()) detail::malformed("point labels must be strings");
    labels.push_back(p.get<std::string>());
  }
  return labels;
}

/// The "preorder" object: {"size": n, "leq": [[x, y], ...]}, closed
/// reflexively and transitively.
inline Preorder preorder_from_json(const json& j) {
  const std::size_t n = detail::count(detail::field(j, "size"), "size");
  const auto& leq = detail::field(j, "leq");
  if (!leq.is_array()) detail::malformed("\"leq\" must be an array of pairs");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& p : leq) {
    if (!p.is_array() || p.size() != 2) detail::malformed("\"leq\" entries must be pairs");
    pairs.emplace_back(detail::index(p[0], n, "point index"), detail::index(p[1], n, "point index"));
  }
  return Preorder::generated_by(n, pairs);
}

/// Full relation, reflexive pairs included.
inline json to_json(const Preorder& order) {
  json leq = json::array();
  for (std::size_t x = 0; x < order.size(); ++x) {
    order.up(x).for_each([&](std::size_t y) { leq.push_back({x, y}); });
  }
  return {{"preorder", {{"size", order.size()}, {"leq", leq}}}};
}

inline FiniteSpace space_from_json(const json& j) {
  if (!j.is_object()) detail::malformed("a space must be a JSON object");
  const bool has_opens = j.contains("opens"), has_preorder = j.contains("preorder");
  if (has_opens == has_preorder) detail::malformed("a space needs exactly one of \"opens\" and \"preorder\"");
  FiniteSpace x;
  if (has_preorder) {
    const auto order = preorder_from_json(j.at("preorder"));
    if (j.contains("size") && detail::count(j.at("size"), "size") != order.size()) {
      detail::malformed("\"size\" disagrees with the preorder");
    }
    x = alexandrov_topology(order);
  } else {
    const std::size_t n = detail::count(detail::field(j, "size"), "size");
    const auto& opens = j.at("opens");
    if (!opens.is_array()) detail::malformed("\"opens\" must be an array of sets");
    std::vector<PointSet> family;
    for (const auto& u : opens) family.push_back(set_from_json(u, n));
    x = validate_topology(n, std::move(family));
  }
  return x.with_labels(labels_from_json(j, x.size()));
}

// ---------------------------------------------------------------------------
// Actions
// ---------------------------------------------------------------------------

inline json to_json(const ActionOverX& a) {
  return {{"base", to_json(a.base())}, {"prim", to_json(a.prim())}, {"psi", a.psi().assignment()}};
}

inline std::vector<std::size_t> assignment_from_json(const json& j, std::size_t domain, std::size_t codomain) {
  if (!j.is_array() || j.size() != domain) detail::malformed("map needs one image index per point");
  std::vector<std::size_t> out;
  for (const auto& e : j) out.push_back(detail::index(e, codomain, "image index"));
  return out;
}

inline ActionOverX action_from_json(const json& j) {
  auto base = space_from_json(detail::field(j, "base"));
  auto prim = space_from_json(detail::field(j, "prim"));
  auto psi = assignment_from_json(detail::field(j, "psi"), prim.size(), base.size());
  return ActionOverX(std::move(base), std::move(prim), std::move(psi));
}

/// Continuous map {"domain": <space>, "codomain": <space>, "map": [...]}.
inline ContinuousMap map_from_json(const json& j) {
  auto dom = space_from_json(detail::field(j, "domain"));
  auto cod = space_from_json(detail::field(j, "codomain"));
  auto f = assignment_from_json(detail::field(j, "map"), dom.size(), cod.size());
  return ContinuousMap(std::move(dom), std::move(cod), std::move(f));
}

/// {"base": <space>, "prim": <space>, "values": {"x": [indices], ...}}, keyed
/// by display label (1-based numbers for unlabelled spaces); every base point
/// needs a value.
inline std::pair<IdealAssignment, FiniteSpace> ideal_assignment_from_json(const json& j) {
  auto base = space_from_json(detail::field(j, "base"));
  auto prim = space_from_json(detail::field(j, "prim"));
  const auto& values = detail::field(j, "values");
  if (!values.is_object()) detail::malformed("\"values\" must be an object keyed by base points");
  std::vector<PointSet> out(base.size());
  std::vector<bool> seen(base.size(), false);
  for (const auto& [key, v] : values.items()) {
    std::optional<std::size_t> x;
    for (std::size_t p = 0; p < base.size() && !x; ++p) {
      if (base.label(p) == key) x = p;
    }
    if (!x) detail::malformed("unknown base point \"" + key + "\"");
    if (seen[*x]) detail::malformed("base point \"" + key + "\" given twice");
    seen[*x] = true;
    out[*x] = set_from_json(v, prim.size());
  }
  for (std::size_t p = 0; p < base.size(); ++p) {
    if (!seen[p]) detail::malformed("no value for base point " + std::to_string(p));
  }
  return {IdealAssignment{std::move(base), std::move(out)}, std::move(prim)};
}

// ---------------------------------------------------------------------------
// Integers, matrices, groups
// ---------------------------------------------------------------------------

/// Machine-sized integers become JSON numbers, larger ones decimal strings.
inline json to_json(const Integer& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
    return v.convert_to<std::int64_t>();
  }
  return v.str();
}

inline Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    const std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos) {
      detail::malformed("\"" + s + "\" is not an integer");
    }
    return Integer(s);
  }
  detail::malformed("matrix entries must be integers");
}

/// Row-major array of rows.
inline json to_json(const IntMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

inline json to_json(const IntVector& v) {
  json out = json::array();
  for (const auto& e : v) out.push_back(to_json(e));
  return out;
}

/// `cols` fixes the width when there are no rows.
inline IntMatrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows) {
    detail::malformed("matrix must have " + std::to_string(rows) + " rows");
  }
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) {
      detail::malformed("matrix rows must have " + std::to_string(cols) + " entries");
    }
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = integer_from_json(j[i][k]);
  }
  return m;
}

/// Matrix of unknown shape; all rows must have equal length.
inline IntMatrix matrix_from_json(const json& j) {
  if (!j.is_array()) detail::malformed("matrix must be an array of rows");
  const std::size_t cols = j.empty() ? 0 : (j[0].is_array() ? j[0].size() : 0);
  return matrix_from_json(j, j.size(), cols);
}

/// {"generators": n, "relations": [[r_1 .. r_n], ...]}: one inner list per relation.
inline json to_json(const FGAbelianGroup& g) {
  json rels = json::array();
  for (std::size_t k = 0; k < g.relations().cols(); ++k) rels.push_back(to_json(g.relations().column(k)));
  return {{"generators", g.generators()}, {"relations", rels}};
}

inline FGAbelianGroup group_from_json(const json& j) {
  const auto& gens = detail::field(j, "generators");
  if (!gens.is_number_integer() || gens.get<std::int64_t>() < 0) detail::malformed("\"generators\" must be a count");
  const auto n = gens.get<std::size_t>();
  std::vector<IntVector> rels;
  if (j.contains("relations")) {
    const auto& r = j.at("relations");
    if (!r.is_array()) detail::malformed("\"relations\" must be an array");
    for (const auto& rel : r) {
      if (!rel.is_array() || rel.size() != n) detail::malformed("each relation needs one entry per generator");
      IntVector v;
      for (const auto& e : rel) v.push_back(integer_from_json(e));
      rels.push_back(std::move(v));
    }
  }
  return FGAbelianGroup(n, IntMatrix::from_columns(n, rels));
}

inline json to_json(const GroupInvariants& inv) {
  json t = json::array();
  for (const auto& d : inv.torsion) t.push_back(to_json(d));
  return {{"rank", inv.rank}, {"torsion", t}, {"description", describe(inv)}};
}

/// {"domain": <group>, "codomain": <group>, "matrix": rows}.
inline json to_json(const GroupHom& f) {
  return {{"domain", to_json(f.domain())}, {"codomain", to_json(f.codomain())}, {"matrix", to_json(f.matrix())}};
}

inline GroupHom hom_from_json(const json& j) {
  auto dom = group_from_json(detail::field(j, "domain"));
  auto cod = group_from_json(detail::field(j, "codomain"));
  auto m = matrix_from_json(detail::field(j, "matrix"), cod.generators(), dom.generators());
  return GroupHom(std::move(dom), std::move(cod), std::move(m));
}

inline json to_json(const GradedGroup& g) { return {{"even", to_json(g.even)}, {"odd", to_json(g.odd)}}; }

inline GradedGroup graded_from_json(const json& j) {
  return {group_from_json(detail::field(j, "even")), group_from_json(detail::field(j, "odd"))};
}

/// {"groups": [6 groups], "maps": [6 matrices]}; maps[i]: groups[i] -> groups[i+1 mod 6].
inline SixTermCycle cycle_from_json(const json& j) {
  const auto& gs = detail::field(j, "groups");
  const auto& ms = detail::field(j, "maps");
  if (!gs.is_array() || gs.size() != 6 || !ms.is_array() || ms.size() != 6) {
    detail::malformed("a six-term cycle needs 6 groups and 6 maps");
  }
  SixTermCycle c;
  for (std::size_t i = 0; i < 6; ++i) c.groups[i] = group_from_json(gs[i]);
  for (std::size_t i = 0; i < 6; ++i) {
    const auto& dom = c.groups[i];
    const auto& cod = c.groups[(i + 1) % 6];
    c.maps[i] = GroupHom(dom, cod, matrix_from_json(ms[i], cod.generators(), dom.generators()));
  }
  return c;
}

inline json to_json(const SixTermCycle& c) {
  json gs = json::array(), ms = json::array();
  for (const auto& g : c.groups) gs.push_back(to_json(g));
  for (const auto& m : c.maps) ms.push_back(to_json(m.matrix()));
  return {{"groups", gs}, {"maps", ms}};
}

inline json to_json(const ExactnessResult& r) {
  json out{{"exact", r.exact}};
  if (!r.exact) {
    out["failure"] = r.failure;
    out["witness"] = to_json(r.witness);
  }
  return out;
}

inline json to_json(const SixTermReport& r) {
  json nodes = json::array();
  for (std::size_t j = 0; j < 6; ++j) {
    json n = to_json(r.nodes[j]);
    n["node"] = j;
    nodes.push_back(std::move(n));
  }
  return {{"exact", r.exact()}, {"nodes", nodes}};
}

/// {"space": <space>,
///  "groups": [{"set": [...], "even": <group>, "odd": <group>}, ...],
///  "triangles": [{"open": [...], "set": [...], "maps": [6 matrices]}, ...]}
/// Triangle maps follow K0(U) K0(Y) K0(Y\U) K1(U) K1(Y) K1(Y\U).
inline FiltratedKDatum datum_from_json(const json& j) {
  FiltratedKDatum d;
  d.space = space_from_json(detail::field(j, "space"));
  const std::size_t n = d.space.size();
  const auto& gs = detail::field(j, "groups");
  if (!gs.is_array()) detail::malformed("\"groups\" must be an array");
  for (const auto& e : gs) {
    const PointSet s = set_from_json(detail::field(e, "set"), n);
    if (s.empty()) detail::malformed("groups are assigned to nonempty sets");
    if (!d.groups.emplace(s.bits(), graded_from_json(e)).second) detail::malformed("set given twice in \"groups\"");
  }
  const auto& ts = detail::field(j, "triangles");
  if (!ts.is_array()) detail::malformed("\"triangles\" must be an array");
  for (const auto& e : ts) {
    DatumTriangle t{set_from_json(detail::field(e, "open"), n), set_from_json(detail::field(e, "set"), n), {}};
    const auto& ms = detail::field(e, "maps");
    if (!ms.is_array() || ms.size() != 6) detail::malformed("a triangle needs 6 maps");
    for (std::size_t i = 0; i < 6; ++i) t.maps[i] = matrix_from_json(ms[i]);
    d.triangles.push_back(std::move(t));
  }
  return d;
}

inline json to_json(const FiltratedKDatum& d) {
  json gs = json::array(), ts = json::array();
  for (const auto& [bits, g] : d.groups) {
    json e = to_json(g);
    e["set"] = to_json(PointSet(bits));
    gs.push_back(std::move(e));
  }
  for (const auto& t : d.triangles) {
    json ms = json::array();
    for (const auto& m : t.maps) ms.push_back(to_json(m));
    ts.push_back({{"open", to_json(t.open)}, {"set", to_json(t.set)}, {"maps", ms}});
  }
  return {{"space", to_json(d.space)}, {"groups", gs}, {"triangles", ts}};
}

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

inline json to_json(const Error& e) {
  json w = json::array();
  for (auto s : e.witness()) w.push_back(to_json(s));
  return {{"error", std::string(to_string(e.kind()))}, {"message", e.what()}, {"witness", w}};
}

}  // namespace fintop::io

#endif  // FINTOP_JSON_IO_HPP
