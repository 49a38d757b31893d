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

#ifndef FINTOP_TOPOLOGY_HPP
#define FINTOP_TOPOLOGY_HPP

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "fintop/error.hpp"
#include "fintop/space.hpp"

namespace fintop {

// ---------------------------------------------------------------------------
// Separation and sobriety
// ---------------------------------------------------------------------------

inline bool is_t0(const FiniteSpace& x) {
  std::unordered_set<PointSet> seen;
  for (std::size_t p = 0; p < x.size(); ++p) {
    if (!seen.insert(x.neighbourhood(p)).second) return false;
  }
  return true;
}

/// A closed set C is irreducible when it is nonempty and any two opens that
/// meet C also meet each other inside C. Since every open meeting C at p
/// contains U_p, it is enough to test the minimal neighbourhoods.
inline bool is_irreducible_closed(const FiniteSpace& x, PointSet c) {
  if (c.empty() || !x.is_closed(c)) return false;
  const auto pts = c.members();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if ((x.neighbourhood(pts[i]) & x.neighbourhood(pts[j]) & c).empty()) return false;
    }
  }
  return true;
}

/// All irreducible closed subsets, in CanonicalSetOrder.
inline std::vector<PointSet> irreducible_closed_sets(const FiniteSpace& x) {
  std::vector<PointSet> out;
  for (auto u : x.opens()) {
    const PointSet c = x.ground() - u;
    if (is_irreducible_closed(x, c)) out.push_back(c);
  }
  std::sort(out.begin(), out.end(), CanonicalSetOrder{});
  return out;
}

/// Every irreducible closed set is the closure of exactly one point.
inline bool is_sober(const FiniteSpace& x) {
  for (auto c : irreducible_closed_sets(x)) {
    std::size_t generic = 0;
    for (std::size_t p = 0; p < x.size(); ++p) {
      if (x.point_closure(p) == c) ++generic;
    }
    if (generic != 1) return false;
  }
  return true;
}

struct Soberification {
  /// Points are the irreducible closed subsets of the original space.
  FiniteSpace space;
  std::vector<PointSet> points;
  /// p |-> closure of {p}.
  ContinuousMap iota;
};

inline Soberification soberification(const FiniteSpace& x) {
  Soberification s;
  s.points = irreducible_closed_sets(x);
  const std::size_t m = s.points.size();
  std::vector<PointSet> family;
  family.reserve(x.open_count());
  for (auto u : x.opens()) {
    PointSet hat;
    for (std::size_t i = 0; i < m; ++i) {
      if (s.points[i].intersects(u)) hat.insert(i);
    }
    family.push_back(hat);
  }
  s.space = FiniteSpace::from_trusted(m, std::move(family));
  std::vector<std::size_t> assign(x.size());
  for (std::size_t p = 0; p < x.size(); ++p) {
    auto it = std::find(s.points.begin(), s.points.end(), x.point_closure(p));
    assign[p] = static_cast<std::size_t>(it - s.points.begin());
  }
  if (x.has_labels()) {
    std::vector<std::string> labels(m);
    for (std::size_t p = 0; p < x.size(); ++p) {
      auto& l = labels[assign[p]];
      l += (l.empty() ? "" : "|") + x.label(p);
    }
    s.space = s.space.with_labels(std::move(labels));
  }
  s.iota = ContinuousMap(x, s.space, std::move(assign));
  return s;
}

// ---------------------------------------------------------------------------
// Subspaces and locally closed sets
// ---------------------------------------------------------------------------

struct Subspace {
  FiniteSpace space;
  /// points[i] is the index in the ambient space of the subspace point i.
  std::vector<std::size_t> points;
  PointSet carrier;
};

/// Subspace topology on `s`; points are renumbered in increasing order.
inline Subspace subspace(const FiniteSpace& x, PointSet s) {
  if (!s.subset_of(x.ground())) throw Error(ErrorKind::InvalidInput, "subset mentions a point outside the space");
  std::unordered_set<PointSet> family;
  for (auto u : x.opens()) family.insert(compress(u & s, s));
  Subspace out;
  out.carrier = s;
  out.points = s.members();
  out.space = FiniteSpace::from_trusted(s.size(), {family.begin(), family.end()});
  if (x.has_labels()) {
    std::vector<std::string> labels;
    for (auto p : out.points) labels.push_back(x.label(p));
    out.space = out.space.with_labels(std::move(labels));
  }
  return out;
}

/// Inclusion of a subspace into its ambient space.
inline ContinuousMap inclusion(const FiniteSpace& ambient, const Subspace& sub) {
  return ContinuousMap(sub.space, ambient, sub.points);
}

/// A locally closed set with a witness carrier = open_part \ removed, where
/// removed is contained in open_part and both are open.
struct LocallyClosedSet {
  PointSet carrier;
  PointSet open_part;
  PointSet removed;

  bool operator==(const LocallyClosedSet&) const = default;
};

/// Returns the canonical witness (smallest open containing S, minus S) when S
/// is locally closed.
inline std::optional<LocallyClosedSet> is_locally_closed(const FiniteSpace& x, PointSet s) {
  if (!s.subset_of(x.ground())) return std::nullopt;
  const PointSet u = up_closure(x, s);
  const PointSet v = u - s;
  if (!x.is_open(v)) return std::nullopt;
  return LocallyClosedSet{s, u, v};
}

inline LocallyClosedSet require_locally_closed(const FiniteSpace& x, PointSet s) {
  auto lc = is_locally_closed(x, s);
  if (!lc) throw Error(ErrorKind::NotLocallyClosed, "set is not locally closed", {s});
  return *lc;
}

/// Every locally closed subset once, in CanonicalSetOrder of the carriers.
inline std::vector<LocallyClosedSet> locally_closed_sets(const FiniteSpace& x) {
  std::unordered_set<PointSet> carriers;
  const auto opens = x.opens();
  for (auto u : opens) {
    for (auto v : opens) {
      if (v.subset_of(u)) carriers.insert(u - v);
    }
  }
  std::vector<PointSet> sorted(carriers.begin(), carriers.end());
  std::sort(sorted.begin(), sorted.end(), CanonicalSetOrder{});
  std::vector<LocallyClosedSet> out;
  out.reserve(sorted.size());
  for (auto c : sorted) out.push_back(*is_locally_closed(x, c));
  return out;
}

/// All witness pairs (U, V) of opens with V inside U and U \ V = S.
inline std::vector<std::pair<PointSet, PointSet>> locally_closed_witnesses(const FiniteSpace& x, PointSet s) {
  std::vector<std::pair<PointSet, PointSet>> out;
  for (auto u : x.opens()) {
    if (s.subset_of(u) && x.is_open(u - s)) out.emplace_back(u, u - s);
  }
  return out;
}

/// S is convex for the specialisation preorder: x <= y <= z with x, z in S
/// forces y into S.
inline bool is_convex(const Preorder& order, PointSet s) {
  for (std::size_t y = 0; y < order.size(); ++y) {
    if (s.contains(y)) continue;
    if (order.down(y).intersects(s) && order.up(y).intersects(s)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Maps
// ---------------------------------------------------------------------------

inline bool is_open_map(const ContinuousMap& f) {
  for (auto u : f.domain().opens()) {
    if (!f.codomain().is_open(f.image(u))) return false;
  }
  return true;
}

/// f* sends the infimum (interior of the intersection) of every family of
/// codomain opens to the infimum of the preimages. All subfamilies are
/// enumerated for up to 20 opens; beyond that pairs plus the empty family are
/// checked, which is equivalent because every infimum of a finite lattice is
/// an iterated binary one.
inline bool preserves_all_infima(const ContinuousMap& f) {
  const auto& cod = f.codomain();
  const auto& dom = f.domain();
  const auto opens = cod.opens();
  const std::size_t k = opens.size();
  auto check = [&](PointSet meet_cod, PointSet meet_pre) {
    return f.preimage(interior(cod, meet_cod)) == interior(dom, meet_pre);
  };
  if (k <= 20) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
      PointSet a = cod.ground(), b = dom.ground();
      for (std::size_t i = 0; i < k; ++i) {
        if ((mask >> i) & 1U) {
          a &= opens[i];
          b &= f.preimage(opens[i]);
        }
      }
      if (!check(a, b)) return false;
    }
    return true;
  }
  if (!check(cod.ground(), dom.ground())) return false;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      if (!check(opens[i] & opens[j], f.preimage(opens[i]) & f.preimage(opens[j]))) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Global structure
// ---------------------------------------------------------------------------

/// Components of the comparability graph, each sorted, ordered by least point.
inline std::vector<PointSet> connected_components(const FiniteSpace& x) {
  const std::size_t n = x.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (std::size_t p = 0; p < n; ++p) {
    x.neighbourhood(p).for_each([&](std::size_t q) { parent[find(p)] = find(q); });
  }
  std::vector<PointSet> comps;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t p = 0; p < n; ++p) {
    const std::size_t r = find(p);
    if (slot[r] == n) {
      slot[r] = comps.size();
      comps.emplace_back();
    }
    comps[slot[r]].insert(p);
  }
  return comps;
}

inline bool is_connected(const FiniteSpace& x) { return connected_components(x).size() <= 1; }

/// Topological disjoint union; points of `b` follow those of `a`.
inline FiniteSpace disjoint_union(const FiniteSpace& a, const FiniteSpace& b) {
  if (a.size() + b.size() > kMaxPoints) throw Error(ErrorKind::CapExceeded, "disjoint union too large");
  std::vector<PointSet> family;
  for (auto u : a.opens()) {
    for (auto v : b.opens()) family.push_back(u | PointSet(v.bits() << a.size()));
  }
  auto out = FiniteSpace::from_trusted(a.size() + b.size(), std::move(family));
  // Labels survive only when both sides have them and they stay distinct.
  if (a.has_labels() && b.has_labels()) {
    auto labels = a.labels();
    labels.insert(labels.end(), b.labels().begin(), b.labels().end());
    if (std::unordered_set<std::string>(labels.begin(), labels.end()).size() == labels.size()) {
      out = out.with_labels(std::move(labels));
    }
  }
  return out;
}

/// Cover relation of the specialisation order. An edge (a, b) means b is
/// covered by a, i.e. U_a is contained in U_b; it is drawn as a -> b.
struct HasseEdge {
  std::size_t from;
  std::size_t to;
  bool operator==(const HasseEdge&) const = default;
  auto operator<=>(const HasseEdge&) const = default;
};

inline void require_t0(const FiniteSpace& x) {
  if (!is_t0(x)) throw Error(ErrorKind::NotT0, "operation requires a T0 space");
}

/// Transitive reduction of the strict specialisation order, sorted.
inline std::vector<HasseEdge> hasse_diagram(const FiniteSpace& x) {
  require_t0(x);
  const std::size_t n = x.size();
  std::vector<HasseEdge> edges;
  // b < a  iff  a in U_b, a != b
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b || !x.neighbourhood(b).contains(a)) continue;
      bool cover = true;
      for (std::size_t z = 0; z < n && cover; ++z) {
        if (z == a || z == b) continue;
        if (x.neighbourhood(b).contains(z) && x.neighbourhood(z).contains(a)) cover = false;
      }
      if (cover) edges.push_back({a, b});
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

/// Number of points in a longest chain; zero for the empty space.
inline std::size_t length(const FiniteSpace& x) {
  require_t0(x);
  const std::size_t n = x.size();
  // Points sorted by neighbourhood size: strictly larger elements come first.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return x.neighbourhood(a).size() < x.neighbourhood(b).size(); });
  std::vector<std::size_t> chain(n, 1);
  std::size_t best = 0;
  for (auto p : order) {
    (x.neighbourhood(p) - PointSet::singleton(p)).for_each([&](std::size_t q) {
      chain[p] = std::max(chain[p], chain[q] + 1);
    });
    best = std::max(best, chain[p]);
  }
  return best;
}

struct Filtration {
  /// layers[j] for j = 0..l, starting at the empty set and ending at X.
  std::vector<PointSet> layers;
  /// strata[j-1] = layers[j] \ layers[j-1].
  std::vector<PointSet> strata;
};

/// Open filtration whose strata are the open points of what remains.
inline Filtration canonical_filtration(const FiniteSpace& x) {
  require_t0(x);
  Filtration f;
  PointSet done;
  f.layers.push_back(done);
  while (done != x.ground()) {
    const PointSet rest = x.ground() - done;
    PointSet stratum;
    rest.for_each([&](std::size_t p) {
      if ((x.neighbourhood(p) & rest) == PointSet::singleton(p)) stratum.insert(p);
    });
    done |= stratum;
    f.strata.push_back(stratum);
    f.layers.push_back(done);
  }
  return f;
}

/// Index j (1-based) of the stratum containing p.
inline std::size_t stratum_of(const Filtration& f, std::size_t p) {
  for (std::size_t j = 0; j < f.strata.size(); ++j) {
    if (f.strata[j].contains(p)) return j + 1;
  }
  throw Error(ErrorKind::InvalidInput, "point not covered by the filtration");
}

}  // namespace fintop

#endif  // FINTOP_TOPOLOGY_HPP
