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

#ifndef FINTOP_ENUMERATION_HPP
#define FINTOP_ENUMERATION_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <string>
#include <thread>
#include <tuple>
#include <unordered_set>
#include <utility>
#include <vector>

#include "fintop/error.hpp"
#include "fintop/space.hpp"
#include "fintop/spaces.hpp"
#include "fintop/topology.hpp"

namespace fintop {

inline constexpr std::size_t kMaxTopologyEnumeration = 5;
inline constexpr std::size_t kMaxPosetEnumeration = 7;
inline constexpr std::size_t kMaxCensus = 6;
inline constexpr std::size_t kMaxCanonicalForm = 8;

namespace detail {

/// Rows of a (partial) preorder on points 0..k-1: rows[x] = {y : x <= y}.
using Rows = std::vector<PointSet>;

/// All unions of members of `generators`, including the empty union.
inline std::vector<PointSet> union_closure(const std::vector<PointSet>& generators) {
  std::unordered_set<PointSet> family{PointSet{}};
  for (auto g : generators) {
    std::vector<PointSet> grown;
    for (auto s : family) {
      if (!g.subset_of(s)) grown.push_back(s | g);
    }
    family.insert(grown.begin(), grown.end());
  }
  std::vector<PointSet> out(family.begin(), family.end());
  std::sort(out.begin(), out.end(), CanonicalSetOrder{});
  return out;
}

/// Extends a preorder on the first rows.size() points one point at a time.
/// A new point k is placed by choosing the down-set D of elements below it and
/// the up-set S of elements above it; transitivity holds exactly when D is
/// down-closed, S is up-closed and every element of D lies below every element
/// of S. Posets additionally require D and S to be disjoint.
template <class Visit>
void extend_preorders(Rows& rows, std::size_t n, bool antisymmetric, Visit& visit) {
  const std::size_t k = rows.size();
  if (k == n) {
    visit(static_cast<const Rows&>(rows));
    return;
  }
  std::vector<PointSet> down_gen(k), up_gen(k);
  for (std::size_t x = 0; x < k; ++x) {
    up_gen[x] = rows[x];
    rows[x].for_each([&](std::size_t y) { down_gen[y].insert(x); });
  }
  const PointSet all = PointSet::full(k);
  for (PointSet d : union_closure(down_gen)) {
    PointSet above = all;
    d.for_each([&](std::size_t x) { above &= rows[x]; });
    if (antisymmetric) above -= d;
    std::vector<PointSet> gens;
    above.for_each([&](std::size_t x) { gens.push_back(up_gen[x]); });
    for (PointSet s : union_closure(gens)) {
      if (!s.subset_of(above)) continue;
      d.for_each([&](std::size_t x) { rows[x].insert(k); });
      rows.push_back(s | PointSet::singleton(k));
      extend_preorders(rows, n, antisymmetric, visit);
      rows.pop_back();
      d.for_each([&](std::size_t x) { rows[x].erase(k); });
    }
  }
}

/// Partial preorders on the first `depth` points, used to split work.
inline std::vector<Rows> preorder_prefixes(std::size_t depth, bool antisymmetric) {
  std::vector<Rows> out;
  Rows rows;
  auto collect = [&](const Rows& r) { out.push_back(r); };
  extend_preorders(rows, depth, antisymmetric, collect);
  return out;
}

inline bool rows_connected(const Rows& rows) {
  const std::size_t n = rows.size();
  if (n == 0) return true;
  PointSet reached = PointSet::singleton(0), frontier = reached;
  while (!frontier.empty()) {
    PointSet next;
    frontier.for_each([&](std::size_t x) {
      next |= rows[x];
      for (std::size_t y = 0; y < n; ++y) {
        if (rows[y].contains(x)) next.insert(y);
      }
    });
    frontier = next - reached;
    reached |= next;
  }
  return reached == PointSet::full(n);
}

}  // namespace detail

/// Visits every preorder (or every partial order) on n labelled points once.
template <class Visit>
void for_each_preorder(std::size_t n, bool antisymmetric, Visit&& visit) {
  if (n > kMaxPosetEnumeration) {
    throw Error(ErrorKind::CapExceeded, "enumeration is limited to " + std::to_string(kMaxPosetEnumeration) + " points");
  }
  detail::Rows rows;
  auto adapter = [&](const detail::Rows& r) { visit(Preorder::from_rows(r)); };
  detail::extend_preorders(rows, n, antisymmetric, adapter);
}

/// Every topology on n labelled points, via the preorder correspondence.
template <class Visit>
void for_each_labeled_topology(std::size_t n, Visit&& visit) {
  if (n > kMaxTopologyEnumeration) {
    throw Error(ErrorKind::CapExceeded,
                "topology enumeration is limited to " + std::to_string(kMaxTopologyEnumeration) + " points");
  }
  for_each_preorder(n, false, [&](const Preorder& p) { visit(alexandrov_topology(p)); });
}

inline std::vector<FiniteSpace> enumerate_labeled_topologies(std::size_t n) {
  std::vector<FiniteSpace> out;
  for_each_labeled_topology(n, [&](FiniteSpace x) { out.push_back(std::move(x)); });
  return out;
}

/// One T0 space per labelled partial order.
template <class Visit>
void for_each_labeled_t0(std::size_t n, Visit&& visit) {
  for_each_preorder(n, true, [&](const Preorder& p) { visit(alexandrov_topology(p)); });
}

inline std::vector<FiniteSpace> enumerate_labeled_t0(std::size_t n) {
  std::vector<FiniteSpace> out;
  for_each_labeled_t0(n, [&](FiniteSpace x) { out.push_back(std::move(x)); });
  return out;
}

inline std::size_t count_labeled_preorders(std::size_t n, bool antisymmetric) {
  std::size_t count = 0;
  if (n > kMaxPosetEnumeration) throw Error(ErrorKind::CapExceeded, "enumeration cap exceeded");
  detail::Rows rows;
  auto tally = [&](const detail::Rows&) { ++count; };
  detail::extend_preorders(rows, n, antisymmetric, tally);
  return count;
}

// ---------------------------------------------------------------------------
// Canonical forms
// ---------------------------------------------------------------------------

/// Byte encoding of a space that is equal for two spaces exactly when they
/// are homeomorphic. Layout: point count, kind (0 = Hasse diagram of a T0
/// space, 1 = full preorder matrix), then the row-major adjacency bits of the
/// lexicographically least relabelling, packed big-endian into 8 bytes.
struct CanonicalForm {
  std::vector<std::uint8_t> bytes;

  auto operator<=>(const CanonicalForm&) const = default;
  bool operator==(const CanonicalForm&) const = default;

  std::string hex() const {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    for (auto b : bytes) {
      out += digits[b >> 4];
      out += digits[b & 15];
    }
    return out;
  }
};

namespace detail {

/// Adjacency rows to minimise: covers for posets, the relation otherwise.
inline Rows encoding_rows(const Rows& order, bool t0) {
  if (!t0) return order;
  const std::size_t n = order.size();
  Rows covers(n);
  for (std::size_t a = 0; a < n; ++a) {
    const PointSet strict_up = order[a] - PointSet::singleton(a);
    strict_up.for_each([&](std::size_t b) {
      bool cover = true;
      (strict_up - PointSet::singleton(b)).for_each([&](std::size_t z) { cover = cover && !order[z].contains(b); });
      if (cover) covers[a].insert(b);
    });
  }
  return covers;
}

inline CanonicalForm canonical_form_of_rows(const Rows& order) {
  const std::size_t n = order.size();
  if (n > kMaxCanonicalForm) {
    throw Error(ErrorKind::CapExceeded, "canonical forms are limited to " + std::to_string(kMaxCanonicalForm) + " points");
  }
  bool t0 = true;
  for (std::size_t a = 0; a < n && t0; ++a) {
    order[a].for_each([&](std::size_t b) { t0 = t0 && (a == b || !order[b].contains(a)); });
  }
  const Rows adj = encoding_rows(order, t0);

  // Relabellings only permute points with equal invariants.
  using Key = std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>;
  std::vector<Key> key(n);
  for (std::size_t a = 0; a < n; ++a) {
    std::size_t below = 0, in_adj = 0;
    for (std::size_t b = 0; b < n; ++b) {
      below += order[b].contains(a) ? 1 : 0;
      in_adj += adj[b].contains(a) ? 1 : 0;
    }
    key[a] = {order[a].size(), below, adj[a].size(), in_adj};
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return key[a] < key[b]; });
  std::vector<std::pair<std::size_t, std::size_t>> blocks;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && key[perm[j]] == key[perm[i]]) ++j;
    blocks.emplace_back(i, j);
    i = j;
  }

  auto encode = [&]() {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (adj[perm[i]].contains(perm[j])) v |= std::uint64_t{1} << (63 - (i * n + j));
      }
    }
    return v;
  };
  std::uint64_t best = ~std::uint64_t{0};
  bool first = true;
  std::function<void(std::size_t)> walk = [&](std::size_t bi) {
    if (bi == blocks.size()) {
      const auto v = encode();
      if (first || v < best) best = v;
      first = false;
      return;
    }
    auto [lo, hi] = blocks[bi];
    std::sort(perm.begin() + static_cast<std::ptrdiff_t>(lo), perm.begin() + static_cast<std::ptrdiff_t>(hi));
    do {
      walk(bi + 1);
    } while (std::next_permutation(perm.begin() + static_cast<std::ptrdiff_t>(lo),
                                   perm.begin() + static_cast<std::ptrdiff_t>(hi)));
  };
  walk(0);
  if (n == 0) best = 0;

  CanonicalForm cf;
  cf.bytes.push_back(static_cast<std::uint8_t>(n));
  cf.bytes.push_back(t0 ? 0 : 1);
  for (int shift = 56; shift >= 0; shift -= 8) cf.bytes.push_back(static_cast<std::uint8_t>(best >> shift));
  return cf;
}

}  // namespace detail

inline CanonicalForm canonical_form(const Preorder& order) { return detail::canonical_form_of_rows(order.rows()); }

inline CanonicalForm canonical_form(const FiniteSpace& x) { return canonical_form(specialization_preorder(x)); }

inline bool are_homeomorphic(const FiniteSpace& a, const FiniteSpace& b) {
  return a.size() == b.size() && canonical_form(a) == canonical_form(b);
}

/// The representative preorder encoded by a canonical form.
inline Preorder decode(const CanonicalForm& cf) {
  if (cf.bytes.size() != 10) throw Error(ErrorKind::InvalidInput, "malformed canonical form");
  const std::size_t n = cf.bytes[0];
  std::uint64_t v = 0;
  for (std::size_t i = 2; i < 10; ++i) v = (v << 8) | cf.bytes[i];
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if ((v >> (63 - (i * n + j))) & 1U) pairs.emplace_back(i, j);
    }
  }
  return Preorder::generated_by(n, pairs);
}

// ---------------------------------------------------------------------------
// Census
// ---------------------------------------------------------------------------

struct CensusRow {
  std::size_t n = 0;
  bool connected = false;
  bool t0 = false;
  std::size_t labeled_count = 0;
  /// Homeomorphism classes, sorted.
  std::vector<CanonicalForm> classes;
};

/// Labelled spaces on n points passing the filters, and their classes up to
/// homeomorphism. Work is split over disjoint prefixes of the enumeration
/// tree; the merged result does not depend on `threads`.
inline CensusRow census(std::size_t n, bool connected, bool t0, std::size_t threads = 1) {
  if (n > kMaxCensus) throw Error(ErrorKind::CapExceeded, "census is limited to " + std::to_string(kMaxCensus) + " points");
  threads = std::max<std::size_t>(threads, 1);
  const auto prefixes = detail::preorder_prefixes(std::min<std::size_t>(n, 3), t0);

  struct Partial {
    std::size_t count = 0;
    std::set<CanonicalForm> classes;
  };
  std::vector<Partial> partials(threads);
  auto work = [&](std::size_t w) {
    auto& part = partials[w];
    auto visit = [&](const detail::Rows& rows) {
      if (connected && !detail::rows_connected(rows)) return;
      ++part.count;
      part.classes.insert(detail::canonical_form_of_rows(rows));
    };
    for (std::size_t i = w; i < prefixes.size(); i += threads) {
      detail::Rows rows = prefixes[i];
      detail::extend_preorders(rows, n, t0, visit);
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }

  CensusRow row{n, connected, t0, 0, {}};
  std::set<CanonicalForm> merged;
  for (auto& p : partials) {
    row.labeled_count += p.count;
    merged.insert(p.classes.begin(), p.classes.end());
  }
  row.classes.assign(merged.begin(), merged.end());
  return row;
}

// ---------------------------------------------------------------------------
// Diagram fixtures
// ---------------------------------------------------------------------------

struct Fixture {
  std::size_t ordinal;  // 1-based, in reading order
  std::vector<std::pair<std::size_t, std::size_t>> arrows;
  FiniteSpace space;
};

/// The twelve connected diagrams on three and four vertices, transcribed
/// arrow by arrow in reading order (row-major over the drawing grid).
inline std::vector<Fixture> connected_diagram_fixtures() {
  const std::vector<std::pair<std::size_t, std::vector<std::pair<std::size_t, std::size_t>>>> table = {
      {3, {{0, 1}, {1, 2}}},
      {3, {{0, 1}, {0, 2}}},
      {3, {{0, 1}, {2, 1}}},
      {4, {{0, 1}, {1, 2}, {2, 3}}},
      {4, {{0, 1}, {1, 2}, {1, 3}}},
      {4, {{0, 1}, {1, 2}, {0, 3}}},
      {4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}},
      {4, {{0, 1}, {0, 3}, {2, 1}, {2, 3}}},
      {4, {{0, 1}, {0, 3}, {2, 3}}},
      {4, {{0, 1}, {1, 2}, {3, 1}}},
      {4, {{1, 2}, {1, 3}, {1, 0}}},
      {4, {{0, 2}, {1, 2}, {3, 2}}},
  };
  std::vector<Fixture> out;
  std::size_t ordinal = 1;
  for (const auto& [n, arrows] : table) {
    out.push_back({ordinal++, arrows, spaces::from_hasse(n, arrows)});
  }
  return out;
}

}  // namespace fintop

#endif  // FINTOP_ENUMERATION_HPP
