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

#ifndef FINTOP_COMPLETION_HPP
#define FINTOP_COMPLETION_HPP

// Spaces of families of open sets. A point y of the completion is a set of
// opens of X; the sets {y : y contains F} for finite F form a basis. Arbitrary
// monotone maps O(X) -> O(P) become continuous actions of the admissible part
// Y' (up-closed, containing X, not containing the empty set).

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "fintop/action.hpp"
#include "fintop/error.hpp"
#include "fintop/lattice.hpp"
#include "fintop/space.hpp"

namespace fintop {

inline constexpr std::size_t kMaxCompletionOpens = 16;
inline constexpr std::size_t kMaxFullPowerSetOpens = 8;

/// A point of the completion: a family of opens of the base, as a bit mask over
/// indices into base.opens().
using FilterPoint = std::uint32_t;

struct CompletionSpace {
  FiniteSpace base;
  /// Points, ordered by decreasing size and then by mask.
  std::vector<FilterPoint> points;
  FiniteSpace space;

  std::size_t index_of(FilterPoint y) const {
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (points[i] == y) return i;
    }
    throw Error(ErrorKind::InvalidInput, "family of opens is not a point of the completion");
  }

  /// Basis set {y : y contains F}.
  PointSet basis_set(FilterPoint f) const {
    PointSet out;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if ((points[i] & f) == f) out.insert(i);
    }
    return out;
  }

  /// Members of a point as open sets of the base.
  std::vector<PointSet> members(FilterPoint y) const {
    std::vector<PointSet> out;
    for (std::size_t i = 0; i < base.open_count(); ++i) {
      if ((y >> i) & 1U) out.push_back(base.opens()[i]);
    }
    return out;
  }
};

namespace detail {

inline std::string describe_open(const FiniteSpace& x, PointSet u) {
  std::string s = "{";
  bool first = true;
  u.for_each([&](std::size_t p) {
    s += (first ? "" : ",") + x.label(p);
    first = false;
  });
  return s + "}";
}

/// Topology generated by the basis {y : y contains F}, F ranging over all
/// families of opens; closed under unions and then validated.
inline CompletionSpace completion_from_points(const FiniteSpace& x, std::vector<FilterPoint> points) {
  if (points.size() > kMaxPoints) {
    throw Error(ErrorKind::CapExceeded, "completion has " + std::to_string(points.size()) + " points, more than " +
                                            std::to_string(kMaxPoints));
  }
  std::sort(points.begin(), points.end(), [](FilterPoint a, FilterPoint b) {
    auto pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa > pb : a < b;
  });
  CompletionSpace c{x, std::move(points), {}};
  const std::size_t k = x.open_count();
  std::unordered_set<PointSet> basis;
  for (std::uint64_t f = 0; f < (std::uint64_t{1} << k); ++f) basis.insert(c.basis_set(static_cast<FilterPoint>(f)));
  std::unordered_set<PointSet> family{PointSet{}};
  for (auto b : basis) {
    std::vector<PointSet> grown;
    for (auto s : family) {
      if (!b.subset_of(s)) grown.push_back(s | b);
    }
    family.insert(grown.begin(), grown.end());
    if (family.size() > kMaxOpens) throw Error(ErrorKind::CapExceeded, "completion topology too large");
  }
  std::vector<PointSet> opens(family.begin(), family.end());
  c.space = opens.size() <= (std::size_t{1} << 12) ? validate_topology(c.points.size(), std::move(opens))
                                                   : FiniteSpace::from_trusted(c.points.size(), std::move(opens));
  std::vector<std::string> labels;
  for (auto y : c.points) {
    // A point is named by the minimal opens it contains.
    std::string label;
    const auto members = c.members(y);
    for (auto u : members) {
      bool minimal = true;
      for (auto v : members) minimal = minimal && !(v != u && v.subset_of(u));
      if (minimal) label += (label.empty() ? "" : "&") + describe_open(x, u);
    }
    labels.push_back(label.empty() ? "{}" : label);
  }
  // Minimal members do not separate arbitrary families (e.g. {} and {{}});
  // fall back to listing every member.
  if (std::unordered_set<std::string>(labels.begin(), labels.end()).size() != labels.size()) {
    for (std::size_t i = 0; i < c.points.size(); ++i) {
      std::string all;
      for (auto u : c.members(c.points[i])) all += (all.empty() ? "" : ",") + describe_open(x, u);
      labels[i] = "[" + all + "]";
    }
  }
  c.space = c.space.with_labels(std::move(labels));
  return c;
}

}  // namespace detail

/// Admissible families: up-closed, containing X, not containing the empty set.
inline CompletionSpace build_yprime(const FiniteSpace& x) {
  const std::size_t k = x.open_count();
  if (k > kMaxCompletionOpens) {
    throw Error(ErrorKind::CapExceeded, "completion needs at most " + std::to_string(kMaxCompletionOpens) + " opens");
  }
  const auto opens = x.opens();
  std::vector<FilterPoint> above(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (opens[i].subset_of(opens[j])) above[i] |= FilterPoint{1} << j;
    }
  }
  const FilterPoint whole = FilterPoint{1} << *x.open_index(x.ground());
  const FilterPoint empty = FilterPoint{1} << *x.open_index(PointSet{});
  std::vector<FilterPoint> points;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << k); ++m) {
    const auto y = static_cast<FilterPoint>(m);
    if (!(y & whole) || (y & empty)) continue;
    bool closed = true;
    for (std::size_t i = 0; i < k && closed; ++i) {
      if ((y >> i) & 1U) closed = (above[i] & ~y) == 0;
    }
    if (closed) points.push_back(y);
  }
  return detail::completion_from_points(x, std::move(points));
}

/// All families of opens (the power set of O(X)); only for tiny lattices.
inline CompletionSpace build_full_y(const FiniteSpace& x) {
  const std::size_t k = x.open_count();
  if (k > kMaxFullPowerSetOpens || (std::size_t{1} << k) > kMaxPoints) {
    throw Error(ErrorKind::CapExceeded, "power set of O(X) is too large");
  }
  std::vector<FilterPoint> points;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << k); ++m) points.push_back(static_cast<FilterPoint>(m));
  return detail::completion_from_points(x, std::move(points));
}

/// x |-> its family of open neighbourhoods.
inline ContinuousMap neighborhood_filter_embedding(const CompletionSpace& c) {
  const auto opens = c.base.opens();
  std::vector<std::size_t> assignment;
  for (std::size_t p = 0; p < c.base.size(); ++p) {
    FilterPoint y = 0;
    for (std::size_t i = 0; i < opens.size(); ++i) {
      if (opens[i].contains(p)) y |= FilterPoint{1} << i;
    }
    assignment.push_back(c.index_of(y));
  }
  return ContinuousMap(c.base, c.space, std::move(assignment));
}

/// The topology induced on the base by the embedding equals the original one.
inline bool embedding_induces_topology(const ContinuousMap& embedding) {
  std::unordered_set<PointSet> induced;
  for (auto w : embedding.codomain().opens()) induced.insert(embedding.preimage(w));
  const auto opens = embedding.domain().opens();
  return induced.size() == opens.size() &&
         std::all_of(opens.begin(), opens.end(), [&](PointSet u) { return induced.contains(u); });
}

/// A map O(X) -> O(P), indexed like base.opens().
using OpenMap = std::vector<PointSet>;

/// psi(p) = {U : p in f(U)}. Requires f(empty) = empty, f(X) = P and
/// monotonicity; then f(U) = psi^{-1}({y : U in y}).
inline ActionOverX from_discontinuous(const CompletionSpace& c, const FiniteSpace& p, const OpenMap& f) {
  const auto opens = c.base.opens();
  if (f.size() != opens.size()) throw Error(ErrorKind::InvalidInput, "one value per open set is required");
  for (auto v : f) {
    if (!p.is_open(v)) throw Error(ErrorKind::NotOpen, "value is not open in P", {v});
  }
  if (!f[*c.base.open_index(PointSet{})].empty() || f[*c.base.open_index(c.base.ground())] != p.ground()) {
    throw Error(ErrorKind::BadEndpoints, "f must send the empty set to the empty set and X to P");
  }
  for (std::size_t i = 0; i < opens.size(); ++i) {
    for (std::size_t j = 0; j < opens.size(); ++j) {
      if (opens[i].subset_of(opens[j]) && !f[i].subset_of(f[j])) {
        throw Error(ErrorKind::NotMonotone, "f is not monotone", {opens[i], opens[j]});
      }
    }
  }
  std::vector<std::size_t> assignment;
  for (std::size_t q = 0; q < p.size(); ++q) {
    FilterPoint y = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (f[i].contains(q)) y |= FilterPoint{1} << i;
    }
    assignment.push_back(c.index_of(y));
  }
  ActionOverX a(c.space, p, std::move(assignment));
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (a.psi().preimage(c.basis_set(FilterPoint{1} << i)) != f[i]) {
      throw Error(ErrorKind::InternalInconsistency, "completion does not reproduce f", {opens[i]});
    }
  }
  return a;
}

/// f(U) = psi^{-1}({y : U in y}).
inline OpenMap to_discontinuous(const CompletionSpace& c, const ActionOverX& a) {
  if (!(a.base() == c.space)) throw Error(ErrorKind::DomainMismatch, "action is not over this completion");
  OpenMap f;
  for (std::size_t i = 0; i < c.base.open_count(); ++i) f.push_back(a.psi().preimage(c.basis_set(FilterPoint{1} << i)));
  return f;
}

struct EquivarianceCheck {
  /// g(f_A(U)) is contained in f_B(U) for every open U of the base.
  bool on_base = false;
  /// g(psi_A^*(W)) is contained in psi_B^*(W) for every open W of the completion.
  bool on_completion = false;
};

/// Compares the equivariance condition of a lattice map g: O(P_A) -> O(P_B)
/// on the base opens with the same condition on all opens of the completion.
inline EquivarianceCheck check_equivariance(const CompletionSpace& c, const ActionOverX& a, const ActionOverX& b,
                                            const LatticeMap& g) {
  const auto fa = to_discontinuous(c, a);
  const auto fb = to_discontinuous(c, b);
  EquivarianceCheck out{true, true};
  for (std::size_t i = 0; i < fa.size(); ++i) out.on_base = out.on_base && g(fa[i]).subset_of(fb[i]);
  for (auto w : c.space.opens()) {
    out.on_completion = out.on_completion && g(a.psi().preimage(w)).subset_of(b.psi().preimage(w));
  }
  return out;
}

}  // namespace fintop

#endif  // FINTOP_COMPLETION_HPP
