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

#ifndef FINTOP_LATTICE_HPP
#define FINTOP_LATTICE_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fintop/error.hpp"
#include "fintop/space.hpp"
#include "fintop/topology.hpp"

namespace fintop {

/// A finite distributive lattice realised as a family of subsets ordered by
/// inclusion, closed under union and intersection. Every lattice here is the
/// open-set lattice of some finite space, so distributivity is automatic.
class FiniteDistributiveLattice {
 public:
  FiniteDistributiveLattice() : elements_{PointSet{}} {}

  explicit FiniteDistributiveLattice(const FiniteSpace& x)
      : elements_(x.opens().begin(), x.opens().end()), top_(x.ground()) {}

  std::span<const PointSet> elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  PointSet bottom() const { return PointSet{}; }
  PointSet top() const { return top_; }
  bool contains(PointSet s) const { return index_of(s).has_value(); }

  std::optional<std::size_t> index_of(PointSet s) const {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), s, CanonicalSetOrder{});
    if (it == elements_.end() || *it != s) return std::nullopt;
    return static_cast<std::size_t>(it - elements_.begin());
  }

  bool operator==(const FiniteDistributiveLattice&) const = default;

 private:
  std::vector<PointSet> elements_;
  PointSet top_;
};

inline FiniteDistributiveLattice open_set_lattice(const FiniteSpace& x) { return FiniteDistributiveLattice(x); }

/// A map between open-set lattices given by its value on every element.
class LatticeMap {
 public:
  LatticeMap(FiniteDistributiveLattice source, FiniteDistributiveLattice target, std::vector<PointSet> table)
      : source_(std::move(source)), target_(std::move(target)), table_(std::move(table)) {
    if (table_.size() != source_.size()) throw Error(ErrorKind::InvalidInput, "lattice map must be total on its source");
    for (auto v : table_) {
      if (!target_.contains(v)) throw Error(ErrorKind::InvalidInput, "lattice map value is not in the target", {v});
    }
  }

  const FiniteDistributiveLattice& source() const { return source_; }
  const FiniteDistributiveLattice& target() const { return target_; }
  const std::vector<PointSet>& table() const { return table_; }

  PointSet operator()(PointSet u) const {
    auto i = source_.index_of(u);
    if (!i) throw Error(ErrorKind::InvalidInput, "argument is not an element of the source lattice", {u});
    return table_[*i];
  }

  bool operator==(const LatticeMap&) const = default;

 private:
  FiniteDistributiveLattice source_;
  FiniteDistributiveLattice target_;
  std::vector<PointSet> table_;
};

/// First family of source elements whose join is not preserved. Every
/// subfamily is tried when the source has at most 20 elements; otherwise the
/// empty family and all pairs, which is equivalent for finite lattices since
/// any join is an iterated binary join.
inline std::optional<std::vector<PointSet>> join_failure(const LatticeMap& m) {
  const auto elems = m.source().elements();
  const auto& table = m.table();
  const std::size_t k = elems.size();
  if (k <= 20) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
      PointSet join, image;
      for (std::size_t i = 0; i < k; ++i) {
        if ((mask >> i) & 1U) {
          join |= elems[i];
          image |= table[i];
        }
      }
      if (m(join) != image) {
        std::vector<PointSet> witness;
        for (std::size_t i = 0; i < k; ++i) {
          if ((mask >> i) & 1U) witness.push_back(elems[i]);
        }
        return witness;
      }
    }
    return std::nullopt;
  }
  if (!m(PointSet{}).empty()) return std::vector<PointSet>{};
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (m(elems[i] | elems[j]) != (table[i] | table[j])) return std::vector<PointSet>{elems[i], elems[j]};
    }
  }
  return std::nullopt;
}

/// First pair (or the empty family, as {}) whose meet is not preserved.
inline std::optional<std::vector<PointSet>> meet_failure(const LatticeMap& m) {
  if (m(m.source().top()) != m.target().top()) return std::vector<PointSet>{};
  const auto elems = m.source().elements();
  const auto& table = m.table();
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t j = i + 1; j < elems.size(); ++j) {
      if (m(elems[i] & elems[j]) != (table[i] & table[j])) return std::vector<PointSet>{elems[i], elems[j]};
    }
  }
  return std::nullopt;
}

inline bool preserves_joins(const LatticeMap& m) { return !join_failure(m).has_value(); }
inline bool preserves_finite_meets(const LatticeMap& m) { return !meet_failure(m).has_value(); }

inline bool is_monotone(const LatticeMap& m) {
  const auto elems = m.source().elements();
  const auto& table = m.table();
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t j = 0; j < elems.size(); ++j) {
      if (elems[i].subset_of(elems[j]) && !table[i].subset_of(table[j])) return false;
    }
  }
  return true;
}

/// U |-> psi^{-1}(U) on the opens of the codomain.
inline LatticeMap continuous_to_lattice_map(const ContinuousMap& psi) {
  auto source = open_set_lattice(psi.codomain());
  std::vector<PointSet> table;
  table.reserve(source.size());
  for (auto u : source.elements()) table.push_back(psi.preimage(u));
  return LatticeMap(std::move(source), open_set_lattice(psi.domain()), std::move(table));
}

/// Recovers the continuous map P -> X generating a join- and meet-preserving
/// map O(X) -> O(P) when X is sober. For p in P, U_p is the union of all opens
/// U with p outside m(U); its complement is irreducible closed and nonempty,
/// and psi(p) is its generic point.
inline ContinuousMap lattice_map_to_continuous(const LatticeMap& m, const FiniteSpace& x, const FiniteSpace& p) {
  if (!(m.source() == open_set_lattice(x)) || !(m.target() == open_set_lattice(p))) {
    throw Error(ErrorKind::DomainMismatch, "lattice map does not run from O(X) to O(P)");
  }
  if (!is_sober(x)) throw Error(ErrorKind::NotSober, "base space is not sober");
  if (auto w = join_failure(m)) throw Error(ErrorKind::PreservationFailure, "map does not preserve joins", *w);
  if (auto w = meet_failure(m)) throw Error(ErrorKind::PreservationFailure, "map does not preserve finite meets", *w);

  const auto elems = m.source().elements();
  std::vector<std::size_t> assignment(p.size());
  for (std::size_t q = 0; q < p.size(); ++q) {
    PointSet largest;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      if (!m.table()[i].contains(q)) largest |= elems[i];
    }
    const PointSet closed = x.ground() - largest;
    if (!is_irreducible_closed(x, closed)) {
      throw Error(ErrorKind::ReducibleClosedSet, "complement of the largest avoiding open is not irreducible", {closed});
    }
    std::optional<std::size_t> generic;
    for (std::size_t y = 0; y < x.size(); ++y) {
      if (x.point_closure(y) == closed) generic = y;
    }
    if (!generic) throw Error(ErrorKind::ReducibleClosedSet, "irreducible closed set has no generic point", {closed});
    assignment[q] = *generic;
  }
  ContinuousMap psi(p, x, std::move(assignment));
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (psi.preimage(elems[i]) != m.table()[i]) {
      throw Error(ErrorKind::InternalInconsistency, "reconstructed map does not reproduce the lattice map", {elems[i]});
    }
  }
  return psi;
}

}  // namespace fintop

#endif  // FINTOP_LATTICE_HPP
