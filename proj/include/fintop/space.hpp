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

#ifndef FINTOP_SPACE_HPP
#define FINTOP_SPACE_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "fintop/error.hpp"
#include "fintop/point_set.hpp"

namespace fintop {

/// Upper bound on the number of open sets materialised for one space.
inline constexpr std::size_t kMaxOpens = std::size_t{1} << 22;

/// A finite topological space: the ground set {0, ..., n-1} together with its
/// complete family of open sets, kept sorted in CanonicalSetOrder.
///
/// Every finite space is Alexandrov, so each point x has a smallest open
/// neighbourhood U_x; these are cached at construction and back the fast
/// membership test `is_open`.
class FiniteSpace {
 public:
  /// The empty space.
  FiniteSpace() : opens_{PointSet{}} {}

  /// Builds a space from a family already known to be a topology on n points.
  /// Use validate_topology for untrusted input.
  static FiniteSpace from_trusted(std::size_t n, std::vector<PointSet> opens) {
    FiniteSpace x;
    x.n_ = n;
    std::sort(opens.begin(), opens.end(), CanonicalSetOrder{});
    opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
    x.opens_ = std::move(opens);
    x.nbhd_.assign(n, PointSet::full(n));
    for (auto u : x.opens_) {
      u.for_each([&](std::size_t p) { x.nbhd_[p] &= u; });
    }
    x.point_closure_.assign(n, PointSet{});
    for (std::size_t p = 0; p < n; ++p) {
      x.nbhd_[p].for_each([&](std::size_t q) { x.point_closure_[q].insert(p); });
    }
    return x;
  }

  std::size_t size() const { return n_; }
  PointSet ground() const { return PointSet::full(n_); }
  std::span<const PointSet> opens() const { return opens_; }
  std::size_t open_count() const { return opens_.size(); }

  /// Smallest open set containing x.
  PointSet neighbourhood(std::size_t x) const { return nbhd_.at(x); }
  /// Closure of the singleton {x}.
  PointSet point_closure(std::size_t x) const { return point_closure_.at(x); }

  bool is_open(PointSet s) const {
    if (!s.subset_of(ground())) return false;
    bool ok = true;
    s.for_each([&](std::size_t x) { ok = ok && nbhd_[x].subset_of(s); });
    return ok;
  }
  bool is_closed(PointSet s) const { return s.subset_of(ground()) && is_open(ground() - s); }

  /// Index of an open set within opens(), or nullopt.
  std::optional<std::size_t> open_index(PointSet s) const {
    auto it = std::lower_bound(opens_.begin(), opens_.end(), s, CanonicalSetOrder{});
    if (it == opens_.end() || *it != s) return std::nullopt;
    return static_cast<std::size_t>(it - opens_.begin());
  }

  bool has_labels() const { return !labels_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }
  /// Display name; unlabelled points are numbered from 1.
  std::string label(std::size_t x) const {
    return labels_.empty() ? std::to_string(x + 1) : labels_.at(x);
  }

  /// Copy of this space carrying display labels (must be unique, one per point).
  FiniteSpace with_labels(std::vector<std::string> labels) const {
    if (!labels.empty()) {
      if (labels.size() != n_) {
        throw Error(ErrorKind::InvalidInput, "label count does not match space size");
      }
      std::unordered_set<std::string> seen(labels.begin(), labels.end());
      if (seen.size() != labels.size()) throw Error(ErrorKind::InvalidInput, "labels must be unique");
    }
    FiniteSpace copy = *this;
    copy.labels_ = std::move(labels);
    return copy;
  }

  /// Spaces compare equal when their open families agree; labels are ignored.
  bool operator==(const FiniteSpace& o) const { return n_ == o.n_ && opens_ == o.opens_; }

 private:
  std::size_t n_ = 0;
  std::vector<PointSet> opens_;
  std::vector<PointSet> nbhd_;
  std::vector<PointSet> point_closure_;
  std::vector<std::string> labels_;
};

/// Checks that `family` is a topology on n points and returns the space.
/// Duplicates are removed; the first failing axiom is reported with a witness.
inline FiniteSpace validate_topology(std::size_t n, std::vector<PointSet> family) {
  if (n > kMaxPoints) {
    throw Error(ErrorKind::CapExceeded, "spaces are limited to " + std::to_string(kMaxPoints) + " points");
  }
  const PointSet ground = PointSet::full(n);
  for (auto s : family) {
    if (!s.subset_of(ground)) throw Error(ErrorKind::InvalidInput, "open set mentions a point outside the space", {s});
  }
  std::sort(family.begin(), family.end(), CanonicalSetOrder{});
  family.erase(std::unique(family.begin(), family.end()), family.end());
  std::unordered_set<PointSet> members(family.begin(), family.end());
  if (!members.contains(PointSet{})) throw Error(ErrorKind::MissingEmpty, "the empty set is not open");
  if (!members.contains(ground)) throw Error(ErrorKind::MissingFull, "the whole space is not open");
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      if (!members.contains(family[i] | family[j])) {
        throw Error(ErrorKind::NotClosedUnderUnion, "union of two opens is not open", {family[i], family[j]});
      }
    }
  }
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      if (!members.contains(family[i] & family[j])) {
        throw Error(ErrorKind::NotClosedUnderIntersection, "intersection of two opens is not open",
                    {family[i], family[j]});
      }
    }
  }
  return FiniteSpace::from_trusted(n, std::move(family));
}

/// A reflexive transitive relation; row x holds the up-set {y : x <= y}.
class Preorder {
 public:
  Preorder() = default;

  /// The discrete order (equality) on n points.
  explicit Preorder(std::size_t n) : n_(n), up_(n) {
    if (n > kMaxPoints) throw Error(ErrorKind::CapExceeded, "preorders are limited to 63 points");
    for (std::size_t x = 0; x < n; ++x) up_[x] = PointSet::singleton(x);
  }

  /// Validates that `up` (row x = {y : x <= y}) is reflexive and transitive.
  static Preorder from_rows(std::vector<PointSet> up) {
    Preorder p(up.size());
    for (std::size_t x = 0; x < up.size(); ++x) {
      if (!up[x].subset_of(PointSet::full(up.size()))) {
        throw Error(ErrorKind::InvalidInput, "relation mentions a point outside the preorder");
      }
      if (!up[x].contains(x)) throw Error(ErrorKind::InvalidPreorder, "relation is not reflexive");
    }
    for (std::size_t x = 0; x < up.size(); ++x) {
      up[x].for_each([&](std::size_t y) {
        if (!up[y].subset_of(up[x])) {
          throw Error(ErrorKind::InvalidPreorder, "relation is not transitive",
                      {PointSet::singleton(x), PointSet::singleton(y)});
        }
      });
    }
    p.up_ = std::move(up);
    return p;
  }

  /// Reflexive-transitive closure of the generating pairs (x, y) meaning x <= y.
  static Preorder generated_by(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
    Preorder p(n);
    for (auto [x, y] : pairs) {
      if (x >= n || y >= n) throw Error(ErrorKind::InvalidInput, "relation mentions a point outside the preorder");
      p.up_[x].insert(y);
    }
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        if (p.up_[i].contains(k)) p.up_[i] |= p.up_[k];
      }
    }
    return p;
  }

  std::size_t size() const { return n_; }
  bool leq(std::size_t x, std::size_t y) const { return up_[x].contains(y); }
  PointSet up(std::size_t x) const { return up_.at(x); }
  PointSet down(std::size_t y) const {
    PointSet d;
    for (std::size_t x = 0; x < n_; ++x) {
      if (up_[x].contains(y)) d.insert(x);
    }
    return d;
  }
  const std::vector<PointSet>& rows() const { return up_; }

  bool is_antisymmetric() const {
    for (std::size_t x = 0; x < n_; ++x) {
      bool ok = true;
      up_[x].for_each([&](std::size_t y) { ok = ok && (y == x || !up_[y].contains(x)); });
      if (!ok) return false;
    }
    return true;
  }

  bool operator==(const Preorder&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<PointSet> up_;
};

/// x <= y iff y lies in every open set containing x.
inline Preorder specialization_preorder(const FiniteSpace& x) {
  std::vector<PointSet> rows(x.size());
  for (std::size_t p = 0; p < x.size(); ++p) rows[p] = x.neighbourhood(p);
  return Preorder::from_rows(std::move(rows));
}

/// The topology whose opens are the up-closed subsets of `order`.
inline FiniteSpace alexandrov_topology(const Preorder& order) {
  std::unordered_set<PointSet> family{PointSet{}};
  for (std::size_t p = 0; p < order.size(); ++p) {
    const PointSet u = order.up(p);
    std::vector<PointSet> grown;
    for (auto s : family) {
      if (!u.subset_of(s)) grown.push_back(s | u);
    }
    family.insert(grown.begin(), grown.end());
    if (family.size() > kMaxOpens) {
      throw Error(ErrorKind::CapExceeded, "topology has too many open sets to materialise");
    }
  }
  return FiniteSpace::from_trusted(order.size(), {family.begin(), family.end()});
}

inline PointSet closure(const FiniteSpace& x, PointSet s) {
  PointSet c;
  s.for_each([&](std::size_t p) { c |= x.point_closure(p); });
  return c;
}

inline PointSet interior(const FiniteSpace& x, PointSet s) {
  PointSet in;
  for (std::size_t p = 0; p < x.size(); ++p) {
    if (x.neighbourhood(p).subset_of(s)) in.insert(p);
  }
  return in;
}

inline PointSet minimal_open_neighborhood(const FiniteSpace& x, std::size_t p) {
  if (p >= x.size()) throw Error(ErrorKind::InvalidInput, "point index out of range");
  return x.neighbourhood(p);
}

/// Smallest open set containing s.
inline PointSet up_closure(const FiniteSpace& x, PointSet s) {
  PointSet u;
  s.for_each([&](std::size_t p) { u |= x.neighbourhood(p); });
  return u;
}

/// A map between finite spaces whose preimages of opens are open.
class ContinuousMap {
 public:
  ContinuousMap() = default;

  ContinuousMap(FiniteSpace domain, FiniteSpace codomain, std::vector<std::size_t> assignment)
      : domain_(std::move(domain)), codomain_(std::move(codomain)), assignment_(std::move(assignment)) {
    if (assignment_.size() != domain_.size()) {
      throw Error(ErrorKind::InvalidInput, "assignment length does not match the domain size");
    }
    for (auto y : assignment_) {
      if (y >= codomain_.size()) throw Error(ErrorKind::InvalidInput, "assignment points outside the codomain");
    }
    for (auto u : codomain_.opens()) {
      if (!domain_.is_open(preimage(u))) {
        throw Error(ErrorKind::NotContinuous, "preimage of an open set is not open", {u});
      }
    }
  }

  const FiniteSpace& domain() const { return domain_; }
  const FiniteSpace& codomain() const { return codomain_; }
  const std::vector<std::size_t>& assignment() const { return assignment_; }
  std::size_t operator()(std::size_t p) const { return assignment_.at(p); }

  PointSet preimage(PointSet s) const {
    PointSet out;
    for (std::size_t p = 0; p < assignment_.size(); ++p) {
      if (s.contains(assignment_[p])) out.insert(p);
    }
    return out;
  }
  PointSet image(PointSet s) const {
    PointSet out;
    s.for_each([&](std::size_t p) { out.insert(assignment_[p]); });
    return out;
  }

  bool operator==(const ContinuousMap&) const = default;

 private:
  FiniteSpace domain_;
  FiniteSpace codomain_;
  std::vector<std::size_t> assignment_;
};

inline ContinuousMap identity_map(const FiniteSpace& x) {
  std::vector<std::size_t> a(x.size());
  for (std::size_t p = 0; p < a.size(); ++p) a[p] = p;
  return ContinuousMap(x, x, std::move(a));
}

inline ContinuousMap constant_map(const FiniteSpace& domain, const FiniteSpace& codomain, std::size_t value) {
  return ContinuousMap(domain, codomain, std::vector<std::size_t>(domain.size(), value));
}

/// g after f.
inline ContinuousMap compose(const ContinuousMap& g, const ContinuousMap& f) {
  if (!(f.codomain() == g.domain())) throw Error(ErrorKind::DomainMismatch, "maps are not composable");
  std::vector<std::size_t> a(f.domain().size());
  for (std::size_t p = 0; p < a.size(); ++p) a[p] = g(f(p));
  return ContinuousMap(f.domain(), g.codomain(), std::move(a));
}

/// Monotone for the specialisation preorders (the same as continuity for
/// Alexandrov spaces); checked directly on the preorders.
inline bool is_monotone(const FiniteSpace& domain, const FiniteSpace& codomain,
                        std::span<const std::size_t> assignment) {
  const auto src = specialization_preorder(domain);
  const auto dst = specialization_preorder(codomain);
  for (std::size_t p = 0; p < domain.size(); ++p) {
    for (std::size_t q = 0; q < domain.size(); ++q) {
      if (src.leq(p, q) && !dst.leq(assignment[p], assignment[q])) return false;
    }
  }
  return true;
}

/// Continuity checked against every open of the codomain, without throwing.
inline bool is_continuous(const FiniteSpace& domain, const FiniteSpace& codomain,
                          std::span<const std::size_t> assignment) {
  for (auto u : codomain.opens()) {
    PointSet pre;
    for (std::size_t p = 0; p < assignment.size(); ++p) {
      if (u.contains(assignment[p])) pre.insert(p);
    }
    if (!domain.is_open(pre)) return false;
  }
  return true;
}

}  // namespace fintop

#endif  // FINTOP_SPACE_HPP
