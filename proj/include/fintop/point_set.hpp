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

#ifndef FINTOP_POINT_SET_HPP
#define FINTOP_POINT_SET_HPP

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <vector>

namespace fintop {

/// Largest number of points a space may have; subsets are single words.
inline constexpr std::size_t kMaxPoints = 63;

/// A subset of {0, ..., n-1} stored as a bit mask.
class PointSet {
 public:
  constexpr PointSet() = default;
  constexpr explicit PointSet(std::uint64_t bits) : bits_(bits) {}
  constexpr PointSet(std::initializer_list<std::size_t> members) {
    for (auto m : members) bits_ |= std::uint64_t{1} << m;
  }

  static constexpr PointSet full(std::size_t n) {
    return PointSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }
  static constexpr PointSet singleton(std::size_t x) { return PointSet(std::uint64_t{1} << x); }
  static PointSet from_vector(const std::vector<std::size_t>& members) {
    PointSet s;
    for (auto m : members) s.insert(m);
    return s;
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool contains(std::size_t x) const { return (bits_ >> x) & 1U; }
  constexpr bool subset_of(PointSet other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool intersects(PointSet other) const { return (bits_ & other.bits_) != 0; }
  constexpr void insert(std::size_t x) { bits_ |= std::uint64_t{1} << x; }
  constexpr void erase(std::size_t x) { bits_ &= ~(std::uint64_t{1} << x); }
  /// Smallest member; undefined on the empty set.
  constexpr std::size_t first() const { return static_cast<std::size_t>(std::countr_zero(bits_)); }

  constexpr PointSet operator|(PointSet o) const { return PointSet(bits_ | o.bits_); }
  constexpr PointSet operator&(PointSet o) const { return PointSet(bits_ & o.bits_); }
  constexpr PointSet operator-(PointSet o) const { return PointSet(bits_ & ~o.bits_); }
  constexpr PointSet& operator|=(PointSet o) { bits_ |= o.bits_; return *this; }
  constexpr PointSet& operator&=(PointSet o) { bits_ &= o.bits_; return *this; }
  constexpr PointSet& operator-=(PointSet o) { bits_ &= ~o.bits_; return *this; }

  constexpr bool operator==(const PointSet&) const = default;

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    out.reserve(size());
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
      out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
    }
    return out;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
      f(static_cast<std::size_t>(std::countr_zero(b)));
    }
  }

 private:
  std::uint64_t bits_ = 0;
};

/// Canonical iteration order for families of sets: by cardinality, then by
/// numeric value of the mask.
struct CanonicalSetOrder {
  bool operator()(PointSet a, PointSet b) const {
    auto pa = a.size(), pb = b.size();
    return pa != pb ? pa < pb : a.bits() < b.bits();
  }
};

/// Packs the members of `s` that lie in `domain` into consecutive indices,
/// following the increasing order of `domain`.
inline PointSet compress(PointSet s, PointSet domain) {
  PointSet out;
  std::size_t k = 0;
  domain.for_each([&](std::size_t x) {
    if (s.contains(x)) out.insert(k);
    ++k;
  });
  return out;
}

/// Inverse of compress: spreads consecutive indices back over `domain`.
inline PointSet expand(PointSet s, PointSet domain) {
  PointSet out;
  std::size_t k = 0;
  domain.for_each([&](std::size_t x) {
    if (s.contains(k)) out.insert(x);
    ++k;
  });
  return out;
}

}  // namespace fintop

template <>
struct std::hash<fintop::PointSet> {
  std::size_t operator()(fintop::PointSet s) const noexcept {
    return std::hash<std::uint64_t>{}(s.bits());
  }
};

#endif  // FINTOP_POINT_SET_HPP
