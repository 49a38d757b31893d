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

#ifndef FINTOP_SPACES_HPP
#define FINTOP_SPACES_HPP

// Named small spaces used by the CLI, the tests and the examples.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "fintop/space.hpp"
#include "fintop/topology.hpp"

namespace fintop::spaces {

/// Labels "1", "2", ..., "n".
inline std::vector<std::string> numbered_labels(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back(std::to_string(i));
  return out;
}

/// Space from Hasse arrows: an arrow (a, b) drawn a -> b means b < a, so
/// U_a is contained in U_b.
inline FiniteSpace from_hasse(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& arrows) {
  std::vector<std::pair<std::size_t, std::size_t>> leq;
  for (auto [a, b] : arrows) leq.emplace_back(b, a);
  return alexandrov_topology(Preorder::generated_by(n, leq)).with_labels(numbered_labels(n));
}

inline FiniteSpace point() { return validate_topology(1, {PointSet{}, PointSet{0}}).with_labels({"1"}); }

inline FiniteSpace discrete(std::size_t n) {
  return alexandrov_topology(Preorder(n)).with_labels(numbered_labels(n));
}

/// Only the empty set and the whole space are open.
inline FiniteSpace chaotic(std::size_t n) {
  return validate_topology(n, {PointSet{}, PointSet::full(n)}).with_labels(numbered_labels(n));
}

/// Points 1, 2 with opens {}, {1}, {1,2}.
inline FiniteSpace sierpinski() { return from_hasse(2, {{0, 1}}); }

/// Chain 1 -> 2 -> ... -> n; point 1 is open and n is closed.
inline FiniteSpace chain(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> arrows;
  for (std::size_t i = 0; i + 1 < n; ++i) arrows.emplace_back(i, i + 1);
  return from_hasse(n, arrows);
}

/// 1 -> 3 <- 2 -> 4.
inline FiniteSpace zigzag() { return from_hasse(4, {{0, 2}, {1, 2}, {1, 3}}); }

}  // namespace fintop::spaces

#endif  // FINTOP_SPACES_HPP
