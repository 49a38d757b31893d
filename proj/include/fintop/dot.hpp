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

#ifndef FINTOP_DOT_HPP
#define FINTOP_DOT_HPP

#include <cstddef>
#include <string>

#include "fintop/space.hpp"
#include "fintop/topology.hpp"

namespace fintop {

namespace detail {

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

/// Hasse diagram of a T0 space in Graphviz syntax. Nodes are named by index
/// and labelled by display label; an edge a -> b means b lies below a, i.e.
/// U_a is contained in U_b.
inline std::string hasse_dot(const FiniteSpace& x, const std::string& name = "hasse") {
  std::string out = "digraph " + detail::dot_quote(name) + " {\n";
  out += "  node [shape=circle];\n";
  for (std::size_t p = 0; p < x.size(); ++p) {
    out += "  n" + std::to_string(p) + " [label=" + detail::dot_quote(x.label(p)) + "];\n";
  }
  for (const auto& e : hasse_diagram(x)) {
    out += "  n" + std::to_string(e.from) + " -> n" + std::to_string(e.to) + ";\n";
  }
  return out + "}\n";
}

}  // namespace fintop

#endif  // FINTOP_DOT_HPP
