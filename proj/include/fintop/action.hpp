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

#ifndef FINTOP_ACTION_HPP
#define FINTOP_ACTION_HPP

// Lattice model of an algebra over a finite space X: a finite space P standing
// for the primitive ideal space together with a continuous map psi: P -> X.
// The ideal attached to an open U of X is the open set psi^{-1}(U) of P, and
// the subquotient attached to a locally closed C is its support psi^{-1}(C).

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "fintop/error.hpp"
#include "fintop/lattice.hpp"
#include "fintop/space.hpp"
#include "fintop/topology.hpp"

namespace fintop {

class ActionOverX {
 public:
  ActionOverX() = default;
  explicit ActionOverX(ContinuousMap psi) : psi_(std::move(psi)) {}
  ActionOverX(FiniteSpace base, FiniteSpace prim, std::vector<std::size_t> psi)
      : psi_(std::move(prim), std::move(base), std::move(psi)) {}

  const FiniteSpace& base() const { return psi_.codomain(); }
  const FiniteSpace& prim() const { return psi_.domain(); }
  const ContinuousMap& psi() const { return psi_; }

  bool operator==(const ActionOverX&) const = default;

 private:
  ContinuousMap psi_;
};

/// The action of X on the ideals of P pulled back along psi: A(U) = psi^{-1}(U).
inline PointSet ideal(const ActionOverX& a, PointSet u) {
  if (!a.base().is_open(u)) throw Error(ErrorKind::NotOpen, "set is not open in the base space", {u});
  return a.psi().preimage(u);
}

/// Support of the subquotient A(C) over a locally closed C.
struct SubquotientSupport {
  LocallyClosedSet over;
  LocallyClosedSet carrier;
  /// Number of witness pairs (U, V) of `over` that were compared.
  std::size_t witnesses = 0;
};

/// Computes psi^{-1}(U) \ psi^{-1}(V) for every witness C = U \ V and checks
/// that all of them agree, together with the identity
/// psi^{-1}(U2) | psi^{-1}(V1) == psi^{-1}(U1) | psi^{-1}(V2) for every pair of
/// witnesses.
inline SubquotientSupport subquotient_support(const ActionOverX& a, PointSet c) {
  const auto over = require_locally_closed(a.base(), c);
  const auto witnesses = locally_closed_witnesses(a.base(), c);
  const auto& psi = a.psi();
  const PointSet expected = psi.preimage(over.open_part) - psi.preimage(over.removed);
  for (auto [u, v] : witnesses) {
    if (psi.preimage(u) - psi.preimage(v) != expected) {
      throw Error(ErrorKind::InternalInconsistency, "subquotient support depends on the witness", {u, v});
    }
  }
  for (auto [u1, v1] : witnesses) {
    for (auto [u2, v2] : witnesses) {
      if ((psi.preimage(u2) | psi.preimage(v1)) != (psi.preimage(u1) | psi.preimage(v2))) {
        throw Error(ErrorKind::InternalInconsistency, "witness sum identity fails", {u1, v1, u2, v2});
      }
    }
  }
  LocallyClosedSet carrier{expected, psi.preimage(over.open_part), psi.preimage(over.removed)};
  return {over, carrier, witnesses.size()};
}

/// Support psi^{-1}(C) without the witness audit.
inline PointSet support(const ActionOverX& a, PointSet c) { return a.psi().preimage(c); }

/// f_*(P, psi) = (P, f o psi). Checks (f_* A)(C) = A(f^{-1}(C)) for every
/// locally closed C of the target space.
inline ActionOverX pushforward(const ContinuousMap& f, const ActionOverX& a) {
  if (!(f.domain() == a.base())) throw Error(ErrorKind::DomainMismatch, "map does not start at the base space");
  ActionOverX out(compose(f, a.psi()));
  for (const auto& c : locally_closed_sets(f.codomain())) {
    const auto pushed = subquotient_support(out, c.carrier);
    if (pushed.carrier.carrier != support(a, f.preimage(c.carrier))) {
      throw Error(ErrorKind::InternalInconsistency, "pushforward support mismatch", {c.carrier});
    }
  }
  return out;
}

/// An action on a subspace, with the ambient indices of its points.
struct EmbeddedAction {
  ActionOverX action;
  std::vector<std::size_t> base_points;
  std::vector<std::size_t> prim_points;
};

/// Restriction to a locally closed Y: the prim space becomes the subspace
/// psi^{-1}(Y) and psi is corestricted to Y.
inline EmbeddedAction restrict_to(const ActionOverX& a, PointSet y) {
  require_locally_closed(a.base(), y);
  const auto base_sub = subspace(a.base(), y);
  const auto prim_sub = subspace(a.prim(), a.psi().preimage(y));
  std::vector<std::size_t> assignment;
  for (auto q : prim_sub.points) {
    const auto target = a.psi()(q);
    auto it = std::lower_bound(base_sub.points.begin(), base_sub.points.end(), target);
    assignment.push_back(static_cast<std::size_t>(it - base_sub.points.begin()));
  }
  return {ActionOverX(base_sub.space, prim_sub.space, std::move(assignment)), base_sub.points, prim_sub.points};
}

/// Extension i_Y^X along the inclusion of a subspace: pushforward along it.
inline ActionOverX extend_from(const ActionOverX& b, const FiniteSpace& ambient, PointSet y) {
  const auto sub = subspace(ambient, y);
  if (!(sub.space == b.base())) throw Error(ErrorKind::DomainMismatch, "action does not live on the given subspace");
  return pushforward(inclusion(ambient, sub), b);
}

/// i_x: the action of X on an algebra with spectrum P concentrated at x.
inline ActionOverX concentrated_at(const FiniteSpace& x, std::size_t point, const FiniteSpace& p) {
  return ActionOverX(constant_map(p, x, point));
}

/// psi is a homeomorphism: bijective and open.
inline bool is_tight(const ActionOverX& a) {
  const auto& psi = a.psi();
  if (a.prim().size() != a.base().size()) return false;
  std::vector<bool> hit(a.base().size(), false);
  for (auto y : psi.assignment()) {
    if (hit[y]) return false;
    hit[y] = true;
  }
  return is_open_map(psi);
}

inline PointSet fiber_support(const ActionOverX& a, std::size_t x) {
  if (x >= a.base().size()) throw Error(ErrorKind::InvalidInput, "point index out of range");
  return a.psi().preimage(PointSet::singleton(x));
}

/// P_Y = i_Y^X o r_X^Y: keeps the part of P over Y, still acted on by X.
inline EmbeddedAction p_functor(const ActionOverX& a, PointSet y) {
  require_locally_closed(a.base(), y);
  const auto prim_sub = subspace(a.prim(), a.psi().preimage(y));
  std::vector<std::size_t> assignment;
  for (auto q : prim_sub.points) assignment.push_back(a.psi()(q));
  EmbeddedAction out{ActionOverX(a.base(), prim_sub.space, std::move(assignment)), {}, {}};
  out.base_points.resize(a.base().size());
  for (std::size_t i = 0; i < out.base_points.size(); ++i) out.base_points[i] = i;
  out.prim_points = prim_sub.points;
  for (const auto& z : locally_closed_sets(a.base())) {
    const PointSet here = expand(support(out.action, z.carrier), prim_sub.carrier);
    if (here != support(a, y & z.carrier)) {
      throw Error(ErrorKind::InternalInconsistency, "P_Y support mismatch", {z.carrier});
    }
  }
  return out;
}

/// Candidate ideals A(U_x), one per point of a sober base space.
struct IdealAssignment {
  FiniteSpace base;
  std::vector<PointSet> values;
};

/// The ideals attached to the minimal neighbourhoods of an existing action.
inline IdealAssignment minimal_ideals(const ActionOverX& a) {
  IdealAssignment out{a.base(), {}};
  for (std::size_t x = 0; x < a.base().size(); ++x) out.values.push_back(ideal(a, a.base().neighbourhood(x)));
  return out;
}

/// Rebuilds an action from the ideals attached to minimal neighbourhoods.
/// Requires that the ideals cover P and that
///   a_x & a_y == union of a_z over z in U_x & U_y
/// for all x, y. Then U |-> union of a_x over x in U preserves joins and finite
/// meets and comes from a unique continuous map.
inline ActionOverX reconstruct(const IdealAssignment& assign, const FiniteSpace& p) {
  const auto& x = assign.base;
  if (assign.values.size() != x.size()) throw Error(ErrorKind::InvalidInput, "one ideal per base point is required");
  if (!is_sober(x)) throw Error(ErrorKind::NotSober, "base space is not sober");
  for (auto v : assign.values) {
    if (!p.is_open(v)) throw Error(ErrorKind::NotOpen, "assigned ideal is not open in P", {v});
  }
  PointSet cover;
  for (auto v : assign.values) cover |= v;
  if (cover != p.ground()) throw Error(ErrorKind::CoverFailure, "ideals do not cover P", {cover});
  auto generated = [&](PointSet u) {
    PointSet out;
    u.for_each([&](std::size_t z) { out |= assign.values[z]; });
    return out;
  };
  for (std::size_t a = 0; a < x.size(); ++a) {
    for (std::size_t b = 0; b < x.size(); ++b) {
      if ((assign.values[a] & assign.values[b]) != generated(x.neighbourhood(a) & x.neighbourhood(b))) {
        throw Error(ErrorKind::CompatibilityFailure, "ideal intersection is not generated by the common neighbourhood",
                    {PointSet::singleton(a), PointSet::singleton(b)});
      }
    }
  }
  auto source = open_set_lattice(x);
  std::vector<PointSet> table;
  for (auto u : source.elements()) table.push_back(generated(u));
  LatticeMap m(source, open_set_lattice(p), std::move(table));
  if (auto w = meet_failure(m)) throw Error(ErrorKind::MeetFailure, "generated map does not preserve finite meets", *w);
  return ActionOverX(lattice_map_to_continuous(m, x, p));
}

/// One condition on the ideals I_x = A(U_x) of a reconstructible action.
struct IdealConstraint {
  enum class Kind { Subset, Disjoint, Intersection, Cover };
  Kind kind;
  /// Subset: {x, y} for I_x in I_y. Disjoint: {x, y}. Intersection: {x, y}
  /// with I_x & I_y equal to the union over `rhs`. Cover: the points whose
  /// ideals must cover P.
  std::vector<std::size_t> lhs;
  std::vector<std::size_t> rhs;

  bool operator==(const IdealConstraint&) const = default;
};

/// The conditions checked by reconstruct, with the consequences of the others
/// removed: subsets only along covers not already forced by an intersection,
/// disjointness only for pairs not inside a larger disjoint pair, and the cover
/// condition only over points with maximal neighbourhoods. The reduced list
/// is equivalent to the full one.
inline std::vector<IdealConstraint> reconstruction_constraints(const FiniteSpace& x) {
  require_t0(x);
  using Kind = IdealConstraint::Kind;
  const std::size_t n = x.size();
  auto nb = [&](std::size_t p) { return x.neighbourhood(p); };
  // Points whose neighbourhoods are maximal inside w; they generate w.
  auto generators = [&](PointSet w) {
    std::vector<std::size_t> out;
    w.for_each([&](std::size_t z) {
      bool maximal = true;
      w.for_each([&](std::size_t o) { maximal = maximal && (o == z || !nb(z).subset_of(nb(o))); });
      if (maximal) out.push_back(z);
    });
    return out;
  };

  std::vector<IdealConstraint> intersections, disjoint, subsets;
  std::vector<std::pair<std::size_t, std::size_t>> implied_subsets;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const PointSet w = nb(a) & nb(b);
      if (w.empty() || nb(a).subset_of(nb(b)) || nb(b).subset_of(nb(a))) continue;
      const auto gens = generators(w);
      intersections.push_back({Kind::Intersection, {a, b}, gens});
      if (gens.size() == 1) {
        implied_subsets.emplace_back(gens[0], a);
        implied_subsets.emplace_back(gens[0], b);
      }
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (!(nb(a) & nb(b)).empty()) continue;
      bool dominated = false;
      for (std::size_t c = 0; c < n && !dominated; ++c) {
        for (std::size_t d = 0; d < n && !dominated; ++d) {
          if ((c == a && d == b) || (c == b && d == a) || !(nb(c) & nb(d)).empty()) continue;
          dominated = nb(a).subset_of(nb(c)) && nb(b).subset_of(nb(d));
        }
      }
      if (!dominated) disjoint.push_back({Kind::Disjoint, {a, b}, {}});
    }
  }
  for (const auto& e : hasse_diagram(x)) {
    // e.from lies in U_{e.to}: I_{e.from} is contained in I_{e.to}.
    const std::pair<std::size_t, std::size_t> s{e.from, e.to};
    if (std::find(implied_subsets.begin(), implied_subsets.end(), s) == implied_subsets.end()) {
      subsets.push_back({Kind::Subset, {e.from, e.to}, {}});
    }
  }
  std::vector<IdealConstraint> out;
  out.insert(out.end(), subsets.begin(), subsets.end());
  out.insert(out.end(), disjoint.begin(), disjoint.end());
  out.insert(out.end(), intersections.begin(), intersections.end());
  out.push_back({Kind::Cover, generators(x.ground()), {}});
  return out;
}

/// "I1⊆I3", "I1∩I4=∅", "I2=I3∩I4", "I3∪I4=all"; points named by label.
inline std::string to_string(const IdealConstraint& c, const FiniteSpace& x) {
  auto name = [&](std::size_t p) { return "I" + x.label(p); };
  auto joined = [&](const std::vector<std::size_t>& ps, const char* op) {
    std::string s;
    for (std::size_t i = 0; i < ps.size(); ++i) s += (i ? op : "") + name(ps[i]);
    return s;
  };
  using Kind = IdealConstraint::Kind;
  switch (c.kind) {
    case Kind::Subset: return name(c.lhs[0]) + "⊆" + name(c.lhs[1]);
    case Kind::Disjoint: return name(c.lhs[0]) + "∩" + name(c.lhs[1]) + "=∅";
    case Kind::Intersection:
      if (c.rhs.size() == 1) return name(c.rhs[0]) + "=" + joined(c.lhs, "∩");
      return joined(c.lhs, "∩") + "=" + joined(c.rhs, "∪");
    case Kind::Cover: return joined(c.lhs, "∪") + "=all";
  }
  return "";
}

struct StratumSupport {
  std::size_t level;  // 1-based
  SubquotientSupport support;
  /// psi^{-1}({x}) for each x in the stratum, in increasing order of x.
  std::vector<PointSet> fibers;
};

/// Supports of the subquotients of the canonical filtration. Each stratum
/// support splits into the fibres over its points, each relatively open in
/// what remains of P after removing the earlier layers.
inline std::vector<StratumSupport> filtration_of_action(const ActionOverX& a) {
  const auto filt = canonical_filtration(a.base());
  std::vector<StratumSupport> out;
  for (std::size_t j = 1; j < filt.layers.size(); ++j) {
    const PointSet stratum = filt.strata[j - 1];
    StratumSupport s{j, subquotient_support(a, stratum), {}};
    const PointSet rest = a.prim().ground() - a.psi().preimage(filt.layers[j - 1]);
    PointSet joined;
    stratum.for_each([&](std::size_t x) {
      const PointSet fib = fiber_support(a, x);
      if ((up_closure(a.prim(), fib) & rest) != fib) {
        throw Error(ErrorKind::InternalInconsistency, "fibre is not relatively open in its stratum", {fib});
      }
      joined |= fib;
      s.fibers.push_back(fib);
    });
    if (joined != s.support.carrier.carrier) {
      throw Error(ErrorKind::InternalInconsistency, "stratum support is not the union of its fibres");
    }
    out.push_back(std::move(s));
  }
  return out;
}

struct ActionReport {
  bool joins = false;
  bool meets = false;
  bool tight = false;
};

inline ActionReport check_action(const ActionOverX& a) {
  const auto m = continuous_to_lattice_map(a.psi());
  return {preserves_joins(m), preserves_finite_meets(m), is_tight(a)};
}

}  // namespace fintop

#endif  // FINTOP_ACTION_HPP
