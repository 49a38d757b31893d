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

#include <random>
#include <set>

#include <gtest/gtest.h>

#include "fintop/fintop.hpp"
#include "oracles.hpp"

using namespace fintop;

namespace {

PointSet S(std::initializer_list<std::size_t> xs) { return PointSet::from_vector(std::vector<std::size_t>(xs)); }

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InternalInconsistency;
}

}  // namespace

TEST(PointSet, BasicOperations) {
  const PointSet a = S({0, 2, 5});
  EXPECT_EQ(a.size(), 3u);
  EXPECT_TRUE(a.contains(2));
  EXPECT_FALSE(a.contains(1));
  EXPECT_TRUE(S({0, 5}).subset_of(a));
  EXPECT_EQ((a - S({2})).members(), (std::vector<std::size_t>{0, 5}));
  EXPECT_EQ(compress(S({2, 5}), a), S({1, 2}));
  EXPECT_EQ(expand(S({1, 2}), a), S({2, 5}));
  EXPECT_EQ(PointSet::full(63).size(), 63u);
}

TEST(ValidateTopology, ReportsFirstFailingAxiom) {
  EXPECT_EQ(kind_of([] { validate_topology(2, {S({0, 1})}); }), ErrorKind::MissingEmpty);
  EXPECT_EQ(kind_of([] { validate_topology(2, {S({}), S({0})}); }), ErrorKind::MissingFull);
  try {
    validate_topology(3, {S({}), S({0}), S({1}), S({0, 1, 2})});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotClosedUnderUnion);
    EXPECT_EQ(e.witness(), (std::vector<PointSet>{S({0}), S({1})}));
  }
  EXPECT_EQ(kind_of([] { validate_topology(3, {S({}), S({0, 1}), S({1, 2}), S({0, 1, 2})}); }),
            ErrorKind::NotClosedUnderIntersection);
  EXPECT_EQ(kind_of([] { validate_topology(64, {}); }), ErrorKind::CapExceeded);
  EXPECT_EQ(kind_of([] { validate_topology(2, {S({}), S({0, 3})}); }), ErrorKind::InvalidInput);
}

TEST(ValidateTopology, AgreesWithOracleOnAllFamiliesOfThreePoints) {
  // Every family of subsets of a 3-point set containing the empty set.
  for (std::uint64_t pick = 0; pick < (1u << 7); ++pick) {
    oracle::Family f{0};
    for (std::size_t s = 1; s < 8; ++s) {
      if ((pick >> (s - 1)) & 1U) f.push_back(s);
    }
    std::vector<PointSet> family;
    for (auto m : f) family.emplace_back(m);
    bool accepted = true;
    try {
      validate_topology(3, family);
    } catch (const Error&) {
      accepted = false;
    }
    EXPECT_EQ(accepted, oracle::is_topology(3, f)) << pick;
  }
}

TEST(Alexandrov, OpensAreUpSetsAndRoundTrip) {
  for (std::size_t n = 0; n <= 3; ++n) {
    for (const auto& le : oracle::all_preorders(n, false)) {
      std::vector<std::pair<std::size_t, std::size_t>> pairs;
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
          if (le[x][y]) pairs.emplace_back(x, y);
        }
      }
      const auto order = Preorder::generated_by(n, pairs);
      const auto x = alexandrov_topology(order);
      EXPECT_EQ(oracle::family_of(x), oracle::up_sets(n, le));
      EXPECT_EQ(specialization_preorder(x), order);
    }
  }
}

TEST(Preorder, RejectsNonTransitiveRows) {
  EXPECT_EQ(kind_of([] { Preorder::from_rows({S({0, 1}), S({1, 2}), S({2})}); }), ErrorKind::InvalidPreorder);
  EXPECT_EQ(kind_of([] { Preorder::from_rows({S({1})}); }), ErrorKind::InvalidInput);
  EXPECT_EQ(kind_of([] { Preorder::from_rows({S({1}), S({1})}); }), ErrorKind::InvalidPreorder);
}

TEST(Separation, T0SoberAndConnectedMatchOracle) {
  for (std::size_t n = 0; n <= 4; ++n) {
    for (const auto& f : oracle::all_topologies(n)) {
      const auto x = oracle::space_of(n, f);
      EXPECT_EQ(is_t0(x), oracle::is_t0(n, f));
      EXPECT_EQ(is_sober(x), oracle::is_sober(n, f));
      EXPECT_EQ(is_connected(x), oracle::is_connected(n, f));
      for (auto c : irreducible_closed_sets(x)) EXPECT_TRUE(oracle::irreducible(n, f, c.bits()));
    }
  }
}

TEST(Soberification, ChaoticSpaceCollapsesToPoint) {
  const auto s = soberification(spaces::chaotic(3));
  EXPECT_EQ(s.space.size(), 1u);
  EXPECT_EQ(s.iota.assignment(), (std::vector<std::size_t>{0, 0, 0}));
  EXPECT_TRUE(is_sober(s.space));
  EXPECT_EQ(s.space.label(0), "1|2|3");
}

TEST(Soberification, SoberSpaceIsUnchangedUpToHomeomorphism) {
  std::mt19937 rng(11);
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 1 + rng() % 5;
    const auto f = oracle::random_topology(n, rng, true);
    const auto s = soberification(oracle::space_of(n, f));
    EXPECT_TRUE(oracle::homeomorphic(n, f, s.space.size(), oracle::family_of(s.space)));
  }
}

TEST(Closure, ClosureAndInterior) {
  const auto x = spaces::sierpinski();
  EXPECT_EQ(closure(x, S({0})), S({0, 1}));
  EXPECT_EQ(closure(x, S({1})), S({1}));
  EXPECT_EQ(interior(x, S({1})), S({}));
  EXPECT_EQ(minimal_open_neighborhood(x, 1), S({0, 1}));
  EXPECT_EQ(x.point_closure(0), S({0, 1}));
}

TEST(LocallyClosed, MatchesDifferencesOfOpensAndConvexity) {
  std::mt19937 rng(5);
  for (int i = 0; i < 60; ++i) {
    const std::size_t n = 1 + rng() % 5;
    const auto f = oracle::random_topology(n, rng, i % 2 == 0);
    const auto x = oracle::space_of(n, f);
    std::set<std::uint64_t> expected;
    for (auto u : f) {
      for (auto v : f) {
        if ((v & ~u) == 0) expected.insert(u & ~v);
      }
    }
    std::set<std::uint64_t> got;
    for (const auto& lc : locally_closed_sets(x)) {
      got.insert(lc.carrier.bits());
      EXPECT_EQ(lc.open_part - lc.removed, lc.carrier);
      EXPECT_TRUE(is_convex(specialization_preorder(x), lc.carrier));
      EXPECT_FALSE(locally_closed_witnesses(x, lc.carrier).empty());
    }
    EXPECT_EQ(got, expected);
    for (std::uint64_t s = 0; s < (1u << n); ++s) {
      EXPECT_EQ(is_locally_closed(x, PointSet(s)).has_value(), expected.contains(s));
    }
  }
}

TEST(LocallyClosed, NotLocallyClosedError) {
  // In the 3-chain 1 -> 2 -> 3, the set {1, 3} is not convex.
  const auto x = spaces::chain(3);
  EXPECT_FALSE(is_locally_closed(x, S({0, 2})).has_value());
  EXPECT_EQ(kind_of([&] { require_locally_closed(x, S({0, 2})); }), ErrorKind::NotLocallyClosed);
}

TEST(ContinuousMaps, ContinuityCompositionAndOpenness) {
  const auto sier = spaces::sierpinski();
  const auto disc = spaces::discrete(2);
  // Identity on points from the discrete space to the Sierpinski space is
  // continuous, the reverse is not.
  EXPECT_NO_THROW(ContinuousMap(disc, sier, {0, 1}));
  EXPECT_EQ(kind_of([&] { ContinuousMap(sier, disc, {0, 1}); }), ErrorKind::NotContinuous);
  EXPECT_FALSE(is_open_map(ContinuousMap(disc, sier, {0, 1})));
  EXPECT_TRUE(is_open_map(identity_map(sier)));
  const auto c = constant_map(sier, disc, 1);
  EXPECT_EQ(compose(identity_map(disc), c), c);
  EXPECT_EQ(kind_of([&] { compose(c, c); }), ErrorKind::DomainMismatch);
  EXPECT_TRUE(preserves_all_infima(ContinuousMap(disc, sier, {0, 1})));
}

TEST(Structure, HasseLengthFiltrationOfNamedSpaces) {
  const auto s = spaces::sierpinski();
  EXPECT_EQ(hasse_diagram(s), (std::vector<HasseEdge>{{0, 1}}));
  EXPECT_EQ(length(s), 2u);
  const auto fs = canonical_filtration(s);
  EXPECT_EQ(fs.strata, (std::vector<PointSet>{S({0}), S({1})}));

  const auto nine = spaces::zigzag();
  EXPECT_EQ(hasse_diagram(nine), (std::vector<HasseEdge>{{0, 2}, {1, 2}, {1, 3}}));
  EXPECT_EQ(nine.neighbourhood(2), S({0, 1, 2}));
  EXPECT_EQ(nine.neighbourhood(3), S({1, 3}));
  EXPECT_EQ(length(nine), 2u);
  EXPECT_EQ(canonical_filtration(nine).strata, (std::vector<PointSet>{S({0, 1}), S({2, 3})}));

  EXPECT_EQ(length(spaces::chain(5)), 5u);
  EXPECT_EQ(length(spaces::discrete(4)), 1u);
  EXPECT_EQ(length(FiniteSpace{}), 0u);
  EXPECT_EQ(kind_of([] { length(spaces::chaotic(2)); }), ErrorKind::NotT0);
}

TEST(Structure, FiltrationStrataAreDiscreteAndLayersOpen) {
  std::mt19937 rng(17);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 1 + rng() % 6;
    const auto x = oracle::space_of(n, oracle::random_topology(n, rng, true));
    const auto f = canonical_filtration(x);
    EXPECT_EQ(f.strata.size(), length(x));
    EXPECT_EQ(f.layers.back(), x.ground());
    for (std::size_t j = 0; j < f.layers.size(); ++j) EXPECT_TRUE(x.is_open(f.layers[j]));
    for (auto s : f.strata) {
      // Discrete: no two points of a stratum are comparable.
      s.for_each([&](std::size_t p) { EXPECT_EQ(x.neighbourhood(p) & s, PointSet::singleton(p)); });
    }
  }
}

TEST(Structure, ComponentsAndDisjointUnion) {
  const auto u = disjoint_union(spaces::sierpinski(), spaces::point());
  EXPECT_EQ(connected_components(u), (std::vector<PointSet>{S({0, 1}), S({2})}));
  EXPECT_FALSE(is_connected(u));
  EXPECT_EQ(u.open_count(), 6u);
  EXPECT_FALSE(u.has_labels());  // both sides use the label "1"
}

TEST(Subspace, InducedTopologyAndInclusion) {
  const auto x = spaces::chain(3);
  const auto sub = subspace(x, S({0, 2}));
  EXPECT_EQ(sub.points, (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(oracle::family_of(sub.space), (oracle::Family{0, 1, 3}));
  EXPECT_NO_THROW(inclusion(x, sub));
}
