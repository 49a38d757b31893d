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

TEST(Enumeration, LabeledTopologyCountsMatchFamilyFiltering) {
  for (std::size_t n = 0; n <= 4; ++n) {
    std::set<oracle::Family> expected;
    for (const auto& f : oracle::all_topologies(n)) expected.insert(f);
    std::set<oracle::Family> got;
    for (const auto& x : enumerate_labeled_topologies(n)) got.insert(oracle::family_of(x));
    EXPECT_EQ(got, expected) << n;
  }
}

TEST(Enumeration, KnownCounts) {
  const std::size_t topologies[] = {1, 1, 4, 29, 355, 6942};
  const std::size_t posets[] = {1, 1, 3, 19, 219, 4231, 130023};
  for (std::size_t n = 0; n <= 5; ++n) EXPECT_EQ(enumerate_labeled_topologies(n).size(), topologies[n]);
  for (std::size_t n = 0; n <= 6; ++n) EXPECT_EQ(count_labeled_preorders(n, true), posets[n]);
  EXPECT_EQ(enumerate_labeled_t0(4).size(), 219u);
  for (const auto& x : enumerate_labeled_t0(4)) EXPECT_TRUE(is_t0(x));
}

TEST(Enumeration, Caps) {
  EXPECT_THROW(enumerate_labeled_topologies(6), Error);
  EXPECT_THROW(count_labeled_preorders(8, true), Error);
  EXPECT_THROW(census(7, false, false), Error);
}

TEST(CanonicalForm, EqualExactlyForHomeomorphicSpaces) {
  std::vector<oracle::Family> all = oracle::all_topologies(3);
  for (const auto& a : all) {
    for (const auto& b : all) {
      const bool same = canonical_form(oracle::space_of(3, a)) == canonical_form(oracle::space_of(3, b));
      EXPECT_EQ(same, oracle::homeomorphic(3, a, 3, b));
    }
  }
  std::mt19937 rng(3);
  const auto four = oracle::all_topologies(4);
  for (int i = 0; i < 3000; ++i) {
    const auto& a = four[rng() % four.size()];
    const auto& b = four[rng() % four.size()];
    EXPECT_EQ(are_homeomorphic(oracle::space_of(4, a), oracle::space_of(4, b)), oracle::homeomorphic(4, a, 4, b));
  }
}

TEST(CanonicalForm, InvariantUnderRelabellingAndDecodable) {
  std::mt19937 rng(8);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 1 + rng() % 6;
    const auto f = oracle::random_topology(n, rng, i % 2 == 0, 0.35);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    oracle::Family g;
    for (auto u : f) {
      oracle::Mask img = 0;
      for (std::size_t x = 0; x < n; ++x) {
        if (oracle::has(u, x)) img |= oracle::Mask{1} << perm[x];
      }
      g.push_back(img);
    }
    std::sort(g.begin(), g.end());
    const auto cf = canonical_form(oracle::space_of(n, f));
    EXPECT_EQ(cf, canonical_form(oracle::space_of(n, g)));
    const auto back = alexandrov_topology(decode(cf));
    EXPECT_TRUE(oracle::homeomorphic(n, f, back.size(), oracle::family_of(back)));
  }
}

TEST(Census, ClassCounts) {
  EXPECT_EQ(census(2, false, true).classes.size(), 2u);
  EXPECT_EQ(census(3, true, true).classes.size(), 3u);
  EXPECT_EQ(census(4, true, true).classes.size(), 10u);
  // Topologies up to homeomorphism: 1, 1, 3, 9, 33, 139; T0: 1, 1, 2, 5, 16, 63.
  const std::size_t all[] = {1, 1, 3, 9, 33, 139};
  const std::size_t t0[] = {1, 1, 2, 5, 16, 63};
  for (std::size_t n = 0; n <= 5; ++n) {
    EXPECT_EQ(census(n, false, false).classes.size(), all[n]) << n;
    EXPECT_EQ(census(n, false, true).classes.size(), t0[n]) << n;
  }
  EXPECT_EQ(census(4, false, false).labeled_count, 355u);
}

TEST(Census, ConnectedCountAgreesWithOracle) {
  for (std::size_t n = 1; n <= 4; ++n) {
    std::size_t expected = 0;
    for (const auto& f : oracle::all_topologies(n)) expected += oracle::is_connected(n, f) && oracle::is_t0(n, f);
    EXPECT_EQ(census(n, true, true).labeled_count, expected);
  }
}

TEST(Census, IndependentOfThreadCount) {
  const auto one = census(5, true, false, 1);
  for (std::size_t t : {2u, 3u, 8u}) {
    const auto many = census(5, true, false, t);
    EXPECT_EQ(many.labeled_count, one.labeled_count);
    EXPECT_EQ(many.classes, one.classes);
  }
}

TEST(Fixtures, DiagramsAreDistinctConnectedPosets) {
  const auto fx = connected_diagram_fixtures();
  ASSERT_EQ(fx.size(), 12u);
  for (std::size_t i = 0; i < fx.size(); ++i) {
    EXPECT_TRUE(is_t0(fx[i].space));
    EXPECT_TRUE(is_connected(fx[i].space));
    // The transcribed arrows are exactly the cover relations.
    std::vector<HasseEdge> arrows;
    for (auto [a, b] : fx[i].arrows) arrows.push_back({a, b});
    std::sort(arrows.begin(), arrows.end());
    EXPECT_EQ(hasse_diagram(fx[i].space), arrows) << fx[i].ordinal;
    for (std::size_t j = i + 1; j < fx.size(); ++j) {
      EXPECT_FALSE(oracle::homeomorphic(fx[i].space.size(), oracle::family_of(fx[i].space), fx[j].space.size(),
                                        oracle::family_of(fx[j].space)));
    }
  }
  // The seventh diagram is the diamond.
  EXPECT_EQ(length(fx[6].space), 3u);
}
