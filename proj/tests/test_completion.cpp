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

// f(U) = union of r(V) over nonempty opens V inside U, f(X) = P.
OpenMap random_monotone(const FiniteSpace& x, const FiniteSpace& p, std::mt19937& rng) {
  const auto xo = x.opens();
  const auto po = p.opens();
  std::vector<PointSet> r;
  for (std::size_t i = 0; i < xo.size(); ++i) r.push_back(rng() % 3 == 0 ? po[rng() % po.size()] : PointSet{});
  OpenMap f(xo.size());
  for (std::size_t i = 0; i < xo.size(); ++i) {
    for (std::size_t j = 0; j < xo.size(); ++j) {
      if (!xo[j].empty() && xo[j].subset_of(xo[i])) f[i] |= r[j];
    }
    if (xo[i] == x.ground()) f[i] = p.ground();
  }
  return f;
}

}  // namespace

TEST(Completion, DiscreteTwoPointSpace) {
  const auto c = build_yprime(spaces::discrete(2));
  EXPECT_EQ(c.space.size(), 4u);
  EXPECT_EQ(c.space.open_count(), 6u);
  // The point containing both singletons sits below the two singletons' points,
  // which sit below the point {X}.
  EXPECT_EQ(hasse_diagram(c.space).size(), 4u);
  EXPECT_EQ(length(c.space), 3u);
  const auto e = neighborhood_filter_embedding(c);
  EXPECT_TRUE(embedding_induces_topology(e));
  EXPECT_EQ(c.space.label(e(0)), "{1}");
}

TEST(Completion, EmbeddingInducesTopology) {
  std::mt19937 rng(41);
  for (int i = 0; i < 60; ++i) {
    const std::size_t n = 1 + rng() % 3;
    const auto x = oracle::space_of(n, oracle::random_topology(n, rng, false));
    if (x.open_count() > 6) continue;
    const auto c = build_yprime(x);
    EXPECT_TRUE(embedding_induces_topology(neighborhood_filter_embedding(c)));
    // Points are exactly the up-closed families with X and without the empty set.
    std::size_t expected = 0;
    const auto opens = x.opens();
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << opens.size()); ++m) {
      bool ok = true;
      for (std::size_t a = 0; a < opens.size(); ++a) {
        const bool in_a = (m >> a) & 1U;
        if (opens[a].empty() && in_a) ok = false;
        if (opens[a] == x.ground() && !in_a) ok = false;
        for (std::size_t b = 0; b < opens.size() && in_a; ++b) {
          if (opens[a].subset_of(opens[b]) && !((m >> b) & 1U)) ok = false;
        }
      }
      expected += ok;
    }
    EXPECT_EQ(c.space.size(), expected);
  }
}

TEST(Completion, DiscontinuousRoundTrip) {
  std::mt19937 rng(42);
  for (int i = 0; i < 150; ++i) {
    const std::size_t nx = 1 + rng() % 3, np = 1 + rng() % 4;
    const auto x = oracle::space_of(nx, oracle::random_topology(nx, rng, false));
    const auto p = oracle::space_of(np, oracle::random_topology(np, rng, false));
    const auto c = build_yprime(x);
    const auto f = random_monotone(x, p, rng);
    const auto a = from_discontinuous(c, p, f);
    EXPECT_EQ(to_discontinuous(c, a), f);
  }
}

TEST(Completion, ContinuousActionsFactorThroughTheEmbedding) {
  std::mt19937 rng(43);
  for (int i = 0; i < 100; ++i) {
    const std::size_t nx = 1 + rng() % 3, np = 1 + rng() % 4;
    const auto fx = oracle::random_topology(nx, rng, false);
    const auto fp = oracle::random_topology(np, rng, false);
    const auto x = oracle::space_of(nx, fx);
    const ContinuousMap psi(oracle::space_of(np, fp), x, oracle::random_continuous(np, fp, nx, fx, rng));
    const auto c = build_yprime(x);
    OpenMap f;
    for (auto u : x.opens()) f.push_back(psi.preimage(u));
    const auto a = from_discontinuous(c, psi.domain(), f);
    EXPECT_EQ(a.psi(), compose(neighborhood_filter_embedding(c), psi));
  }
}

TEST(Completion, RejectsBadOpenMaps) {
  const auto x = spaces::sierpinski();
  const auto p = spaces::discrete(2);
  const auto c = build_yprime(x);
  // Opens of the Sierpinski space in canonical order: {}, {0}, {0, 1}.
  EXPECT_EQ(kind_of([&] { from_discontinuous(c, p, {S({0}), S({0}), S({0, 1})}); }), ErrorKind::BadEndpoints);
  EXPECT_EQ(kind_of([&] { from_discontinuous(c, p, {S({}), S({0}), S({0})}); }), ErrorKind::BadEndpoints);
  EXPECT_EQ(kind_of([&] { from_discontinuous(c, spaces::sierpinski(), {S({}), S({1}), S({0, 1})}); }),
            ErrorKind::NotOpen);
  const auto d = build_yprime(spaces::chain(3));
  // chain(3) opens: {}, {0}, {0, 1}, X; shrinking from {0} to {0, 1} breaks monotonicity.
  EXPECT_EQ(kind_of([&] { from_discontinuous(d, p, {S({}), S({0, 1}), S({0}), S({0, 1})}); }), ErrorKind::NotMonotone);
  EXPECT_EQ(kind_of([&] { from_discontinuous(c, p, {S({})}); }), ErrorKind::InvalidInput);
}

TEST(Completion, FullPowerSetAndCaps) {
  const auto y = build_full_y(spaces::sierpinski());
  EXPECT_EQ(y.space.size(), 8u);
  EXPECT_TRUE(embedding_induces_topology(neighborhood_filter_embedding(y)));
  EXPECT_EQ(kind_of([] { build_full_y(spaces::discrete(3)); }), ErrorKind::CapExceeded);
  EXPECT_EQ(kind_of([] { build_yprime(spaces::discrete(5)); }), ErrorKind::CapExceeded);
}

TEST(Completion, EquivarianceOnBaseMatchesCompletion) {
  std::mt19937 rng(44);
  for (int i = 0; i < 100; ++i) {
    const std::size_t nx = 1 + rng() % 3, np = 1 + rng() % 3;
    const auto x = oracle::space_of(nx, oracle::random_topology(nx, rng, false));
    const auto fp = oracle::random_topology(np, rng, false);
    const auto p = oracle::space_of(np, fp);
    const auto c = build_yprime(x);
    const auto a = from_discontinuous(c, p, random_monotone(x, p, rng));
    const auto b = from_discontinuous(c, p, random_monotone(x, p, rng));
    const auto g = continuous_to_lattice_map(ContinuousMap(p, p, oracle::random_continuous(np, fp, np, fp, rng)));
    const auto r = check_equivariance(c, a, b, g);
    EXPECT_EQ(r.on_base, r.on_completion);
    const auto self = check_equivariance(c, a, a, continuous_to_lattice_map(identity_map(p)));
    EXPECT_TRUE(self.on_base && self.on_completion);
  }
}
