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

IntMatrix M(std::vector<std::vector<Integer>> rows, std::size_t cols_if_empty = 0) {
  return IntMatrix::from_rows(rows, cols_if_empty);
}

IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int bound) {
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<int>(rng() % (2 * bound + 1)) - bound;
  }
  return m;
}

std::vector<std::vector<Integer>> rows_of(const IntMatrix& m) {
  std::vector<std::vector<Integer>> out(m.rows(), std::vector<Integer>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  }
  return out;
}

const FGAbelianGroup Z = FGAbelianGroup::free(1);
const FGAbelianGroup Z2 = FGAbelianGroup::cyclic_product({2});

}  // namespace

TEST(Smith, KnownForms) {
  const auto s = smith_normal_form(M({{2, 0}, {0, 3}}));
  EXPECT_EQ(s.d, M({{1, 0}, {0, 6}}));
  EXPECT_EQ(smith_normal_form(IntMatrix::identity(3)).d, IntMatrix::identity(3));
  EXPECT_TRUE(smith_normal_form(IntMatrix(2, 3)).d.is_zero());
  EXPECT_EQ(smith_normal_form(IntMatrix(0, 0)).rank, 0u);
}

TEST(Smith, RandomMatricesAgreeWithDeterminantalDivisors) {
  std::mt19937 rng(51);
  for (int i = 0; i < 500; ++i) {
    const std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
    const auto a = random_matrix(rng, r, c, 9);
    const auto s = smith_normal_form(a);
    ASSERT_EQ(s.u * a * s.v, s.d);
    EXPECT_EQ(s.u * s.u_inv, IntMatrix::identity(r));
    EXPECT_EQ(abs(oracle::det(rows_of(s.u))), 1);
    EXPECT_EQ(abs(oracle::det(rows_of(s.v))), 1);
    std::vector<Integer> diag;
    for (std::size_t k = 0; k < std::min(r, c); ++k) {
      for (std::size_t l = 0; l < c; ++l) {
        if (l != k) {
          EXPECT_EQ(s.d(k, l), 0);
        }
      }
      if (s.diagonal(k) != 0) diag.push_back(s.diagonal(k));
    }
    EXPECT_EQ(diag, oracle::invariant_factors(a));
    EXPECT_EQ(diag.size(), s.rank);
  }
}

TEST(Smith, SolveAndKernel) {
  std::mt19937 rng(52);
  for (int i = 0; i < 200; ++i) {
    const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    const auto a = random_matrix(rng, r, c, 5);
    IntVector x(c);
    for (auto& v : x) v = static_cast<int>(rng() % 7) - 3;
    const auto b = a * x;
    const auto sol = solve_integer(a, b);
    ASSERT_TRUE(sol.has_value());
    EXPECT_EQ(a * *sol, b);
    for (const auto& k : integer_kernel(a)) EXPECT_EQ(a * k, IntVector(r));
    EXPECT_EQ(integer_kernel(a).size(), c - smith_normal_form(a).rank);
  }
  EXPECT_FALSE(solve_integer(M({{2}}), IntVector{1}).has_value());
}

TEST(Groups, Invariants) {
  const FGAbelianGroup g(2, M({{2}, {0}}));
  EXPECT_EQ(g.invariants().rank, 1u);
  EXPECT_EQ(g.invariants().torsion, std::vector<Integer>{2});
  EXPECT_EQ(describe(g.invariants()), "Z + Z/2");
  EXPECT_EQ(FGAbelianGroup::free(3).invariants().rank, 3u);
  EXPECT_TRUE(FGAbelianGroup(1, M({{1}})).is_zero());
  EXPECT_EQ(describe(FGAbelianGroup::zero().invariants()), "0");
  EXPECT_TRUE(FGAbelianGroup::cyclic_product({2, 3}).isomorphic_to(FGAbelianGroup::cyclic_product({6})));
  EXPECT_EQ(kind_of([] { FGAbelianGroup(2, M({{1}})); }), ErrorKind::InvalidInput);
}

TEST(Homs, KernelCokernelOfBasicMaps) {
  const GroupHom twice(Z, Z, M({{2}}));
  EXPECT_TRUE(kernel(twice).group.is_zero());
  EXPECT_TRUE(cokernel(twice).group.isomorphic_to(Z2));
  const auto zero = GroupHom::zero(FGAbelianGroup::free(2), Z2);
  EXPECT_TRUE(kernel(zero).group.isomorphic_to(FGAbelianGroup::free(2)));
  EXPECT_TRUE(cokernel(zero).group.isomorphic_to(Z2));
  const auto id = GroupHom::identity(FGAbelianGroup::cyclic_product({4}));
  EXPECT_TRUE(kernel(id).group.is_zero());
  EXPECT_TRUE(cokernel(id).group.is_zero());
  EXPECT_EQ(kind_of([] { GroupHom(Z2, Z, M({{1}})); }), ErrorKind::NotWellDefined);
  EXPECT_EQ(kind_of([] { GroupHom(Z, Z, M({{1, 1}})); }), ErrorKind::ShapeMismatch);
  EXPECT_EQ(kind_of([&] { compose(twice, zero); }), ErrorKind::NotComposable);
}

TEST(Homs, RankNullityOnRandomMaps) {
  std::mt19937 rng(53);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 1 + rng() % 4, m = 1 + rng() % 4;
    const GroupHom f(FGAbelianGroup::free(n), FGAbelianGroup::free(m), random_matrix(rng, m, n, 4));
    const auto k = kernel(f);
    const auto im = image(f);
    EXPECT_EQ(n, k.group.invariants().rank + im.group.invariants().rank);
    EXPECT_TRUE(compose(f, k.inclusion).is_zero());
    EXPECT_TRUE(compose(cokernel(f).projection, f).is_zero());
  }
}

TEST(Exactness, BasicExamples) {
  const GroupHom twice(Z, Z, M({{2}}));
  const auto zero = FGAbelianGroup::zero();
  EXPECT_TRUE(is_exact_at(GroupHom::zero(zero, Z), twice).exact);
  EXPECT_TRUE(is_exact_at(twice, GroupHom(Z, Z2, M({{1}}))).exact);
  const auto zz = GroupHom::zero(Z, Z);
  const auto r = is_exact_at(zz, zz);
  EXPECT_FALSE(r.exact);
  EXPECT_EQ(r.failure, "kernel");
  EXPECT_EQ(r.witness, IntVector{1});
  const auto c = is_exact_at(GroupHom::identity(Z), GroupHom::identity(Z));
  EXPECT_EQ(c.failure, "composite");
}

TEST(Exactness, AgreesWithElementEnumeration) {
  const auto fixtures = oracle::exactness_fixtures(80);
  std::size_t exact_count = 0;
  for (const auto& s : fixtures) {
    const auto a = s.a.presentation(), b = s.b.presentation(), c = s.c.presentation();
    const GroupHom f(a, b, oracle::to_int_matrix(s.f, b.generators(), a.generators()));
    const GroupHom g(b, c, oracle::to_int_matrix(s.g, c.generators(), b.generators()));
    const bool expected = oracle::exact_by_elements(s.a, s.b, s.c, s.f, s.g);
    EXPECT_EQ(is_exact_at(f, g).exact, expected);
    exact_count += expected;
    const auto [ker, img] = oracle::kernel_image_sizes(s.a, s.b, s.f);
    EXPECT_EQ(oracle::order_of(kernel(f).group.invariants()), ker);
    EXPECT_EQ(oracle::order_of(image(f).group.invariants()), img);
    EXPECT_EQ(oracle::order_of(cokernel(f).group.invariants()), s.b.order() / img);
  }
  EXPECT_GT(exact_count, 0u);
  EXPECT_LT(exact_count, fixtures.size());
}

TEST(SixTerm, Examples) {
  const auto zero = FGAbelianGroup::zero();
  const auto z = GroupHom::zero(zero, zero);
  EXPECT_TRUE(verify_six_term({{zero, zero, zero, zero, zero, zero}, {z, z, z, z, z, z}}).exact());

  const SixTermCycle cone{{zero, Z, Z, zero, zero, zero},
                          {GroupHom::zero(zero, Z), GroupHom::identity(Z), GroupHom::zero(Z, zero), z, z, z}};
  EXPECT_TRUE(verify_six_term(cone).exact());

  const GroupHom twice(Z, Z, M({{2}}));
  const auto wrap = kernel_cokernel_cycle(twice);
  EXPECT_TRUE(wrap.groups[3].isomorphic_to(Z2));
  EXPECT_TRUE(verify_six_term(wrap).exact());

  // Breaking one map is caught at the two adjacent nodes at most.
  auto broken = cone;
  broken.maps[1] = GroupHom::zero(Z, Z);
  const auto rep = verify_six_term(broken);
  EXPECT_FALSE(rep.exact());
  EXPECT_FALSE(rep.nodes[2].exact);

  auto bad = cone;
  bad.groups[0] = Z;
  EXPECT_EQ(kind_of([&] { verify_six_term(bad); }), ErrorKind::ShapeMismatch);
}

TEST(SixTerm, KernelCokernelCycleOfRandomHoms) {
  std::mt19937 rng(54);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 1 + rng() % 3, m = 1 + rng() % 3;
    const GroupHom f(FGAbelianGroup::free(n), FGAbelianGroup::free(m), random_matrix(rng, m, n, 5));
    EXPECT_TRUE(verify_six_term(kernel_cokernel_cycle(f)).exact());
  }
}

TEST(Datum, SierpinskiSplitDatumPasses) {
  const auto s = spaces::sierpinski();
  const GradedGroup zpt{Z, FGAbelianGroup::zero()};
  const auto d = split_datum(s, {zpt, zpt});
  EXPECT_TRUE(d.at(S({0, 1})).even.isomorphic_to(FGAbelianGroup::free(2)));
  const auto r = verify_datum(d);
  ASSERT_EQ(r.triangles.size(), 1u);
  EXPECT_TRUE(r.ok());
  EXPECT_FALSE(vanishing_propagation(d).applicable);
}

TEST(Datum, TorsionOverVanishingPointsFails) {
  const auto s = spaces::sierpinski();
  const auto zero = FGAbelianGroup::zero();
  FiltratedKDatum d{s, {}, {}};
  d.groups[S({0}).bits()] = {zero, zero};
  d.groups[S({1}).bits()] = {zero, zero};
  d.groups[S({0, 1}).bits()] = {Z2, zero};
  d.triangles.push_back({S({0}), S({0, 1}), {}});
  const auto r = verify_datum(d);
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.first_failure(), std::make_pair(S({0}), S({0, 1})));
  const auto v = vanishing_propagation(d);
  EXPECT_TRUE(v.applicable);
  EXPECT_FALSE(v.all_vanish);
  EXPECT_EQ(v.deviation, std::make_pair(S({0}), S({0, 1})));
}

TEST(Datum, ShapeErrors) {
  const auto s = spaces::sierpinski();
  auto d = split_datum(s, {GradedGroup{Z, Z}, GradedGroup{Z, Z}});
  auto missing = d;
  missing.triangles.clear();
  EXPECT_EQ(kind_of([&] { verify_datum(missing); }), ErrorKind::ShapeMismatch);
  auto dup = d;
  dup.triangles.push_back(dup.triangles.front());
  EXPECT_EQ(kind_of([&] { verify_datum(dup); }), ErrorKind::ShapeMismatch);
  auto no_group = d;
  no_group.groups.erase(S({1}).bits());
  EXPECT_EQ(kind_of([&] { verify_datum(no_group); }), ErrorKind::ShapeMismatch);
  const auto c = spaces::chain(3);
  auto not_lc = split_datum(c, std::vector<GradedGroup>(3, GradedGroup{Z, Z}));
  not_lc.groups[S({0, 2}).bits()] = {Z, Z};
  EXPECT_EQ(kind_of([&] { verify_datum(not_lc); }), ErrorKind::ShapeMismatch);
}

TEST(Datum, SplitDataOverRandomPosetsAreExact) {
  std::mt19937 rng(55);
  for (int i = 0; i < 30; ++i) {
    const std::size_t n = 1 + rng() % 4;
    const auto x = oracle::space_of(n, oracle::random_topology(n, rng, true));
    std::vector<GradedGroup> pts;
    for (std::size_t p = 0; p < n; ++p) {
      pts.push_back({FGAbelianGroup::cyclic_product({Integer(2 + rng() % 3)}), FGAbelianGroup::free(rng() % 2)});
    }
    EXPECT_TRUE(verify_datum(split_datum(x, pts)).ok());
    const auto zero = split_datum(x, std::vector<GradedGroup>(n));
    EXPECT_TRUE(verify_datum(zero).ok());
    const auto v = vanishing_propagation(zero);
    EXPECT_TRUE(v.applicable && v.all_vanish);
    EXPECT_EQ(v.derivation.size(), zero.groups.size());
  }
}

TEST(TwoPoint, BasicExamples) {
  const auto zero_sq = two_point_sequence(GroupHom::zero(Z, Z2), GroupHom::zero(Z2, Z), GroupHom::zero(Z, Z),
                                          GroupHom::zero(Z, Z));
  EXPECT_TRUE(zero_sq.kernel.isomorphic_to(Z));
  EXPECT_TRUE(zero_sq.cokernel.isomorphic_to(Z));
  ASSERT_TRUE(zero_sq.middle.has_value());
  EXPECT_TRUE(zero_sq.middle->isomorphic_to(FGAbelianGroup::free(2)));

  const GroupHom twice(Z, Z, M({{2}}));
  const auto r = two_point_sequence(twice, GroupHom::identity(Z), twice, GroupHom::identity(Z));
  EXPECT_EQ(r.delta.matrix(), M({{2}}));
  EXPECT_TRUE(r.kernel.is_zero());
  EXPECT_TRUE(r.cokernel.isomorphic_to(Z2));
  ASSERT_TRUE(r.middle.has_value());
  EXPECT_TRUE(r.middle->isomorphic_to(Z2));

  const auto amb = two_point_sequence(GroupHom::zero(Z2, Z), GroupHom::identity(Z), GroupHom::zero(Z2, Z),
                                      GroupHom::identity(Z));
  EXPECT_TRUE(amb.kernel.isomorphic_to(Z2));
  EXPECT_FALSE(amb.middle.has_value());
  EXPECT_EQ(amb.note, "ExtensionAmbiguous");

  EXPECT_EQ(kind_of([&] { two_point_sequence(twice, GroupHom::identity(Z), GroupHom::identity(Z), GroupHom::identity(Z)); }),
            ErrorKind::SquareNotCommuting);
  EXPECT_EQ(kind_of([&] { two_point_sequence(twice, GroupHom::identity(Z2), twice, GroupHom::identity(Z)); }),
            ErrorKind::ShapeMismatch);
}
