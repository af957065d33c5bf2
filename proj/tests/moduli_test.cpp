#include <gtest/gtest.h>

#include <functional>
#include <set>

#include "oracles.hpp"

using namespace tropint;

TEST(Moduli, TreeOracleCounts) {
  EXPECT_EQ(oracle::splits(5).size(), 10u);
  EXPECT_EQ(oracle::trees(5).size(), 15u);
  EXPECT_EQ(oracle::trees(6).size(), 105u);
}

TEST(Moduli, MapIsLatticeIsomorphism) {
  for (int n : {4, 5, 6}) {
    const ModuliModel model = moduli_mn(n);
    EXPECT_EQ(abs(model.determinant), 1) << n;
    EXPECT_EQ(model.quotient_fan.dim(), n - 3);
  }
}

TEST(Moduli, FlatRaysMapToSplitSums) {
  const int n = 5;
  const ModuliModel model = moduli_mn(n);
  const auto edges = complete_graph_edges(n - 1);
  for (SubsetMask f : model.graph.flats()) {
    IntVector v(edges.size(), 0);
    for (int k : elements_of(f)) v[k] = -1;
    // Components of the flat with at least one edge.
    IntVector expected(model.target.quotient_dim(), 0);
    std::vector<int> comp(n - 1);
    for (int i = 0; i < n - 1; ++i) comp[i] = i;
    std::function<int(int)> find = [&](int x) { return comp[x] == x ? x : comp[x] = find(comp[x]); };
    for (int k : elements_of(f)) comp[find(edges[k].u)] = find(edges[k].v);
    for (int root = 0; root < n - 1; ++root) {
      SubsetMask s = 0;
      for (int i = 0; i < n - 1; ++i)
        if (find(i) == root) s |= SubsetMask{1} << i;
      if (popcount(s) >= 2) expected = add(expected, model.target.project(split_vector(n, s)));
    }
    // f(V_F) equals Σ M_{S_t} modulo Im φ_n.
    EXPECT_EQ(model.target.project(tropint::apply(model.f_tilde, v)), expected) << f;
  }
}

TEST(Moduli, ImageIsTreeSpace) {
  for (int n : {4, 5}) {
    const ModuliModel model = moduli_mn(n);
    EXPECT_TRUE(is_balanced(model.image));
    EXPECT_TRUE(cycle_equals(model.image, oracle::tree_fan(model))) << n;
  }
}

TEST(Moduli, FiveMarkedPointsRefinement) {
  const ModuliModel model = moduli_mn(5);
  EXPECT_EQ(model.quotient_fan.facets().size(), 18u);
  std::set<IntVector> rays;
  for (const auto& [c, w] : model.quotient_fan.facets())
    for (const auto& r : c.rays()) rays.insert(r);
  EXPECT_EQ(rays.size(), 13u);
  std::set<IntVector> tree_rays;
  for (SubsetMask s : oracle::splits(5)) tree_rays.insert(primitive(model.lambda_coordinates(split_vector(5, s))));
  int extra = 0;
  for (const auto& r : rays) extra += tree_rays.count(primitive(tropint::apply(model.map, r))) ? 0 : 1;
  EXPECT_EQ(extra, 3);
}

TEST(Moduli, LabelledModelIsProductWithAmbient) {
  const ModuliLabModel lab = moduli_mlab(2, 2, 1);
  const ModuliModel m4 = moduli_mn(4);
  FanCycle line(1, 1);
  line.add(Cone(1, {}, {{1}}), 1);
  EXPECT_TRUE(cycle_equals(lab.fan, cross_product(m4.quotient_fan, line)));
  const ModuliLabModel flat = moduli_mlab(3, 2, 0);
  EXPECT_TRUE(cycle_equals(flat.fan, moduli_mn(5).quotient_fan));
}

TEST(Moduli, RejectsOutOfRange) {
  EXPECT_THROW(moduli_mn(3), Error);
  EXPECT_THROW(moduli_mn(8), Error);
}

TEST(QuotientIntersection, FreeCuttersMatchDiagonalFunctions) {
  const Matroid m = uniform(3, 3);
  const PLFunction f = PLFunction::max_of({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  const PLFunction g = PLFunction::max_of({{1, 0, 0}, {0, 1, 0}});
  const FanCycle r3 = to_fan(bergman_fan(m));
  const FanCycle c = divisor(f, r3), d = divisor(g, r3);
  const BraidCycle braid = intersect_on_matroid(m, to_braid(c), to_braid(d));
  EXPECT_TRUE(cycle_equals(intersect_on_matroid(m, c, d), to_fan(braid)));
}

TEST(QuotientIntersection, DiagonalCutsLineality) {
  // Δ_{B/L} · (C × D) = Δ_{C·D} on B(U33)/L = R^2 with two tropical lines.
  const Matroid m = uniform(3, 3);
  const LinealityQuotient q(3, {IntVector(3, 1)});
  const FanCycle b = q.quotient(to_fan(bergman_fan(m)));
  const Matroid mm = direct_sum(m, m);
  IntVector l1(6, 0), l2(6, 0);
  for (int i = 0; i < 3; ++i) l1[i] = l2[i + 3] = 1;
  const LinealityQuotient qq(6, {l1, l2});
  ASSERT_EQ(qq.quotient_dim(), 4);

  const FanCycle c = divisor(PLFunction::max_of({{0, 0}, {1, 0}, {0, 1}}), b);
  const FanCycle d = divisor(PLFunction::max_of({{0, 0}, {1, 0}, {1, 1}}), b);
  const FanCycle cd = intersect_mod_lineality(m, q, c, d);
  ASSERT_EQ(cd.dim(), 0);
  // Fan displacement by hand: D + (0.3, 0.1) meets C in two points of multiplicity 1.
  EXPECT_EQ(degree_zero_dim(cd), 2);
  EXPECT_EQ(degree_zero_dim(intersect_mod_lineality(m, q, c, c)), 1);

  IntMatrix diag(4, IntVector(2, 0));
  for (int i = 0; i < 2; ++i) diag[i][i] = diag[i + 2][i] = 1;
  const FanCycle delta = push_forward(diag, b);
  const FanCycle lhs = intersect_mod_lineality(mm, qq, delta, cross_product(c, d));
  EXPECT_TRUE(cycle_equals(lhs, push_forward(diag, cd)));
}

TEST(QuotientIntersection, LinesInProjectivePlane) {
  // B(U34)/L: two distinct lines B(N)/L meet in a point of weight 1.
  const Matroid m = uniform(3, 4);
  const LinealityQuotient q(4, {IntVector(4, 1)});
  const auto line = [&](std::vector<SubsetMask> bases) {
    return q.quotient(to_fan(bergman_fan(from_bases(4, bases))));
  };
  const FanCycle a = line({0b0101, 0b0110, 0b1001, 0b1010});  // flats {1,2}, {3,4}
  const FanCycle b = line({0b0011, 0b0110, 0b1001, 0b1100});  // flats {1,3}, {2,4}
  const FanCycle ab = intersect_mod_lineality(m, q, a, b);
  EXPECT_EQ(ab.dim(), 0);
  EXPECT_EQ(degree_zero_dim(ab), 1);
  EXPECT_EQ(degree_zero_dim(intersect_mod_lineality(m, q, a, a)), -1);
  const FanCycle whole = q.quotient(to_fan(bergman_fan(m)));
  EXPECT_TRUE(cycle_equals(intersect_mod_lineality(m, q, a, whole), a));
}
