#include <gtest/gtest.h>

#include "tropint/linalg.hpp"

namespace tropint {
namespace {

IntVector iv(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

TEST(LinalgTest, RankAndNullspace) {
  const IntMatrix a = {iv({1, 1, 0}), iv({0, 1, 1}), iv({1, 2, 1})};
  EXPECT_EQ(linalg::rank(a), 2u);
  const RatMatrix ns = linalg::nullspace(a, 3);
  ASSERT_EQ(ns.size(), 1u);
  for (const auto& row : a) EXPECT_EQ(dot(row, ns[0]), 0);
}

TEST(LinalgTest, HermiteNormalForm) {
  const IntMatrix a = {iv({2, 4}), iv({3, 5})};
  const IntMatrix h = linalg::hermite(a);
  // The lattice generated has determinant |10 - 12| = 2.
  ASSERT_EQ(h.size(), 2u);
  EXPECT_EQ(abs(h[0][0] * h[1][1]), 2);
  EXPECT_EQ(linalg::determinant(a), -2);
}

TEST(LinalgTest, IntegerKernelIsSaturated) {
  const IntMatrix a = {iv({2, 2, 0})};
  const IntMatrix k = linalg::integer_kernel(a, 3);
  ASSERT_EQ(k.size(), 2u);
  for (const auto& v : k) EXPECT_EQ(dot(a[0], v), 0);
  // (1,-1,0) lies in the kernel and must be an integral combination.
  EXPECT_NO_THROW(linalg::lattice_coordinates(k, iv({1, -1, 0})));
}

TEST(LinalgTest, SaturationIndex) {
  EXPECT_EQ(linalg::saturation_index({iv({2, 0})}, 2), 2);
  EXPECT_EQ(linalg::saturation_index({iv({1, 1}), iv({1, -1})}, 2), 2);
  EXPECT_EQ(linalg::saturation_index({iv({1, 1, 1})}, 3), 1);
}

TEST(LinalgTest, SolveAndUnitPreimage) {
  const auto x = linalg::solve(IntMatrix{iv({1, 0}), iv({1, 1})}, iv({3, 2}));
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ((*x)[0], 1);
  EXPECT_EQ((*x)[1], 2);
  EXPECT_FALSE(linalg::solve(IntMatrix{iv({1, 1})}, iv({1, 0})).has_value());
  const IntVector a = iv({6, 10, 15});
  EXPECT_EQ(dot(a, linalg::unit_preimage(a)), 1);
}

}  // namespace
}  // namespace tropint
