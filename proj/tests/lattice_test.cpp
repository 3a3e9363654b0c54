// SPDX-License-Identifier: Apache-2.0

#include "vabset/diophantine.hpp"
#include "vabset/lattice.hpp"

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace vabset {
namespace {

using testing::im;
using testing::iv;

TEST(SnfSolve, ScalarDivision) {
  auto sol = snf_solve(im({{2}}), iv({4}));
  ASSERT_TRUE(sol);
  EXPECT_EQ(sol->particular, iv({2}));
  EXPECT_TRUE(sol->kernel_basis.empty());
}

TEST(SnfSolve, SumMapKernel) {
  auto sol = snf_solve(im({{1, 1}}), iv({3}));
  ASSERT_TRUE(sol);
  EXPECT_EQ(dot(iv({1, 1}), sol->particular), 3);
  ASSERT_EQ(sol->kernel_basis.size(), 1u);
  const IntVec& k = sol->kernel_basis[0];
  EXPECT_TRUE(k == iv({1, -1}) || k == iv({-1, 1}));
}

TEST(SnfSolve, ParityInfeasible) { EXPECT_FALSE(snf_solve(im({{2}}), iv({3}))); }

TEST(SnfSolve, DimensionMismatch) {
  EXPECT_THROW(snf_solve(im({{1, 2}}), iv({1, 2})), DimensionMismatch);
}

TEST(SmithForm, FactorisationAndDivisibility) {
  testing::Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = rng.range(1, 4), n = rng.range(1, 4);
    IntMat a(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.range(-6, 6);
    const SmithForm s = smith_normal_form(a);
    EXPECT_EQ(s.u * a * s.v, s.d);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) EXPECT_EQ(s.d(i, j), 0);
    for (std::size_t i = 0; i + 1 < s.rank; ++i)
      EXPECT_EQ(s.diag(i + 1) % s.diag(i), 0);
    for (std::size_t i = 0; i < s.rank; ++i) EXPECT_GT(s.diag(i), 0);
    // Deterministic.
    EXPECT_EQ(smith_normal_form(a).u, s.u);
  }
}

TEST(SnfSolve, SolutionsPlusKernelCombinations) {
  testing::Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = rng.range(1, 3), n = rng.range(1, 3);
    IntMat a(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.range(-5, 5);
    const IntVec b = rng.vec(m, 6);
    auto sol = snf_solve(a, b);
    if (!sol) continue;
    IntVec x = sol->particular;
    for (const auto& k : sol->kernel_basis) {
      EXPECT_TRUE(is_zero(a * k));
      x = x + scale(Int(rng.range(-4, 4)), k);
    }
    EXPECT_EQ(a * x, b);
    EXPECT_EQ(sol->kernel_basis.size() + integer_rank(a), n);
  }
}

// Brute-force feasibility over a box; any solution found there must be
// reported by snf_solve, and every reported particular solution is exact.
TEST(SnfSolve, AgreesWithBruteForceSearch) {
  testing::Rng rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t m = rng.range(1, 2), n = rng.range(1, 3);
    IntMat a(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.range(-5, 5);
    for (int rep = 0; rep < 5; ++rep) {
      const IntVec b = rng.vec(m, 4);
      bool brute = false;
      IntVec x(n, Int(-8));
      for (;;) {
        if (a * x == b) {
          brute = true;
          break;
        }
        std::size_t i = 0;
        while (i < n && x[i] == 8) x[i++] = -8;
        if (i == n) break;
        x[i] += 1;
      }
      auto sol = snf_solve(a, b);
      if (brute) EXPECT_TRUE(sol.has_value());
      if (sol) EXPECT_EQ(a * sol->particular, b);
    }
  }
}

TEST(SnfSolve, KernelIsLatticeBasis) {
  // Every integer kernel vector found by search is an integer combination.
  auto sol = snf_solve(im({{2, 4, 6}}), iv({0}));
  ASSERT_TRUE(sol);
  ASSERT_EQ(sol->kernel_basis.size(), 2u);
  for (long x = -3; x <= 3; ++x)
    for (long y = -3; y <= 3; ++y)
      for (long z = -3; z <= 3; ++z) {
        IntVec v = iv({x, y, z});
        if (2 * x + 4 * y + 6 * z == 0) EXPECT_TRUE(in_lattice(sol->kernel_basis, v));
      }
}

TEST(Affine, Apply) {
  EXPECT_EQ(affine_apply(AffineMap::identity(2), iv({5, -2})), iv({5, -2}));
  EXPECT_EQ(affine_apply(AffineMap(im({{0, 1}, {1, 0}}), iv({0, 0})), iv({3, 7})),
            iv({7, 3}));
  EXPECT_EQ(affine_apply(AffineMap(im({{2}}), iv({1})), iv({3})), iv({7}));
  EXPECT_THROW(affine_apply(AffineMap::identity(2), iv({1})), DimensionMismatch);
}

TEST(Affine, Compose) {
  const AffineMap a(im({{2}}), iv({1}));
  EXPECT_EQ(affine_compose(AffineMap::identity(1), a), a);
  EXPECT_EQ(affine_compose(AffineMap::translation(iv({3, 1})),
                           AffineMap::translation(iv({-1, 4}))),
            AffineMap::translation(iv({2, 5})));
  const AffineMap c = affine_compose(a, AffineMap(im({{3}}), iv({0})));
  EXPECT_EQ(c.matrix(), im({{6}}));
  EXPECT_EQ(c.offset(), iv({1}));
  EXPECT_THROW(affine_compose(a, AffineMap::identity(2)), DimensionMismatch);
}

TEST(Affine, ComposeIsAssociative) {
  testing::Rng rng(3);
  auto random_map = [&](std::size_t t, std::size_t s) {
    IntMat m(t, s);
    for (std::size_t i = 0; i < t; ++i)
      for (std::size_t j = 0; j < s; ++j) m(i, j) = rng.range(-3, 3);
    return AffineMap(m, rng.vec(t, 3));
  };
  for (int trial = 0; trial < 50; ++trial) {
    const AffineMap a = random_map(2, 3), b = random_map(3, 1), c = random_map(1, 2);
    EXPECT_EQ(affine_compose(a, affine_compose(b, c)),
              affine_compose(affine_compose(a, b), c));
  }
}

TEST(WeightedNorm, Examples) {
  EXPECT_EQ(weighted_norm(WeightFn::unit(2), iv({3, -4})), 7);
  EXPECT_EQ(weighted_norm(WeightFn({Int(2), Int(3)}), iv({1, 1})), 5);
  EXPECT_EQ(weighted_norm(WeightFn({Int(2), Int(3)}), iv({0, 0})), 0);
  EXPECT_THROW(WeightFn({Int(0)}), PreconditionViolation);
}

TEST(WeightedNorm, TriangleInequality) {
  testing::Rng rng(9);
  const WeightFn w({Int(1), Int(2), Int(5)});
  for (int trial = 0; trial < 300; ++trial) {
    const IntVec x = rng.vec(3, 20), y = rng.vec(3, 20);
    EXPECT_LE(weighted_norm(w, x + y), weighted_norm(w, x) + weighted_norm(w, y));
  }
}

TEST(NonnegSolve, HilbertBasisOfSimpleSystem) {
  // x - y = 0 over N^2: Hilbert basis {(1,1)}.
  auto s = nonneg_solve(im({{1, -1}}), iv({0}));
  ASSERT_EQ(s.minimal.size(), 1u);
  EXPECT_EQ(s.minimal[0], iv({0, 0}));
  ASSERT_EQ(s.hilbert_basis.size(), 1u);
  EXPECT_EQ(s.hilbert_basis[0], iv({1, 1}));
}

TEST(NonnegSolve, InhomogeneousMinimalSolutions) {
  // 2x + 3y = 7: only (2,1).
  auto s = nonneg_solve(im({{2, 3}}), iv({7}));
  ASSERT_EQ(s.minimal.size(), 1u);
  EXPECT_EQ(s.minimal[0], iv({2, 1}));
  EXPECT_TRUE(s.hilbert_basis.empty());
}

TEST(NonnegSolve, CoversAllSolutionsInBox) {
  // x + y - 2z = 1: every solution in a box is minimal + Hilbert combination.
  const IntMat a = im({{1, 1, -2}});
  auto s = nonneg_solve(a, iv({1}));
  for (long x = 0; x <= 6; ++x)
    for (long y = 0; y <= 6; ++y)
      for (long z = 0; z <= 6; ++z) {
        if (x + y - 2 * z != 1) continue;
        bool covered = false;
        for (const auto& m : s.minimal)
          if (monoid_contains(s.hilbert_basis, iv({x, y, z}) - m)) covered = true;
        EXPECT_TRUE(covered);
      }
}

TEST(MonoidContains, Basics) {
  EXPECT_TRUE(monoid_contains({iv({2}), iv({3})}, iv({7})));
  EXPECT_FALSE(monoid_contains({iv({2}), iv({3})}, iv({1})));
  EXPECT_TRUE(monoid_contains({}, iv({0})));
  EXPECT_FALSE(monoid_contains({iv({1, 1})}, iv({1, 0})));
}

}  // namespace
}  // namespace vabset
