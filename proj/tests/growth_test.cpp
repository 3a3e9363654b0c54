// SPDX-License-Identifier: Apache-2.0

#include "vabset/growth.hpp"

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace vabset {
namespace {

using testing::iv;
using R = ElementaryRegion;

CoefficientTable ints(std::initializer_list<long> xs) {
  CoefficientTable t;
  for (long x : xs) t.emplace_back(x);
  return t;
}

// Counts points of the box [-n, n]^k by weighted norm.
CoefficientTable box_count(const PolyhedralSet& p, const WeightFn& w, long n) {
  CoefficientTable t(n + 1, Int(0));
  for_each_box_point(testing::box_lo(p.dim(), n), testing::box_hi(p.dim(), n),
                     [&](const IntVec& z) {
                       Int norm = 0;
                       for (std::size_t i = 0; i < z.size(); ++i) norm += abs(z[i]) * w[i];
                       if (norm <= n && p.contains(z)) t[norm.get_ui()] += 1;
                     });
  return t;
}

SemilinearSet one(LinearSet l) {
  const std::size_t k = l.dim();
  return SemilinearSet(k, {std::move(l)});
}

TEST(GrowthEnumerate, Examples) {
  EXPECT_EQ(growth_enumerate(PolyhedralSet::full(1), WeightFn::unit(1), 3), ints({1, 2, 2, 2}));
  EXPECT_EQ(growth_enumerate(PolyhedralSet::full(2), WeightFn::unit(2), 3), ints({1, 4, 8, 12}));
  EXPECT_EQ(growth_enumerate(PolyhedralSet::of(1, {R::at_least(iv({1}), 1)}), WeightFn::unit(1), 4),
            ints({0, 1, 1, 1, 1}));
  EXPECT_EQ(growth_enumerate(PolyhedralSet::full(1), WeightFn::unit(1), 0), ints({1}));
}

TEST(GrowthEnumerate, AgreesWithBoxCount) {
  testing::Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t k = rng.range(1, 3);
    std::vector<Int> weights;
    for (std::size_t i = 0; i < k; ++i) weights.emplace_back(rng.range(1, 3));
    const WeightFn w(weights);
    const PolyhedralSet p = PolyhedralSet::of(
        k, {R::congruence(rng.vec(k, 3), rng.range(0, 2), 3), R::greater(rng.vec(k, 2), -2)});
    EXPECT_EQ(growth_enumerate(p, w, 7), box_count(p, w, 7));
  }
}

TEST(GrowthSeriesMonotoneLinear, Examples) {
  const auto half_line = growth_series_monotone_linear(LinearSet(iv({1}), {iv({1})}), WeightFn::unit(1));
  EXPECT_EQ(half_line.num, ints({0, 1}));
  EXPECT_EQ(half_line.den, ints({1, -1}));

  const auto quadrant =
      growth_series_monotone_linear(LinearSet(iv({0, 0}), {iv({1, 0}), iv({0, 1})}), WeightFn::unit(2));
  EXPECT_EQ(quadrant.num, ints({1}));
  EXPECT_EQ(quadrant.den, ints({1, -2, 1}));
  const auto coeffs = quadrant.expand_int(16);
  for (long n = 0; n < 16; ++n) EXPECT_EQ(coeffs[n], n + 1);
  EXPECT_EQ(CoefficientTable(coeffs.begin(), coeffs.end()),
            growth_enumerate(PolyhedralSet::of(2, {R::at_least(iv({1, 0}), 0), R::at_least(iv({0, 1}), 0)}),
                             WeightFn::unit(2), 15));

  const auto evens = growth_series_monotone_linear(LinearSet(iv({0}), {iv({2})}), WeightFn::unit(1));
  EXPECT_EQ(evens.num, ints({1}));
  EXPECT_EQ(evens.den, ints({1, 0, -1}));
}

TEST(GrowthSeriesMonotoneLinear, Preconditions) {
  EXPECT_THROW(growth_series_monotone_linear(LinearSet(iv({0}), {iv({1}), iv({-1})}), WeightFn::unit(1)),
               PreconditionViolation);
  EXPECT_THROW(growth_series_monotone_linear(LinearSet(iv({0}), {iv({1}), iv({2})}), WeightFn::unit(1)),
               PreconditionViolation);
  EXPECT_THROW(growth_series_monotone_linear(LinearSet(iv({0, 0}), {iv({1, 0})}), WeightFn::unit(1)),
               DimensionMismatch);
}

TEST(GrowthSeries, Examples) {
  const auto z1 = growth_series(SemilinearSet::full(1), WeightFn::unit(1));
  EXPECT_EQ(z1.num, ints({1, 1}));
  EXPECT_EQ(z1.den, ints({1, -1}));

  const auto z2 = growth_series(SemilinearSet::full(2), WeightFn::unit(2));
  EXPECT_EQ(z2.num, ints({1, 2, 1}));
  EXPECT_EQ(z2.den, ints({1, -2, 1}));
  const auto c = z2.expand_int(10);
  EXPECT_EQ(c[0], 1);
  for (long n = 1; n < 10; ++n) EXPECT_EQ(c[n], 4 * n);

  const auto evens = growth_series(
      poly_to_semilinear(PolyhedralSet::of(1, {R::congruence(iv({1}), 0, 2)})), WeightFn::unit(1));
  EXPECT_EQ(evens.num, ints({1, 0, 1}));
  EXPECT_EQ(evens.den, ints({1, 0, -1}));

  const auto none = growth_series(SemilinearSet::empty(2), WeightFn::unit(2));
  EXPECT_TRUE(none.num.empty());
  EXPECT_EQ(none.den, ints({1}));
}

TEST(GrowthSeries, WeightedLine) {
  const auto g = growth_series(SemilinearSet::full(1), WeightFn({Int(2)}));
  EXPECT_EQ(g.num, ints({1, 0, 1}));
  EXPECT_EQ(g.den, ints({1, 0, -1}));
}

TEST(GrowthSeries, OverlappingComponentsFallBackToFit) {
  // 0+{1}* and 2+{1}* overlap, so the closed-form sum double counts.
  const SemilinearSet s(1, {LinearSet(iv({0}), {iv({1})}), LinearSet(iv({2}), {iv({1})})});
  const auto g = growth_series(s, WeightFn::unit(1));
  EXPECT_EQ(g.num, ints({1}));
  EXPECT_EQ(g.den, ints({1, -1}));
}

// Expansion agrees with enumeration, has non-negative integer coefficients,
// and is additive over a split along the first coordinate.
TEST(GrowthSeries, RandomProperties) {
  testing::Rng rng(19);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t k = rng.range(1, 2);
    std::vector<LinearSet> comps;
    for (long c = 0, n = rng.range(1, 2); c < n; ++c)
      comps.emplace_back(rng.vec(k, 2), std::vector<IntVec>{rng.vec(k, 2), rng.vec(k, 2)});
    const SemilinearSet s(k, comps);
    const WeightFn w = WeightFn::unit(k);
    const auto g = growth_series(s, w);
    const std::size_t n = 2 * g.den_degree() + g.num_degree() + 5;
    const auto exp = g.expand_int(n + 1);
    for (const auto& x : exp) EXPECT_GE(x, 0);
    EXPECT_EQ(exp, growth_enumerate(s, w, n)) << "trial " << trial;

    const SemilinearSet right =
        poly_to_semilinear(poly_intersect(sl_to_polyhedral(s), PolyhedralSet::of(k, {R::at_least(unit_vec(k, 0), 0)})));
    const SemilinearSet left =
        poly_to_semilinear(poly_intersect(sl_to_polyhedral(s), PolyhedralSet::of(k, {R::greater(-unit_vec(k, 0), 0)})));
    const auto gl = growth_series(left, w), gr = growth_series(right, w);
    const auto el = gl.expand_int(n + 1), er = gr.expand_int(n + 1);
    for (std::size_t i = 0; i <= n; ++i) EXPECT_EQ(exp[i], el[i] + er[i]) << "trial " << trial;
  }
}

TEST(GrowthFit, Examples) {
  CoefficientTable twos(20, Int(2));
  twos[0] = 1;
  const auto a = growth_fit(twos, 4, 5);
  EXPECT_EQ(a.num, ints({1, 1}));
  EXPECT_EQ(a.den, ints({1, -1}));

  CoefficientTable point(20, Int(0));
  point[0] = 1;
  const auto b = growth_fit(point, 4, 5);
  EXPECT_EQ(b.num, ints({1}));
  EXPECT_EQ(b.den, ints({1}));

  CoefficientTable dinf(20, Int(4));
  dinf[0] = 1;
  dinf[1] = 3;
  const auto c = growth_fit(dinf, 4, 5);
  EXPECT_EQ(c.num, ints({1, 2, 1}));
  EXPECT_EQ(c.den, ints({1, -1}));
}

TEST(GrowthFit, FailuresAndPreconditions) {
  CoefficientTable fib{Int(1), Int(1)};
  while (fib.size() < 20) fib.push_back(fib[fib.size() - 1] + fib[fib.size() - 2]);
  EXPECT_THROW(growth_fit(fib, 1, 5), FitFailed);
  const auto f = growth_fit(fib, 2, 5);
  EXPECT_EQ(f.num, ints({1}));
  EXPECT_EQ(f.den, ints({1, -1, -1}));
  EXPECT_THROW(growth_fit(CoefficientTable(5, Int(1)), 4, 5), PreconditionViolation);
}

TEST(Formatting, SeriesAndTable) {
  EXPECT_EQ(format_series(ints({1, 2, 1}), ints({1, -1})), "(1 + 2z + z^2) / (1 - z)");
  EXPECT_EQ(format_series(ints({0, 1}), ints({1, 0, -3})), "(z) / (1 - 3z^2)");
  EXPECT_EQ(format_series({}, ints({1})), "(0) / (1)");
  EXPECT_EQ(format_series(ints({-2}), ints({1})), "(-2) / (1)");
  EXPECT_EQ(format_table(ints({1, 4})), "0\t1\n1\t4\n");
}

TEST(ReduceFraction, CancelsCommonFactor) {
  Poly num = ints({1, 0, -1}), den = ints({-2, 4, -2});
  reduce_fraction(num, den);
  EXPECT_EQ(num, ints({-1, -1}));
  EXPECT_EQ(den, ints({2, -2}));
  Poly n2 = ints({1}), d2 = ints({0, 1});
  EXPECT_THROW(reduce_fraction(n2, d2), PreconditionViolation);
}

}  // namespace
}  // namespace vabset
