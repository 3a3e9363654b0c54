// SPDX-License-Identifier: Apache-2.0
//
// Weighted growth series of subsets of Z^k as rational functions p/q.

#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "vabset/lattice.hpp"
#include "vabset/polyhedral.hpp"
#include "vabset/semilinear.hpp"

namespace vabset {

/// Polynomial in z, coefficients in ascending degree, no trailing zeros.
using Poly = std::vector<Int>;

/// sigma(n) = number of points of weighted norm n, for n = 0..N.
using CoefficientTable = std::vector<Int>;

class FitFailed : public Error {
 public:
  using Error::Error;
};

struct GrowthSeries {
  Poly num;
  Poly den;  // den[0] > 0, content of (num, den) is 1
  CoefficientTable verified_prefix;

  /// First n Taylor coefficients of num/den.
  std::vector<Rat> expand(std::size_t n) const;
  /// Like expand but requires integer coefficients.
  CoefficientTable expand_int(std::size_t n) const;
  std::size_t num_degree() const;
  std::size_t den_degree() const;
};

Poly poly_trim(Poly p);
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);

/// Cancels the common factor of num/den and normalises content and sign.
/// Throws PreconditionViolation when den(0) == 0.
void reduce_fraction(Poly& num, Poly& den);

/// "p(z) / q(z)" with ascending terms, e.g. "(1 + 2z + z^2) / (1 - z)".
std::string format_series(const Poly& num, const Poly& den);
std::string format_poly(const Poly& p);

/// Rows "n<TAB>sigma(n)".
std::string format_table(const CoefficientTable& t);

CoefficientTable growth_enumerate(const PolyhedralSet& p, const WeightFn& w, std::size_t n);
CoefficientTable growth_enumerate(const SemilinearSet& s, const WeightFn& w, std::size_t n);

/// Calls f on every point of Z^k with weighted norm <= n.
void for_each_in_ball(const WeightFn& w, std::size_t n, const std::function<void(const IntVec&)>& f);

/// z^{||a||} / prod (1 - z^{||b_i||}) for a monotone linear set with
/// independent periods.
GrowthSeries growth_series_monotone_linear(const LinearSet& l, const WeightFn& w);

GrowthSeries growth_series(const SemilinearSet& s, const WeightFn& w);

/// Smallest-degree p/q with deg <= max_deg reproducing the whole table, with
/// at least `margin` trailing entries unused by the solve.
GrowthSeries growth_fit(const CoefficientTable& table, std::size_t max_deg, std::size_t margin);

/// Verification horizon for a series: max(20, 2 deg q + deg p + 5).
std::size_t verification_horizon(const Poly& num, const Poly& den);

}  // namespace vabset
