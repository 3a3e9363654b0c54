// SPDX-License-Identifier: Apache-2.0

#include "vabset/growth.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace vabset {

namespace {

using RPoly = std::vector<Rat>;

void trim(RPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Quotient and remainder of a by b (b nonzero).
std::pair<RPoly, RPoly> divmod(RPoly a, const RPoly& b) {
  trim(a);
  RPoly q;
  if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Rat(0));
  while (!a.empty() && a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    const Rat c = a.back() / b.back();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    a.pop_back();
    trim(a);
  }
  trim(q);
  return {q, a};
}

RPoly rgcd(RPoly a, RPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    RPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

RPoly to_rat(const Poly& p) {
  RPoly out;
  for (const auto& c : p) out.emplace_back(c);
  return out;
}

Int lcm_of_dens(const RPoly& p, Int acc) {
  for (const auto& c : p) acc = lcm(acc, Int(c.get_den()));
  return acc;
}

Poly scale_to_int(const RPoly& p, const Int& m) {
  Poly out;
  for (const auto& c : p) {
    Rat x = c * Rat(m);
    x.canonicalize();
    out.push_back(x.get_num());
  }
  return out;
}

}  // namespace

Poly poly_trim(Poly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), Int(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return poly_trim(std::move(out));
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, Int(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return poly_trim(std::move(out));
}

void reduce_fraction(Poly& num, Poly& den) {
  num = poly_trim(num);
  den = poly_trim(den);
  if (den.empty() || den[0] == 0) throw PreconditionViolation("denominator must have q(0) != 0");
  RPoly n = to_rat(num), d = to_rat(den);
  if (n.empty()) {
    num = {};
    den = {Int(1)};
    return;
  }
  const RPoly g = rgcd(n, d);
  n = divmod(n, g).first;
  d = divmod(d, g).first;
  const Int m = lcm_of_dens(d, lcm_of_dens(n, Int(1)));
  num = scale_to_int(n, m);
  den = scale_to_int(d, m);
  Int content = 0;
  for (const auto& c : num) content = gcd(content, c);
  for (const auto& c : den) content = gcd(content, c);
  if (den[0] < 0) content = -content;
  for (auto& c : num) c /= content;
  for (auto& c : den) c /= content;
}

std::vector<Rat> GrowthSeries::expand(std::size_t n) const {
  if (den.empty() || den[0] == 0) throw PreconditionViolation("denominator must have q(0) != 0");
  std::vector<Rat> c(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rat acc = i < num.size() ? Rat(num[i]) : Rat(0);
    for (std::size_t j = 1; j < den.size() && j <= i; ++j) acc -= Rat(den[j]) * c[i - j];
    c[i] = acc / Rat(den[0]);
    c[i].canonicalize();
  }
  return c;
}

CoefficientTable GrowthSeries::expand_int(std::size_t n) const {
  CoefficientTable out;
  for (const auto& c : expand(n)) {
    if (c.get_den() != 1) throw Error("series has a non-integer coefficient");
    out.push_back(c.get_num());
  }
  return out;
}

std::size_t GrowthSeries::num_degree() const { return num.empty() ? 0 : num.size() - 1; }
std::size_t GrowthSeries::den_degree() const { return den.empty() ? 0 : den.size() - 1; }

std::string format_poly(const Poly& p) {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0) continue;
    Int mag = abs(p[i]);
    if (first)
      out << (p[i] < 0 ? "-" : "");
    else
      out << (p[i] < 0 ? " - " : " + ");
    first = false;
    if (i == 0 || mag != 1) out << mag.get_str();
    if (i >= 1) out << 'z';
    if (i >= 2) out << '^' << i;
  }
  return first ? "0" : out.str();
}

std::string format_series(const Poly& num, const Poly& den) {
  return "(" + format_poly(num) + ") / (" + format_poly(den) + ")";
}

std::string format_table(const CoefficientTable& t) {
  std::ostringstream out;
  for (std::size_t n = 0; n < t.size(); ++n) out << n << '\t' << t[n].get_str() << '\n';
  return out.str();
}

void for_each_in_ball(const WeightFn& w, std::size_t n,
                      const std::function<void(const IntVec&)>& f) {
  const std::size_t k = w.dim();
  IntVec z(k);
  std::function<void(std::size_t, const Int&)> rec = [&](std::size_t i, const Int& budget) {
    if (i == k) {
      f(z);
      return;
    }
    const Int reach = budget / w[i];
    for (Int x = -reach; x <= reach; ++x) {
      z[i] = x;
      rec(i + 1, budget - abs(x) * w[i]);
    }
    z[i] = 0;
  };
  rec(0, Int(static_cast<unsigned long>(n)));
}

CoefficientTable growth_enumerate(const PolyhedralSet& p, const WeightFn& w, std::size_t n) {
  check_dim(w.dim(), p.dim(), "growth_enumerate weights");
  CoefficientTable t(n + 1, Int(0));
  for_each_in_ball(w, n, [&](const IntVec& z) {
    if (p.contains(z)) t[weighted_norm(w, z).get_ui()] += 1;
  });
  return t;
}

CoefficientTable growth_enumerate(const SemilinearSet& s, const WeightFn& w, std::size_t n) {
  return growth_enumerate(sl_to_polyhedral(s), w, n);
}

std::size_t verification_horizon(const Poly& num, const Poly& den) {
  const std::size_t dp = num.empty() ? 0 : num.size() - 1;
  const std::size_t dq = den.empty() ? 0 : den.size() - 1;
  return std::max<std::size_t>(20, 2 * dq + dp + 5);
}

namespace {

void closed_form(const LinearSet& l, const WeightFn& w, Poly& num, Poly& den) {
  num.assign(weighted_norm(w, l.offset).get_ui() + 1, Int(0));
  num.back() = 1;
  den = {Int(1)};
  for (const auto& b : l.periods) {
    Poly f(weighted_norm(w, b).get_ui() + 1, Int(0));
    f[0] = 1;
    f.back() = -1;
    den = poly_mul(den, f);
  }
}

bool matches(const std::vector<Rat>& expansion, const CoefficientTable& table) {
  if (expansion.size() != table.size()) return false;
  for (std::size_t i = 0; i < table.size(); ++i)
    if (expansion[i] != Rat(table[i])) return false;
  return true;
}

GrowthSeries finish(Poly num, Poly den, const std::function<CoefficientTable(std::size_t)>& table) {
  reduce_fraction(num, den);
  GrowthSeries g{num, den, {}};
  const std::size_t n = verification_horizon(num, den);
  CoefficientTable t = table(n);
  if (!matches(g.expand(n + 1), t)) throw Error("closed form disagrees with enumeration");
  g.verified_prefix = std::move(t);
  return g;
}

constexpr std::size_t kFitMargin = 8;
constexpr std::size_t kMaxFitDegree = 24;

}  // namespace

GrowthSeries growth_series_monotone_linear(const LinearSet& l, const WeightFn& w) {
  check_dim(w.dim(), l.dim(), "growth_series_monotone_linear weights");
  if (!periods_independent(l.periods, l.dim()))
    throw PreconditionViolation("periods are linearly dependent");
  if (!monotone_orthant(l)) throw PreconditionViolation("linear set spans several orthants");
  Poly num, den;
  closed_form(l, w, num, den);
  const SemilinearSet s(l.dim(), {l});
  return finish(num, den, [&](std::size_t n) { return growth_enumerate(s, w, n); });
}

GrowthSeries growth_series(const SemilinearSet& s, const WeightFn& w) {
  check_dim(w.dim(), s.dim(), "growth_series weights");
  const PolyhedralSet poly = sl_to_polyhedral(s);
  auto table = [&](std::size_t n) { return growth_enumerate(poly, w, n); };

  Poly num, den{Int(1)};
  Int degree_budget = 0;
  for (const auto& [orthant, piece] : sl_monotone_decompose(s))
    for (const auto& c : piece.components()) {
      const SemilinearSet parts = sl_decompose_linindep(c);
      for (const auto& l : parts.components()) {
        Poly p, q;
        closed_form(l, w, p, q);
        num = poly_add(poly_mul(num, q), poly_mul(p, den));
        den = poly_mul(den, q);
        reduce_fraction(num, den);
        degree_budget += weighted_norm(w, l.offset);
        for (const auto& b : l.periods) degree_budget += weighted_norm(w, b);
      }
    }
  {
    GrowthSeries g{num, den, {}};
    const std::size_t n = verification_horizon(num, den);
    CoefficientTable t = table(n);
    if (matches(g.expand(n + 1), t)) {
      g.verified_prefix = std::move(t);
      return g;
    }
  }
  // Components overlap somewhere: fit the enumerated coefficients instead.
  const std::size_t max_deg =
      degree_budget < kMaxFitDegree ? std::max<std::size_t>(1, degree_budget.get_ui()) : kMaxFitDegree;
  GrowthSeries fit = growth_fit(table(2 * max_deg + kFitMargin), max_deg, kFitMargin);
  try {
    return finish(fit.num, fit.den, table);
  } catch (const Error&) {
    throw FitFailed("fitted series disagrees with enumeration beyond the fit window");
  }
}

namespace {

// Solves A x = b over Q; free unknowns are set to zero.
std::optional<std::vector<Rat>> solve_rational(std::vector<std::vector<Rat>> a, std::vector<Rat> b,
                                               std::size_t n) {
  const std::size_t m = a.size();
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    std::size_t pr = row;
    while (pr < m && a[pr][col] == 0) ++pr;
    if (pr == m) continue;
    std::swap(a[pr], a[row]);
    std::swap(b[pr], b[row]);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == row || a[r][col] == 0) continue;
      const Rat f = a[r][col] / a[row][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[row][c];
      b[r] -= f * b[row];
    }
    pivot_col.push_back(col);
    ++row;
  }
  for (std::size_t r = row; r < m; ++r)
    if (b[r] != 0) return std::nullopt;
  std::vector<Rat> x(n, Rat(0));
  for (std::size_t r = 0; r < pivot_col.size(); ++r) x[pivot_col[r]] = b[r] / a[r][pivot_col[r]];
  return x;
}

}  // namespace

GrowthSeries growth_fit(const CoefficientTable& table, std::size_t max_deg, std::size_t margin) {
  if (table.size() < 2 * max_deg + margin)
    throw PreconditionViolation("table too short for the requested degree and margin");
  for (std::size_t d = 0; d <= max_deg; ++d) {
    if (table.size() < 2 * d + 1 + margin) break;
    // q_0 = 1; sum_{j<=d} q_j sigma(n-j) = 0 for n = d+1..2d.
    std::vector<std::vector<Rat>> a;
    std::vector<Rat> b;
    for (std::size_t n = d + 1; n <= 2 * d; ++n) {
      std::vector<Rat> row(d);
      for (std::size_t j = 1; j <= d; ++j) row[j - 1] = Rat(table[n - j]);
      a.push_back(std::move(row));
      b.push_back(Rat(-table[n]));
    }
    const auto sol = solve_rational(a, b, d);
    if (!sol) continue;
    RPoly q{Rat(1)};
    q.insert(q.end(), sol->begin(), sol->end());
    RPoly p(d + 1, Rat(0));
    for (std::size_t n = 0; n <= d; ++n)
      for (std::size_t j = 0; j <= n; ++j) p[n] += q[j] * Rat(table[n - j]);
    const Int m = lcm_of_dens(q, lcm_of_dens(p, Int(1)));
    Poly num = scale_to_int(p, m), den = scale_to_int(q, m);
    reduce_fraction(num, den);
    GrowthSeries g{num, den, {}};
    if (matches(g.expand(table.size()), table)) {
      g.verified_prefix = table;
      return g;
    }
  }
  throw FitFailed("no rational function of degree <= " + std::to_string(max_deg) +
                  " reproduces the table");
}

}  // namespace vabset
