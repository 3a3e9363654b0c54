// SPDX-License-Identifier: Apache-2.0

#include "vabset/semilinear.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <tuple>

#include "vabset/diophantine.hpp"

namespace vabset {

LinearSet::LinearSet(IntVec offset_, std::vector<IntVec> periods_)
    : offset(std::move(offset_)) {
  for (auto& p : periods_) {
    check_dim(p.size(), offset.size(), "linear set period");
    if (!is_zero(p)) periods.push_back(std::move(p));
  }
}

bool LinearSet::operator<(const LinearSet& o) const {
  return std::tie(offset, periods) < std::tie(o.offset, o.periods);
}

SemilinearSet::SemilinearSet(std::size_t dim, std::vector<LinearSet> components)
    : dim_(dim), components_(std::move(components)) {
  for (const auto& c : components_) check_dim(c.dim(), dim_, "semilinear component");
}

SemilinearSet SemilinearSet::full(std::size_t dim) {
  std::vector<IntVec> periods;
  for (std::size_t i = 0; i < dim; ++i) {
    periods.push_back(unit_vec(dim, i));
    periods.push_back(-unit_vec(dim, i));
  }
  return SemilinearSet(dim, {LinearSet(zero_vec(dim), periods)});
}

bool OrthantIndex::contains(const IntVec& z) const {
  check_dim(z.size(), nonneg.size(), "orthant membership");
  for (std::size_t i = 0; i < z.size(); ++i)
    if ((z[i] >= 0) != nonneg[i]) return false;
  return true;
}

PolyhedralSet OrthantIndex::region() const {
  const std::size_t k = nonneg.size();
  std::vector<ElementaryRegion> rs;
  for (std::size_t i = 0; i < k; ++i) {
    if (nonneg[i])
      rs.push_back(ElementaryRegion::greater(unit_vec(k, i), -1));
    else
      rs.push_back(ElementaryRegion::greater(-unit_vec(k, i), 0));
  }
  return PolyhedralSet::of(k, rs);
}

bool periods_independent(const std::vector<IntVec>& periods, std::size_t dim) {
  if (periods.empty()) return true;
  return integer_rank(IntMat::from_columns(periods, dim)) == periods.size();
}

std::optional<OrthantIndex> monotone_orthant(const LinearSet& l) {
  OrthantIndex o;
  for (std::size_t i = 0; i < l.dim(); ++i) {
    bool nonneg_ok = l.offset[i] >= 0, neg_ok = l.offset[i] < 0;
    for (const auto& p : l.periods) {
      if (p[i] < 0) nonneg_ok = false;
      if (p[i] > 0) neg_ok = false;
    }
    if (!nonneg_ok && !neg_ok) return std::nullopt;
    o.nonneg.push_back(nonneg_ok);
  }
  return o;
}

SemilinearSet sl_affine_image(const AffineMap& a, const SemilinearSet& s) {
  check_dim(a.source_dim(), s.dim(), "sl_affine_image");
  std::vector<LinearSet> out;
  for (const auto& c : s.components()) {
    std::vector<IntVec> periods;
    for (const auto& p : c.periods) periods.push_back(a.matrix() * p);
    out.emplace_back(affine_apply(a, c.offset), std::move(periods));
  }
  return SemilinearSet(a.target_dim(), std::move(out));
}

namespace {

// Kernel vector c of the period matrix minimising the positive mass
// sum_{c_i > 0} c_i.
IntVec dependency(const std::vector<IntVec>& periods, std::size_t dim) {
  const IntMat b = IntMat::from_columns(periods, dim);
  auto sol = snf_solve(b, zero_vec(dim));
  IntVec best;
  Int best_mass = -1;
  for (const auto& kv : sol->kernel_basis)
    for (const IntVec& c : {kv, IntVec(-kv)}) {
      Int mass = 0;
      for (const Int& x : c)
        if (x > 0) mass += x;
      if (mass == 0) continue;
      if (best_mass < 0 || mass < best_mass) {
        best_mass = mass;
        best = c;
      }
    }
  return best;
}

void decompose_into(const IntVec& offset, const std::vector<IntVec>& periods,
                    std::vector<LinearSet>& out) {
  const std::size_t dim = offset.size();
  if (periods_independent(periods, dim)) {
    LinearSet l(offset, periods);
    if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(std::move(l));
    return;
  }
  // sum_{c_i>0} c_i b_i = sum_{c_j<0} |c_j| b_j. Any exponent vector with
  // n_i >= c_i on the positive side can trade those copies for the negative
  // side without changing the point, so some positive-side exponent is < c_i.
  const IntVec c = dependency(periods, dim);
  for (std::size_t i = 0; i < periods.size(); ++i) {
    if (c[i] <= 0) continue;
    std::vector<IntVec> rest;
    for (std::size_t j = 0; j < periods.size(); ++j)
      if (j != i) rest.push_back(periods[j]);
    for (Int r = 0; r < c[i]; ++r) decompose_into(offset + scale(r, periods[i]), rest, out);
  }
}

BasicPolyhedral independent_to_basic(const LinearSet& l) {
  const std::size_t k = l.dim();
  BasicPolyhedral basic;
  if (l.periods.empty()) {
    for (std::size_t i = 0; i < k; ++i)
      basic.regions.push_back(ElementaryRegion::equation(unit_vec(k, i), l.offset[i]));
    return basic;
  }
  const std::size_t r = l.periods.size();
  const IntMat m = IntMat::from_columns(l.periods, k);
  const SmithForm s = smith_normal_form(m);
  if (s.rank != r) throw PreconditionViolation("periods must be independent");
  // z - a = M y  <=>  U(z - a) = D V^{-1} y: divisibility on the first r rows,
  // vanishing on the rest.
  for (std::size_t i = 0; i < k; ++i) {
    const IntVec ui = s.u.row(i);
    const Int ua = dot(ui, l.offset);
    if (i >= r)
      basic.regions.push_back(ElementaryRegion::equation(ui, ua));
    else if (s.diag(i) > 1)
      basic.regions.push_back(ElementaryRegion::congruence(ui, ua, s.diag(i)));
  }
  // y_j = sum_i V_{j,i} (U_i.(z - a)) / d_i >= 0, scaled by lcm(d).
  Int lcm_d = 1;
  for (std::size_t i = 0; i < r; ++i) lcm_d = lcm(lcm_d, s.diag(i));
  for (std::size_t j = 0; j < r; ++j) {
    IntVec g = zero_vec(k);
    for (std::size_t i = 0; i < r; ++i) {
      if (s.v(j, i) == 0) continue;
      g = g + scale(s.v(j, i) * (lcm_d / s.diag(i)), s.u.row(i));
    }
    basic.regions.push_back(ElementaryRegion::greater(g, dot(g, l.offset) - 1));
  }
  return basic;
}

IntMat inverse_unimodular(const IntMat& u) {
  const std::size_t n = u.rows();
  std::vector<IntVec> cols;
  for (std::size_t j = 0; j < n; ++j) cols.push_back(snf_solve(u, unit_vec(n, j))->particular);
  return IntMat::from_columns(cols, n);
}

}  // namespace

SemilinearSet sl_decompose_linindep(const LinearSet& l) {
  std::vector<LinearSet> out;
  decompose_into(l.offset, l.periods, out);
  return SemilinearSet(l.dim(), std::move(out));
}

PolyhedralSet sl_to_polyhedral(const SemilinearSet& s) {
  std::vector<BasicPolyhedral> basics;
  for (const auto& c : s.components()) {
    const SemilinearSet pieces = sl_decompose_linindep(c);
    for (const auto& piece : pieces.components())
      if (auto b = simplify_basic(independent_to_basic(piece))) {
        if (std::find(basics.begin(), basics.end(), *b) == basics.end())
          basics.push_back(std::move(*b));
      }
  }
  return PolyhedralSet(s.dim(), std::move(basics));
}

bool sl_contains(const SemilinearSet& s, const IntVec& z) {
  check_dim(z.size(), s.dim(), "sl_contains");
  return sl_to_polyhedral(s).contains(z);
}

std::vector<IntVec> parallelepiped_points(const IntMat& rows) {
  const std::size_t k = rows.rows();
  const IntMat mt = rows.transpose();
  const SmithForm s = smith_normal_form(mt);
  if (s.rank != k) throw PreconditionViolation("parallelepiped of a singular matrix");
  const IntMat u_inv = inverse_unimodular(s.u);
  std::vector<IntVec> points;
  IntVec r = zero_vec(k);
  for (;;) {
    const IntVec z = u_inv * r;
    const auto f = *rational_coordinates(mt, z);
    IntVec p = zero_vec(k);
    std::vector<Rat> frac(k);
    for (std::size_t i = 0; i < k; ++i) {
      Int fl;
      mpz_fdiv_q(fl.get_mpz_t(), f[i].get_num_mpz_t(), f[i].get_den_mpz_t());
      frac[i] = f[i] - Rat(fl);
    }
    for (std::size_t j = 0; j < k; ++j) {
      Rat acc = 0;
      for (std::size_t i = 0; i < k; ++i) acc += frac[i] * Rat(rows(i, j));
      acc.canonicalize();
      p[j] = acc.get_num();
    }
    points.push_back(std::move(p));
    std::size_t i = 0;
    while (i < k && r[i] + 1 >= s.diag(i)) r[i++] = 0;
    if (i == k) break;
    r[i] += 1;
  }
  std::sort(points.begin(), points.end());
  return points;
}

SemilinearSet halfspace_to_semilinear(const IntVec& u, const Int& a) {
  const std::size_t k = u.size();
  const Int g = gcd_of(u);
  if (g == 0) return 0 > a ? SemilinearSet::full(k) : SemilinearSet::empty(k);
  const IntMat urow = IntMat::from_rows({u}, k);
  // First row m_1 with m_1.u = g, remaining rows a basis of u-perp; then
  // M u = g e_1 and the rows map E_0 = {e_1, +-e_2, ..., +-e_k}* into the
  // half-space.
  const IntVec m1 = snf_solve(urow, {g})->particular;
  const std::vector<IntVec> perp = snf_solve(urow, {Int(0)})->kernel_basis;
  std::vector<IntVec> rows{m1};
  rows.insert(rows.end(), perp.begin(), perp.end());
  const IntMat m = IntMat::from_rows(rows, k);

  std::vector<IntVec> periods{m1};
  for (const auto& p : perp) {
    periods.push_back(p);
    periods.push_back(-p);
  }
  // u.z > a  <=>  u.z >= g * ceil((a + 1) / g); shift to that level.
  const Int level = ceil_div(a + 1, g);
  const IntVec shift = scale(level, m1);
  std::vector<LinearSet> comps;
  for (const auto& p : parallelepiped_points(m)) comps.emplace_back(shift + p, periods);
  return SemilinearSet(k, std::move(comps));
}

namespace {

// Calls f with every r-element index subset of {0..n-1} in lexicographic order.
template <class F>
void for_each_subset(std::size_t n, std::size_t r, F&& f) {
  if (r > n) return;
  std::vector<std::size_t> idx(r);
  for (std::size_t i = 0; i < r; ++i) idx[i] = i;
  for (;;) {
    f(static_cast<const std::vector<std::size_t>&>(idx));
    std::size_t i = r;
    while (i > 0 && idx[i - 1] == n - r + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

IntVec primitive(IntVec v) {
  const Int g = gcd_of(v);
  if (g > 1)
    for (auto& x : v) x /= g;
  return v;
}

// Primitive extreme rays of the pointed cone {x : G x >= 0}: directions
// where p - 1 independent constraints are tight.
std::vector<IntVec> cone_rays(const std::vector<IntVec>& g, std::size_t p) {
  std::vector<IntVec> rays;
  if (p == 0) return rays;
  auto feasible = [&](const IntVec& v) {
    for (const auto& row : g)
      if (dot(row, v) < 0) return false;
    return true;
  };
  auto consider = [&](const std::vector<IntVec>& tight) {
    const IntMat t = tight.empty() ? IntMat(0, p) : IntMat::from_rows(tight, p);
    const auto ker = snf_solve(t, zero_vec(tight.size()))->kernel_basis;
    if (ker.size() != 1) return;
    for (const IntVec& v : {ker[0], IntVec(-ker[0])}) {
      IntVec r = primitive(v);
      if (feasible(r) && std::find(rays.begin(), rays.end(), r) == rays.end()) rays.push_back(r);
    }
  };
  if (p == 1) {
    consider({});
  } else {
    for_each_subset(g.size(), p - 1, [&](const std::vector<std::size_t>& idx) {
      std::vector<IntVec> tight;
      for (std::size_t i : idx) tight.push_back(g[i]);
      consider(tight);
    });
  }
  std::sort(rays.begin(), rays.end());
  return rays;
}

// Pulling triangulation of the face spanned by `rays` (dimension d) of the
// cone {x : G x >= 0}: cone the first ray over a triangulation of every
// facet that misses it. Facets are the rank d - 1 sets of rays tight on a
// single row of G.
void triangulate(const std::vector<IntVec>& rays, std::size_t d, const std::vector<IntVec>& g,
                 std::size_t p, std::vector<std::vector<IntVec>>& out) {
  if (rays.size() == d) {
    out.push_back(rays);
    return;
  }
  const IntVec& apex = rays[0];
  std::set<std::vector<IntVec>> facets;
  for (const auto& row : g) {
    if (dot(row, apex) == 0) continue;
    std::vector<IntVec> tight;
    for (const auto& r : rays)
      if (dot(row, r) == 0) tight.push_back(r);
    if (tight.size() + 1 < d || !facets.insert(tight).second) continue;
    if (integer_rank(IntMat::from_columns(tight, p)) != d - 1) continue;
    std::vector<std::vector<IntVec>> sub;
    triangulate(tight, d - 1, g, p, sub);
    for (auto& simplex : sub) {
      simplex.insert(simplex.begin(), apex);
      out.push_back(std::move(simplex));
    }
  }
}

// Simplicial cones covering the pointed cone {x : G x >= 0}.
std::vector<std::vector<IntVec>> simplicial_cover(const std::vector<IntVec>& rays,
                                                  const std::vector<IntVec>& g, std::size_t p) {
  if (rays.empty()) return {{}};
  std::vector<std::vector<IntVec>> out;
  triangulate(rays, integer_rank(IntMat::from_columns(rays, p)), g, p, out);
  return out;
}

// Vertices of the pointed polyhedron {x : G x >= h}.
std::vector<std::vector<Rat>> vertices(const std::vector<IntVec>& g, const IntVec& h,
                                       std::size_t p) {
  std::vector<std::vector<Rat>> out;
  for_each_subset(g.size(), p, [&](const std::vector<std::size_t>& idx) {
    std::vector<IntVec> rows;
    IntVec rhs;
    for (std::size_t i : idx) {
      rows.push_back(g[i]);
      rhs.push_back(h[i]);
    }
    const IntMat m = IntMat::from_rows(rows, p);
    if (integer_rank(m) != p) return;
    const auto v = *rational_coordinates(m, rhs);
    for (std::size_t j = 0; j < g.size(); ++j) {
      Rat acc = 0;
      for (std::size_t i = 0; i < p; ++i) acc += Rat(g[j][i]) * v[i];
      if (acc < Rat(h[j])) return;
    }
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  });
  return out;
}

Int rat_floor(const Rat& r) {
  Int out;
  mpz_fdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return out;
}

Int rat_ceil(const Rat& r) {
  Int out;
  mpz_cdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return out;
}

struct PointedPiece {
  std::vector<IntVec> rays;
  std::vector<IntVec> offsets;
};

// Integer points of a pointed polyhedron {x : G x >= h} as a union of
// f + R* over simplicial subcones R of the recession cone. Any point
// x = v + sum l_i r_i reduces to f = x - sum floor(l_i) r_i, which lies in
// the polytope part plus one half-open parallelepiped, so a box search finds
// every needed f.
std::vector<PointedPiece> pointed_integer_points(const std::vector<IntVec>& g, const IntVec& h,
                                                 std::size_t p) {
  std::vector<PointedPiece> out;
  const auto verts = vertices(g, h, p);
  if (verts.empty()) return out;
  IntVec lo(p), hi(p);
  for (std::size_t i = 0; i < p; ++i) {
    lo[i] = rat_floor(verts[0][i]);
    hi[i] = rat_ceil(verts[0][i]);
    for (const auto& v : verts) {
      lo[i] = std::min(lo[i], rat_floor(v[i]));
      hi[i] = std::max(hi[i], rat_ceil(v[i]));
    }
  }
  auto inside = [&](const IntVec& x) {
    for (std::size_t j = 0; j < g.size(); ++j)
      if (dot(g[j], x) < h[j]) return false;
    return true;
  };
  for (auto& rays : simplicial_cover(cone_rays(g, p), g, p)) {
    IntVec blo = lo, bhi = hi;
    for (const auto& r : rays)
      for (std::size_t i = 0; i < p; ++i) (r[i] < 0 ? blo[i] : bhi[i]) += r[i];
    std::set<IntVec> found;
    for_each_box_point(blo, bhi, [&](const IntVec& x) {
      if (inside(x)) found.insert(x);
    });
    PointedPiece piece{rays, {}};
    for (const auto& x : found) {
      bool covered = false;
      for (const auto& r : rays) covered = covered || found.count(x - r);
      if (!covered) piece.offsets.push_back(x);
    }
    out.push_back(std::move(piece));
  }
  return out;
}

}  // namespace

SemilinearSet basic_to_semilinear(const BasicPolyhedral& raw, std::size_t k) {
  auto simplified = simplify_basic(raw);
  if (!simplified) return SemilinearSet::empty(k);
  const BasicPolyhedral& basic = *simplified;
  if (basic.regions.empty()) return SemilinearSet::full(k);
  if (basic.regions.size() == 1 && basic.regions[0].kind == RegionKind::Inequality)
    return halfspace_to_semilinear(basic.regions[0].u, basic.regions[0].a);

  std::vector<const ElementaryRegion*> eqs, congs, ineqs;
  for (const auto& r : basic.regions) {
    if (r.kind == RegionKind::Equation) eqs.push_back(&r);
    if (r.kind == RegionKind::Congruence) congs.push_back(&r);
    if (r.kind == RegionKind::Inequality) ineqs.push_back(&r);
  }

  // Lattice coset z = z0 + Lambda w cut out by equations and congruences;
  // each congruence u.z = a (mod b) carries a slack s with u.z - b s = a.
  IntVec z0 = zero_vec(k);
  std::vector<IntVec> lambda;
  if (eqs.empty() && congs.empty()) {
    for (std::size_t i = 0; i < k; ++i) lambda.push_back(unit_vec(k, i));
  } else {
    const std::size_t nc = congs.size();
    IntMat sys(eqs.size() + nc, k + nc);
    IntVec rhs;
    std::size_t row = 0;
    for (const auto* r : eqs) {
      for (std::size_t j = 0; j < k; ++j) sys(row, j) = r->u[j];
      rhs.push_back(r->a);
      ++row;
    }
    for (std::size_t c = 0; c < nc; ++c) {
      for (std::size_t j = 0; j < k; ++j) sys(row, j) = congs[c]->u[j];
      sys(row, k + c) = -congs[c]->b;
      rhs.push_back(congs[c]->a);
      ++row;
    }
    auto sol = snf_solve(sys, rhs);
    if (!sol) return SemilinearSet::empty(k);
    z0.assign(sol->particular.begin(), sol->particular.begin() + static_cast<std::ptrdiff_t>(k));
    std::vector<IntVec> gens;
    for (const auto& kv : sol->kernel_basis)
      gens.emplace_back(kv.begin(), kv.begin() + static_cast<std::ptrdiff_t>(k));
    lambda = lattice_basis(gens, k);
  }
  const std::size_t p = lambda.size();
  const IntMat lam = p ? IntMat::from_columns(lambda, k) : IntMat(k, 0);

  // Inequalities in w: c.w >= rhs.
  std::vector<IntVec> cs;
  IntVec rs;
  for (const auto* r : ineqs) {
    IntVec c = left_multiply(r->u, lam);
    Int rhs = r->a - dot(r->u, z0) + 1;
    if (is_zero(c)) {
      if (0 < rhs) return SemilinearSet::empty(k);
      continue;
    }
    cs.push_back(std::move(c));
    rs.push_back(std::move(rhs));
  }

  if (cs.empty()) {
    std::vector<IntVec> periods;
    for (const auto& l : lambda) {
      periods.push_back(l);
      periods.push_back(-l);
    }
    return SemilinearSet(k, {LinearSet(z0, periods)});
  }

  // Split w-space into orthants, w_i = x_i or w_i = -1 - x_i with x >= 0,
  // so that each part is a pointed polyhedron in x.
  std::vector<LinearSet> comps;
  for (std::size_t mask = 0; mask < (std::size_t{1} << p); ++mask) {
    std::vector<int> sign(p);
    IntVec delta = zero_vec(p);
    for (std::size_t i = 0; i < p; ++i) {
      const bool neg = (mask >> i) & 1u;
      sign[i] = neg ? -1 : 1;
      delta[i] = neg ? -1 : 0;
    }
    std::vector<IntVec> g;
    IntVec h;
    for (std::size_t i = 0; i < p; ++i) {
      g.push_back(unit_vec(p, i));
      h.push_back(0);
    }
    for (std::size_t j = 0; j < cs.size(); ++j) {
      IntVec row(p);
      for (std::size_t i = 0; i < p; ++i) row[i] = cs[j][i] * sign[i];
      g.push_back(std::move(row));
      h.push_back(rs[j] - dot(cs[j], delta));
    }
    auto to_w = [&](const IntVec& x, bool affine) {
      IntVec w(p);
      for (std::size_t i = 0; i < p; ++i) w[i] = x[i] * sign[i] + (affine ? delta[i] : Int(0));
      return w;
    };
    for (const auto& piece : pointed_integer_points(g, h, p)) {
      std::vector<IntVec> periods;
      for (const auto& r : piece.rays) periods.push_back(lam * to_w(r, false));
      for (const auto& x : piece.offsets) comps.emplace_back(z0 + lam * to_w(x, true), periods);
    }
  }
  return SemilinearSet(k, std::move(comps));
}

SemilinearSet sl_union(const SemilinearSet& a, const SemilinearSet& b) {
  check_dim(b.dim(), a.dim(), "sl_union");
  std::vector<LinearSet> all = a.components();
  all.insert(all.end(), b.components().begin(), b.components().end());
  return SemilinearSet(a.dim(), std::move(all));
}

SemilinearSet poly_to_semilinear(const PolyhedralSet& p) {
  SemilinearSet acc = SemilinearSet::empty(p.dim());
  for (const auto& basic : p.basics()) acc = sl_union(acc, basic_to_semilinear(basic, p.dim()));
  return sl_simplify(acc);
}

SemilinearSet sl_intersect(const SemilinearSet& a, const SemilinearSet& b) {
  check_dim(b.dim(), a.dim(), "sl_intersect");
  return poly_to_semilinear(poly_intersect(sl_to_polyhedral(a), sl_to_polyhedral(b)));
}

namespace {

bool contained_in(const LinearSet& inner, const LinearSet& outer) {
  if (outer.periods.empty())
    return inner.periods.empty() && inner.offset == outer.offset;
  if (!monoid_contains(outer.periods, inner.offset - outer.offset)) return false;
  for (const auto& p : inner.periods)
    if (!monoid_contains(outer.periods, p)) return false;
  return true;
}

constexpr std::size_t kContainmentPruneLimit = 400;

}  // namespace

SemilinearSet sl_simplify(const SemilinearSet& s) {
  std::vector<LinearSet> comps;
  for (const auto& c : s.components()) {
    std::vector<IntVec> ps;
    for (const auto& p : c.periods)
      if (!is_zero(p)) ps.push_back(p);
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    for (std::size_t i = 0; i < ps.size();) {
      std::vector<IntVec> rest;
      for (std::size_t j = 0; j < ps.size(); ++j)
        if (j != i) rest.push_back(ps[j]);
      if (monoid_contains(rest, ps[i]))
        ps = std::move(rest);
      else
        ++i;
    }
    comps.emplace_back(c.offset, std::move(ps));
  }
  std::sort(comps.begin(), comps.end());
  comps.erase(std::unique(comps.begin(), comps.end()), comps.end());
  if (comps.size() <= kContainmentPruneLimit) {
    std::vector<bool> dropped(comps.size(), false);
    for (std::size_t i = 0; i < comps.size(); ++i)
      for (std::size_t j = 0; j < comps.size(); ++j) {
        if (i == j || dropped[j]) continue;
        if (contained_in(comps[i], comps[j])) {
          dropped[i] = true;
          break;
        }
      }
    std::vector<LinearSet> kept;
    for (std::size_t i = 0; i < comps.size(); ++i)
      if (!dropped[i]) kept.push_back(std::move(comps[i]));
    comps = std::move(kept);
  }
  return SemilinearSet(s.dim(), std::move(comps));
}

namespace {

// {c + Bn : n in N^m} n Q as the image of {n >= 0 : c + Bn in Q}. B has
// independent columns, so distinct exponents give distinct points.
SemilinearSet orthant_cut(const LinearSet& l, const OrthantIndex& o) {
  const std::size_t k = l.dim(), m = l.periods.size();
  if (m == 0) return o.contains(l.offset) ? SemilinearSet(k, {l}) : SemilinearSet::empty(k);
  std::vector<ElementaryRegion> rs;
  for (std::size_t j = 0; j < m; ++j) rs.push_back(ElementaryRegion::greater(unit_vec(m, j), -1));
  for (std::size_t i = 0; i < k; ++i) {
    IntVec row(m);
    bool up = l.offset[i] >= 0, down = l.offset[i] < 0;
    for (std::size_t j = 0; j < m; ++j) {
      row[j] = l.periods[j][i];
      up = up && row[j] >= 0;
      down = down && row[j] <= 0;
    }
    // Coordinates whose sign is fixed along the whole set need no cut.
    if (up || down) {
      if (up != static_cast<bool>(o.nonneg[i])) return SemilinearSet::empty(k);
      continue;
    }
    if (o.nonneg[i])
      rs.push_back(ElementaryRegion::greater(row, -l.offset[i] - 1));
    else
      rs.push_back(ElementaryRegion::greater(-row, l.offset[i]));
  }
  const SemilinearSet exps = poly_to_semilinear(PolyhedralSet::of(m, rs));
  return sl_affine_image(AffineMap(IntMat::from_columns(l.periods, k), l.offset), exps);
}

}  // namespace

std::vector<std::pair<OrthantIndex, SemilinearSet>> sl_monotone_decompose(
    const SemilinearSet& s) {
  const std::size_t k = s.dim();
  std::vector<LinearSet> independent;
  for (const auto& c : s.components()) {
    const SemilinearSet d = sl_decompose_linindep(c);
    independent.insert(independent.end(), d.components().begin(), d.components().end());
  }
  std::vector<std::pair<OrthantIndex, SemilinearSet>> out;
  for (std::size_t m = std::size_t{1} << k; m-- > 0;) {
    OrthantIndex o;
    for (std::size_t i = 0; i < k; ++i) o.nonneg.push_back((m >> i) & 1u);
    std::vector<LinearSet> comps;
    for (const auto& l : independent) {
      const SemilinearSet cut = orthant_cut(l, o);
      comps.insert(comps.end(), cut.components().begin(), cut.components().end());
    }
    SemilinearSet piece = sl_simplify(SemilinearSet(k, std::move(comps)));
    if (!piece.is_empty()) out.emplace_back(std::move(o), std::move(piece));
  }
  return out;
}

}  // namespace vabset
