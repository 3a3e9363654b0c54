// SPDX-License-Identifier: Apache-2.0

#include "vabset/polyhedral.hpp"

#include <algorithm>
#include <map>
#include <tuple>
#include <utility>

namespace vabset {

ElementaryRegion ElementaryRegion::equation(IntVec u, Int a) {
  return {RegionKind::Equation, std::move(u), std::move(a), Int(1)};
}

ElementaryRegion ElementaryRegion::congruence(IntVec u, Int a, Int b) {
  if (b < 1) throw PreconditionViolation("congruence modulus must be >= 1");
  Int r = mod_floor(a, b);
  return {RegionKind::Congruence, std::move(u), std::move(r), std::move(b)};
}

ElementaryRegion ElementaryRegion::greater(IntVec u, Int a) {
  return {RegionKind::Inequality, std::move(u), std::move(a), Int(1)};
}

ElementaryRegion ElementaryRegion::at_least(IntVec u, const Int& a) {
  return greater(std::move(u), a - 1);
}

bool ElementaryRegion::contains(const IntVec& z) const {
  check_dim(z.size(), u.size(), "region membership");
  const Int s = dot(u, z);
  switch (kind) {
    case RegionKind::Equation:
      return s == a;
    case RegionKind::Congruence:
      return mod_floor(s - a, b) == 0;
    case RegionKind::Inequality:
      return s > a;
  }
  return false;
}

bool ElementaryRegion::operator<(const ElementaryRegion& o) const {
  return std::tie(kind, u, a, b) < std::tie(o.kind, o.u, o.a, o.b);
}

bool BasicPolyhedral::contains(const IntVec& z) const {
  return std::all_of(regions.begin(), regions.end(),
                     [&](const ElementaryRegion& r) { return r.contains(z); });
}

PolyhedralSet::PolyhedralSet(std::size_t dim, std::vector<BasicPolyhedral> basics)
    : dim_(dim), basics_(std::move(basics)) {
  for (const auto& b : basics_)
    for (const auto& r : b.regions) check_dim(r.dim(), dim_, "polyhedral region");
}

PolyhedralSet PolyhedralSet::full(std::size_t dim) {
  return PolyhedralSet(dim, {BasicPolyhedral{}});
}

PolyhedralSet PolyhedralSet::of(std::size_t dim,
                                std::vector<ElementaryRegion> regions) {
  return PolyhedralSet(dim, {BasicPolyhedral{std::move(regions)}});
}

bool PolyhedralSet::contains(const IntVec& z) const {
  check_dim(z.size(), dim_, "poly_contains");
  return std::any_of(basics_.begin(), basics_.end(),
                     [&](const BasicPolyhedral& b) { return b.contains(z); });
}

bool poly_contains(const PolyhedralSet& p, const IntVec& z) { return p.contains(z); }

namespace {

enum class Truth { True, False, Open };

// First nonzero entry positive.
bool canonical_sign(IntVec& u, Int& a) {
  for (const Int& c : u) {
    if (c == 0) continue;
    if (c < 0) {
      u = -u;
      a = -a;
      return true;
    }
    return false;
  }
  return false;
}

Truth normalize(ElementaryRegion& r) {
  switch (r.kind) {
    case RegionKind::Equation: {
      const Int g = gcd_of(r.u);
      if (g == 0) return r.a == 0 ? Truth::True : Truth::False;
      if (r.a % g != 0) return Truth::False;
      for (Int& c : r.u) c /= g;
      r.a /= g;
      canonical_sign(r.u, r.a);
      return Truth::Open;
    }
    case RegionKind::Inequality: {
      const Int g = gcd_of(r.u);
      if (g == 0) return 0 > r.a ? Truth::True : Truth::False;
      for (Int& c : r.u) c /= g;
      r.a = floor_div(r.a, g);
      return Truth::Open;
    }
    case RegionKind::Congruence: {
      for (Int& c : r.u) c = mod_floor(c, r.b);
      r.a = mod_floor(r.a, r.b);
      const Int g = gcd(gcd_of(r.u), r.b);
      if (r.a % g != 0) return Truth::False;
      for (Int& c : r.u) c /= g;
      r.a /= g;
      r.b /= g;
      if (r.b == 1) return Truth::True;
      return Truth::Open;
    }
  }
  return Truth::Open;
}

}  // namespace

std::optional<BasicPolyhedral> simplify_basic(const BasicPolyhedral& basic) {
  std::map<IntVec, Int> equations;     // canonical u -> a
  std::map<IntVec, Int> inequalities;  // u -> strongest a
  std::vector<ElementaryRegion> congruences;

  for (ElementaryRegion r : basic.regions) {
    const Truth t = normalize(r);
    if (t == Truth::False) return std::nullopt;
    if (t == Truth::True) continue;
    switch (r.kind) {
      case RegionKind::Equation: {
        auto [it, inserted] = equations.emplace(r.u, r.a);
        if (!inserted && it->second != r.a) return std::nullopt;
        break;
      }
      case RegionKind::Inequality: {
        auto [it, inserted] = inequalities.emplace(r.u, r.a);
        if (!inserted && r.a > it->second) it->second = r.a;
        break;
      }
      case RegionKind::Congruence:
        congruences.push_back(std::move(r));
        break;
    }
  }

  // Opposite half-spaces: u.z > a and -u.z > a' need a + a' <= -2; equality
  // at -2 pins u.z = a + 1.
  std::vector<IntVec> pinned;
  for (const auto& [u, a] : inequalities) {
    auto opp = inequalities.find(-u);
    if (opp == inequalities.end()) continue;
    const Int sum = a + opp->second;
    if (sum > -2) return std::nullopt;
    if (sum == -2 && u < opp->first) {
      IntVec eu = u;
      Int ea = a + 1;
      canonical_sign(eu, ea);
      auto [it, inserted] = equations.emplace(eu, ea);
      if (!inserted && it->second != ea) return std::nullopt;
      pinned.push_back(u);
      pinned.push_back(opp->first);
    }
  }
  for (const IntVec& u : pinned) inequalities.erase(u);

  // Inequalities implied or contradicted by an equation on the same normal.
  for (auto it = inequalities.begin(); it != inequalities.end();) {
    IntVec eu = it->first;
    Int dummy = 0;
    const bool flipped = canonical_sign(eu, dummy);
    auto eq = equations.find(eu);
    if (eq == equations.end()) {
      ++it;
      continue;
    }
    const Int value = flipped ? Int(-eq->second) : eq->second;
    if (!(value > it->second)) return std::nullopt;
    it = inequalities.erase(it);
  }

  for (const auto& c : congruences) {
    auto eq = equations.find(c.u);
    if (eq != equations.end() && mod_floor(eq->second - c.a, c.b) != 0)
      return std::nullopt;
  }

  BasicPolyhedral out;
  for (const auto& [u, a] : equations) out.regions.push_back(ElementaryRegion::equation(u, a));
  for (const auto& [u, a] : inequalities)
    out.regions.push_back(ElementaryRegion::greater(u, a));
  for (auto& c : congruences) out.regions.push_back(std::move(c));
  std::sort(out.regions.begin(), out.regions.end());
  out.regions.erase(std::unique(out.regions.begin(), out.regions.end()),
                    out.regions.end());
  return out;
}

namespace {

void push_basic(std::vector<BasicPolyhedral>& basics, const BasicPolyhedral& b) {
  auto s = simplify_basic(b);
  if (!s) return;
  if (std::find(basics.begin(), basics.end(), *s) != basics.end()) return;
  basics.push_back(std::move(*s));
}

PolyhedralSet tidy(std::size_t dim, const std::vector<BasicPolyhedral>& basics) {
  std::vector<BasicPolyhedral> out;
  for (const auto& b : basics) {
    push_basic(out, b);
    // A basic without regions is all of Z^k and absorbs the rest.
    if (!out.empty() && out.back().regions.empty()) return PolyhedralSet::full(dim);
  }
  return PolyhedralSet(dim, std::move(out));
}

std::vector<BasicPolyhedral> complement_region(const ElementaryRegion& r) {
  std::vector<BasicPolyhedral> out;
  switch (r.kind) {
    case RegionKind::Equation:
      out.push_back({{ElementaryRegion::greater(r.u, r.a)}});
      out.push_back({{ElementaryRegion::greater(-r.u, -r.a)}});
      break;
    case RegionKind::Inequality:
      // u.z <= a  <=>  -u.z > -a - 1
      out.push_back({{ElementaryRegion::greater(-r.u, -r.a - 1)}});
      break;
    case RegionKind::Congruence:
      for (Int res = 0; res < r.b; ++res)
        if (res != mod_floor(r.a, r.b))
          out.push_back({{ElementaryRegion::congruence(r.u, res, r.b)}});
      break;
  }
  return out;
}

}  // namespace

PolyhedralSet poly_union(const PolyhedralSet& p, const PolyhedralSet& q) {
  check_dim(q.dim(), p.dim(), "poly union");
  std::vector<BasicPolyhedral> all = p.basics();
  all.insert(all.end(), q.basics().begin(), q.basics().end());
  return tidy(p.dim(), all);
}

PolyhedralSet poly_intersect(const PolyhedralSet& p, const PolyhedralSet& q) {
  check_dim(q.dim(), p.dim(), "poly intersect");
  if (p.basics().size() * q.basics().size() > kMaxBasics)
    throw Error("poly_intersect: basic count exceeds cap");
  std::vector<BasicPolyhedral> out;
  for (const auto& bp : p.basics())
    for (const auto& bq : q.basics()) {
      BasicPolyhedral b = bp;
      b.regions.insert(b.regions.end(), bq.regions.begin(), bq.regions.end());
      push_basic(out, b);
    }
  return PolyhedralSet(p.dim(), std::move(out));
}

PolyhedralSet poly_complement(const PolyhedralSet& p) {
  // Z^k \ (B_1 u ... u B_m) = (Z^k \ B_1) n ... n (Z^k \ B_m), and the
  // complement of a conjunction is the union of the region complements.
  PolyhedralSet acc = PolyhedralSet::full(p.dim());
  for (const auto& basic : p.basics()) {
    std::vector<BasicPolyhedral> parts;
    for (const auto& r : basic.regions) {
      auto c = complement_region(r);
      parts.insert(parts.end(), c.begin(), c.end());
    }
    acc = poly_intersect(acc, tidy(p.dim(), parts));
    if (acc.is_syntactically_empty()) break;
  }
  return acc;
}

PolyhedralSet poly_product(const PolyhedralSet& p, const PolyhedralSet& q) {
  const std::size_t k = p.dim() + q.dim();
  auto pad = [k](const ElementaryRegion& r, std::size_t shift) {
    ElementaryRegion out = r;
    out.u = zero_vec(k);
    for (std::size_t i = 0; i < r.u.size(); ++i) out.u[shift + i] = r.u[i];
    return out;
  };
  std::vector<BasicPolyhedral> out;
  for (const auto& bp : p.basics())
    for (const auto& bq : q.basics()) {
      BasicPolyhedral b;
      for (const auto& r : bp.regions) b.regions.push_back(pad(r, 0));
      for (const auto& r : bq.regions) b.regions.push_back(pad(r, p.dim()));
      push_basic(out, b);
    }
  return PolyhedralSet(k, std::move(out));
}

PolyhedralSet poly_combine(PolyOp op, const PolyhedralSet& p,
                           const std::optional<PolyhedralSet>& q) {
  if (op == PolyOp::Complement) return poly_complement(p);
  if (!q) throw PreconditionViolation("poly_combine: binary operation needs Q");
  switch (op) {
    case PolyOp::Union:
      return poly_union(p, *q);
    case PolyOp::Intersect:
      return poly_intersect(p, *q);
    case PolyOp::Product:
      return poly_product(p, *q);
    case PolyOp::Complement:
      break;
  }
  return poly_complement(p);
}

PolyhedralSet poly_preimage(const AffineMap& a, const PolyhedralSet& q) {
  check_dim(a.target_dim(), q.dim(), "poly_preimage");
  std::vector<BasicPolyhedral> out;
  for (const auto& basic : q.basics()) {
    BasicPolyhedral b;
    for (const auto& r : basic.regions) {
      ElementaryRegion s = r;
      s.u = left_multiply(r.u, a.matrix());
      s.a = r.a - dot(r.u, a.offset());
      if (s.kind == RegionKind::Congruence) s.a = mod_floor(s.a, s.b);
      b.regions.push_back(std::move(s));
    }
    push_basic(out, b);
  }
  return tidy(a.source_dim(), out);
}

std::vector<IntVec> poly_enumerate_box(const PolyhedralSet& p, const IntVec& lo,
                                       const IntVec& hi) {
  check_dim(lo.size(), p.dim(), "poly_enumerate_box");
  std::vector<IntVec> out;
  for_each_box_point(lo, hi, [&](const IntVec& z) {
    if (p.contains(z)) out.push_back(z);
  });
  return out;
}

}  // namespace vabset
