// SPDX-License-Identifier: Apache-2.0

#include "vabset/vabgroup.hpp"

#include <algorithm>
#include <cctype>
#include <queue>
#include <random>
#include <set>
#include <stdexcept>
#include <tuple>
#include <utility>

#include "vabset/semilinear.hpp"

namespace vabset {

bool GroupElement::operator<(const GroupElement& o) const {
  if (t != o.t) return t < o.t;
  return v < o.v;
}

namespace {

// Inverse over Z, or nullopt when the determinant is not +-1.
std::optional<IntMat> integer_inverse(const IntMat& m) {
  const std::size_t n = m.rows();
  std::vector<std::vector<Rat>> a(n, std::vector<Rat>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
    a[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[c]);
    const Rat inv = 1 / a[c][c];
    for (auto& x : a[c]) x *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Rat f = a[r][c];
      for (std::size_t j = 0; j < 2 * n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  IntMat out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (a[i][n + j].get_den() != 1) return std::nullopt;
      out(i, j) = a[i][n + j].get_num();
    }
  return out;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionViolation(what);
}

}  // namespace

VAGroup::VAGroup(std::size_t k, std::vector<std::string> transversal, std::vector<IntMat> action,
                 std::vector<std::vector<IntVec>> cocycle, std::vector<std::vector<std::size_t>> sigma,
                 std::vector<Generator> generators)
    : k_(k),
      labels_(std::move(transversal)),
      action_(std::move(action)),
      cocycle_(std::move(cocycle)),
      sigma_(std::move(sigma)),
      generators_(std::move(generators)) {
  const std::size_t d = labels_.size();
  require(d >= 1, "transversal is empty");
  require(std::set<std::string>(labels_.begin(), labels_.end()).size() == d, "duplicate transversal label");
  check_dim(action_.size(), d, "action list");
  check_dim(cocycle_.size(), d, "cocycle rows");
  check_dim(sigma_.size(), d, "sigma rows");
  for (std::size_t s = 0; s < d; ++s) {
    check_dim(action_[s].rows(), k, "action matrix");
    check_dim(action_[s].cols(), k, "action matrix");
    check_dim(cocycle_[s].size(), d, "cocycle row");
    check_dim(sigma_[s].size(), d, "sigma row");
    for (const auto& c : cocycle_[s]) check_dim(c.size(), k, "cocycle value");
    std::vector<bool> seen(d, false);
    for (std::size_t t : sigma_[s]) {
      require(t < d, "sigma entry out of range");
      require(!seen[t], "sigma row is not a permutation");
      seen[t] = true;
    }
    const auto inv = integer_inverse(action_[s]);
    require(inv.has_value(), "action of " + labels_[s] + " is not invertible over Z");
    inverse_action_.push_back(*inv);
  }
  require(action_[0] == IntMat::identity(k), "identity coset acts non-trivially");
  for (std::size_t s = 0; s < d; ++s) {
    require(sigma_[0][s] == s && sigma_[s][0] == s, "sigma is not unital");
    require(is_zero(cocycle_[0][s]) && is_zero(cocycle_[s][0]), "cocycle is not normalized");
    for (std::size_t t = 0; t < d; ++t)
      require(action_[s] * action_[t] == action_[sigma_[s][t]], "action is not a homomorphism");
  }
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t s = 0; s < d; ++s)
      for (std::size_t t = 0; t < d; ++t) {
        const IntVec left = cocycle_[r][s] + cocycle_[sigma_[r][s]][t];
        const IntVec right = action_[r] * cocycle_[s][t] + cocycle_[r][sigma_[s][t]];
        require(left == right, "multiplication is not associative on " + labels_[r] + "," + labels_[s] +
                                   "," + labels_[t]);
      }

  std::set<char> taken;
  for (const auto& l : labels_)
    if (l.size() == 1) taken.insert(static_cast<char>(std::tolower(static_cast<unsigned char>(l[0]))));
  for (char c = 'a'; c <= 'z' && pos_letters_.size() < k; ++c) {
    if (taken.count(c)) continue;
    pos_letters_.emplace_back(1, c);
    neg_letters_.emplace_back(1, static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  for (std::size_t i = pos_letters_.size(); i < k; ++i) {
    pos_letters_.push_back("x" + std::to_string(i + 1));
    neg_letters_.push_back("X" + std::to_string(i + 1));
  }

  std::map<Letter, GroupElement> defaults;
  for (std::size_t i = 0; i < k; ++i) {
    defaults[pos_letters_[i]] = translation(unit_vec(k, i));
    defaults[neg_letters_[i]] = translation(-unit_vec(k, i));
  }
  for (std::size_t t = 1; t < d; ++t) defaults[labels_[t]] = coset(t);
  if (generators_.empty()) {
    for (std::size_t i = 0; i < k; ++i) {
      generators_.push_back({pos_letters_[i], defaults[pos_letters_[i]], 1});
      generators_.push_back({neg_letters_[i], defaults[neg_letters_[i]], 1});
    }
    for (std::size_t t = 1; t < d; ++t) generators_.push_back({labels_[t], coset(t), 1});
  }
  std::set<Letter> names;
  for (const auto& g : generators_) {
    require(!g.name.empty() && g.name != "~", "generator name is empty");
    require(names.insert(g.name).second, "duplicate generator " + g.name);
    check_dim(g.value.v.size(), k, "generator");
    require(g.value.t < d, "generator coset out of range");
    require(g.weight > 0, "generator weight must be positive");
    const auto it = defaults.find(g.name);
    require(it == defaults.end() || it->second == g.value, "generator " + g.name + " shadows a default letter");
  }
}

WeightFn VAGroup::generator_weights() const {
  std::vector<Int> w;
  for (const auto& g : generators_) w.push_back(g.weight);
  return WeightFn(w);
}

std::size_t VAGroup::generator_index(const Letter& name) const {
  for (std::size_t i = 0; i < generators_.size(); ++i)
    if (generators_[i].name == name) return i;
  throw UnknownGenerator("unknown generator '" + name + "'");
}

std::optional<std::size_t> VAGroup::label_index(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  return std::nullopt;
}

GroupElement VAGroup::identity() const { return {zero_vec(k_), 0}; }

GroupElement VAGroup::translation(IntVec v) const {
  check_dim(v.size(), k_, "translation");
  return {std::move(v), 0};
}

GroupElement VAGroup::coset(std::size_t t) const {
  if (t >= labels_.size()) throw PreconditionViolation("coset index out of range");
  return {zero_vec(k_), t};
}

GroupElement VAGroup::multiply(const GroupElement& g, const GroupElement& h) const {
  check_dim(g.v.size(), k_, "group element");
  check_dim(h.v.size(), k_, "group element");
  return {g.v + action_.at(g.t) * h.v + cocycle(g.t, h.t), sigma(g.t, h.t)};
}

GroupElement VAGroup::inverse(const GroupElement& g) const {
  check_dim(g.v.size(), k_, "group element");
  std::size_t u = 0;
  while (sigma(g.t, u) != 0) ++u;
  return {-(inverse_action_[g.t] * (g.v + cocycle(g.t, u))), u};
}

GroupElement VAGroup::power(const GroupElement& g, std::size_t n) const {
  GroupElement out = identity();
  for (std::size_t i = 0; i < n; ++i) out = multiply(out, g);
  return out;
}

namespace {

std::vector<std::vector<IntVec>> zero_cocycle(std::size_t d, std::size_t k) {
  return std::vector<std::vector<IntVec>>(d, std::vector<IntVec>(d, zero_vec(k)));
}

IntMat diag(std::initializer_list<long> xs) {
  IntMat m(xs.size(), xs.size());
  std::size_t i = 0;
  for (long x : xs) {
    m(i, i) = x;
    ++i;
  }
  return m;
}

}  // namespace

VAGroup infinite_dihedral() {
  return VAGroup(1, {"e", "t"}, {diag({1}), diag({-1})}, zero_cocycle(2, 1), {{0, 1}, {1, 0}});
}

VAGroup klein_bottle() {
  auto c = zero_cocycle(2, 2);
  c[1][1] = {Int(0), Int(1)};
  return VAGroup(2, {"e", "s"}, {diag({1, 1}), diag({-1, 1})}, c, {{0, 1}, {1, 0}});
}

VAGroup free_abelian(std::size_t k) {
  return VAGroup(k, {"e"}, {IntMat::identity(k)}, zero_cocycle(1, k), {{0}});
}

VAGroup direct_product(const VAGroup& g, const VAGroup& h) {
  const std::size_t kg = g.rank(), kh = h.rank(), dg = g.degree(), dh = h.degree();
  const std::size_t k = kg + kh, d = dg * dh;
  std::vector<std::string> labels;
  std::vector<IntMat> action;
  for (std::size_t i = 0; i < dg; ++i)
    for (std::size_t j = 0; j < dh; ++j) {
      labels.push_back(g.transversal()[i] + "_" + h.transversal()[j]);
      IntMat m(k, k);
      for (std::size_t r = 0; r < kg; ++r)
        for (std::size_t c = 0; c < kg; ++c) m(r, c) = g.action(i)(r, c);
      for (std::size_t r = 0; r < kh; ++r)
        for (std::size_t c = 0; c < kh; ++c) m(kg + r, kg + c) = h.action(j)(r, c);
      action.push_back(m);
    }
  auto cocycle = zero_cocycle(d, k);
  std::vector<std::vector<std::size_t>> sigma(d, std::vector<std::size_t>(d));
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      const std::size_t ga = a / dh, ha = a % dh, gb = b / dh, hb = b % dh;
      IntVec c = g.cocycle(ga, gb);
      const IntVec& ch = h.cocycle(ha, hb);
      c.insert(c.end(), ch.begin(), ch.end());
      cocycle[a][b] = c;
      sigma[a][b] = g.sigma(ga, gb) * dh + h.sigma(ha, hb);
    }
  return VAGroup(k, labels, action, cocycle, sigma);
}

namespace {

// Value of a letter: a generator, or one of the default letters.
GroupElement letter_value(const VAGroup& g, const Letter& x) {
  for (const auto& gen : g.generators())
    if (gen.name == x) return gen.value;
  for (std::size_t i = 0; i < g.rank(); ++i) {
    if (x == g.positive_letter(i)) return g.translation(unit_vec(g.rank(), i));
    if (x == g.negative_letter(i)) return g.translation(-unit_vec(g.rank(), i));
  }
  if (const auto t = g.label_index(x); t && *t != 0) return g.coset(*t);
  throw UnknownGenerator("unknown generator '" + x + "'");
}

}  // namespace

GroupElement group_eval(const VAGroup& g, const Word& word) {
  GroupElement out = g.identity();
  for (const auto& x : word) out = g.multiply(out, letter_value(g, x));
  return out;
}

Word normal_form(const VAGroup& g, const GroupElement& x) {
  check_dim(x.v.size(), g.rank(), "group element");
  Word w;
  for (std::size_t i = 0; i < g.rank(); ++i) {
    const Letter& l = x.v[i] >= 0 ? g.positive_letter(i) : g.negative_letter(i);
    for (Int n = abs(x.v[i]); n > 0; --n) w.push_back(l);
  }
  if (x.t != 0) w.push_back(g.transversal()[x.t]);
  return w;
}

// ---------------------------------------------------------------------------
// Coset-wise polyhedral sets

CWPSet::CWPSet(std::shared_ptr<const VAGroup> group) : group_(std::move(group)) {
  for (std::size_t t = 0; t < group_->degree(); ++t) parts_.push_back(PolyhedralSet::empty(group_->rank()));
}

CWPSet::CWPSet(std::shared_ptr<const VAGroup> group, std::vector<PolyhedralSet> parts)
    : group_(std::move(group)), parts_(std::move(parts)) {
  check_dim(parts_.size(), group_->degree(), "coset parts");
  for (const auto& p : parts_) check_dim(p.dim(), group_->rank(), "coset part");
}

CWPSet CWPSet::full(std::shared_ptr<const VAGroup> group) {
  const std::size_t d = group->degree(), k = group->rank();
  return CWPSet(std::move(group), std::vector<PolyhedralSet>(d, PolyhedralSet::full(k)));
}

CWPSet CWPSet::singleton(std::shared_ptr<const VAGroup> group, const GroupElement& x) {
  const std::size_t k = group->rank();
  check_dim(x.v.size(), k, "group element");
  CWPSet out(std::move(group));
  std::vector<ElementaryRegion> regions;
  for (std::size_t i = 0; i < k; ++i) regions.push_back(ElementaryRegion::equation(unit_vec(k, i), x.v[i]));
  out.parts_.at(x.t) = PolyhedralSet::of(k, regions);
  return out;
}

bool CWPSet::contains(const GroupElement& x) const {
  check_dim(x.v.size(), group_->rank(), "group element");
  return parts_.at(x.t).contains(x.v);
}

namespace {

void same_group(const CWPSet& a, const CWPSet& b) {
  if (a.group_ptr() != b.group_ptr() && !(a.group() == b.group()))
    throw DimensionMismatch("sets live in different groups");
}

}  // namespace

CWPSet cwp_union(const CWPSet& a, const CWPSet& b) {
  same_group(a, b);
  std::vector<PolyhedralSet> parts;
  for (std::size_t t = 0; t < a.parts().size(); ++t) parts.push_back(poly_union(a.part(t), b.part(t)));
  return CWPSet(a.group_ptr(), parts);
}

CWPSet cwp_intersect(const CWPSet& a, const CWPSet& b) {
  same_group(a, b);
  std::vector<PolyhedralSet> parts;
  for (std::size_t t = 0; t < a.parts().size(); ++t) parts.push_back(poly_intersect(a.part(t), b.part(t)));
  return CWPSet(a.group_ptr(), parts);
}

CWPSet cwp_complement(const CWPSet& a) {
  std::vector<PolyhedralSet> parts;
  for (const auto& p : a.parts()) parts.push_back(poly_complement(p));
  return CWPSet(a.group_ptr(), parts);
}

CWPSet cwp_translate(const CWPSet& a, const GroupElement& g) {
  const VAGroup& grp = a.group();
  check_dim(g.v.size(), grp.rank(), "group element");
  std::vector<PolyhedralSet> parts(grp.degree(), PolyhedralSet::empty(grp.rank()));
  // (v, s) g = (v + M_s g.v + c(s, g.t), sigma(s, g.t)): a translation per coset.
  for (std::size_t s = 0; s < grp.degree(); ++s) {
    const GroupElement shifted = grp.multiply(grp.coset(s), g);
    parts[shifted.t] = poly_preimage(AffineMap::translation(-shifted.v), a.part(s));
  }
  return CWPSet(a.group_ptr(), parts);
}

CWPSet cwp_combine(CwpOp op, const CWPSet& a, const std::optional<CWPSet>& b,
                   const std::optional<GroupElement>& g) {
  switch (op) {
    case CwpOp::Union:
    case CwpOp::Intersect:
      if (!b) throw PreconditionViolation("binary set operation needs two operands");
      return op == CwpOp::Union ? cwp_union(a, *b) : cwp_intersect(a, *b);
    case CwpOp::Complement:
      return cwp_complement(a);
    case CwpOp::Translate:
      if (!g) throw PreconditionViolation("translate needs a group element");
      return cwp_translate(a, *g);
  }
  throw std::logic_error("unhandled set operation");
}

// ---------------------------------------------------------------------------
// Rational sets

namespace {

SemilinearSet point_set(const IntVec& v) { return SemilinearSet(v.size(), {LinearSet(v, {})}); }

// Minkowski sum.
SemilinearSet sl_sum(const SemilinearSet& a, const SemilinearSet& b) {
  std::vector<LinearSet> out;
  for (const auto& x : a.components())
    for (const auto& y : b.components()) {
      auto periods = x.periods;
      periods.insert(periods.end(), y.periods.begin(), y.periods.end());
      out.emplace_back(x.offset + y.offset, periods);
    }
  return sl_simplify(SemilinearSet(a.dim(), out));
}

// Submonoid generated by the set: (c + P*)* = {0} u (c + {c, P}*), and a
// union stars into the sum of the stars.
SemilinearSet sl_star(const SemilinearSet& s) {
  SemilinearSet out = point_set(zero_vec(s.dim()));
  for (const auto& l : s.components()) {
    auto periods = l.periods;
    periods.push_back(l.offset);
    SemilinearSet star(s.dim(), {LinearSet(zero_vec(s.dim()), {}), LinearSet(l.offset, periods)});
    out = sl_sum(out, star);
  }
  return out;
}

// Path-sum sets from `source` to each sink by state elimination. Labels are
// sets of vectors; absent entries are empty.
std::vector<SemilinearSet> path_sums(std::size_t k, std::vector<std::map<std::size_t, SemilinearSet>> out,
                                     std::size_t source, const std::vector<std::size_t>& sinks) {
  const std::size_t n = out.size();
  std::vector<std::set<std::size_t>> in(n);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& [j, _] : out[i]) in[j].insert(i);

  auto reach = [&](std::size_t from, bool forward) {
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{from};
    seen[from] = true;
    while (!stack.empty()) {
      const std::size_t x = stack.back();
      stack.pop_back();
      std::vector<std::size_t> next;
      if (forward)
        for (const auto& [j, _] : out[x]) next.push_back(j);
      else
        next.assign(in[x].begin(), in[x].end());
      for (std::size_t y : next)
        if (!seen[y]) seen[y] = true, stack.push_back(y);
    }
    return seen;
  };
  const auto fwd = reach(source, true);
  std::vector<bool> bwd(n, false);
  for (std::size_t s : sinks) {
    const auto b = reach(s, false);
    for (std::size_t i = 0; i < n; ++i) bwd[i] = bwd[i] || b[i];
  }
  std::set<std::size_t> keep_ends(sinks.begin(), sinks.end());
  keep_ends.insert(source);

  auto drop = [&](std::size_t m) {
    for (const auto& [j, _] : out[m]) in[j].erase(m);
    for (std::size_t i : in[m]) out[i].erase(m);
    out[m].clear();
    in[m].clear();
  };
  for (std::size_t m = 0; m < n; ++m)
    if (!fwd[m] || !bwd[m]) drop(m);

  for (std::size_t m = 0; m < n; ++m) {
    if (keep_ends.count(m) || !fwd[m] || !bwd[m]) continue;
    const auto loop = out[m].find(m);
    const SemilinearSet star = loop == out[m].end() ? point_set(zero_vec(k)) : sl_star(loop->second);
    const std::vector<std::size_t> preds(in[m].begin(), in[m].end());
    for (std::size_t i : preds) {
      if (i == m) continue;
      const SemilinearSet into = sl_sum(out[i].at(m), star);
      for (const auto& [j, label] : out[m]) {
        if (j == m) continue;
        SemilinearSet via = sl_sum(into, label);
        const auto it = out[i].find(j);
        if (it != out[i].end()) via = sl_simplify(sl_union(it->second, via));
        out[i].insert_or_assign(j, via);
        in[j].insert(i);
      }
    }
    drop(m);
  }

  const auto loop = out[source].find(source);
  const SemilinearSet star = loop == out[source].end() ? point_set(zero_vec(k)) : sl_star(loop->second);
  std::vector<SemilinearSet> result;
  for (std::size_t s : sinks) {
    const auto it = out[source].find(s);
    if (s == source)
      result.push_back(star);
    else
      result.push_back(it == out[source].end() ? SemilinearSet::empty(k) : sl_sum(star, it->second));
  }
  return result;
}

}  // namespace

CWPSet rational_to_cwp(std::shared_ptr<const VAGroup> group, const NFsa& language) {
  if (language.arity() != 1) throw DimensionMismatch("rational set needs a 1-fsa");
  const VAGroup& g = *group;
  const std::size_t k = g.rank(), d = g.degree(), q = language.num_states();
  // Nodes (state, coset) = state * d + coset, then a source and one sink per coset.
  const std::size_t source = q * d;
  std::vector<std::size_t> sinks;
  for (std::size_t t = 0; t < d; ++t) sinks.push_back(source + 1 + t);
  std::vector<std::map<std::size_t, SemilinearSet>> out(source + 1 + d);
  auto add = [&](std::size_t from, std::size_t to, const IntVec& delta) {
    const auto it = out[from].find(to);
    if (it == out[from].end())
      out[from].emplace(to, point_set(delta));
    else
      it->second = sl_simplify(sl_union(it->second, point_set(delta)));
  };

  std::map<Letter, GroupElement> values;
  for (const auto& x : language.alphabet()) values.emplace(x, letter_value(g, x));
  for (const auto& e : language.edges())
    for (std::size_t t = 0; t < d; ++t) {
      if (e.epsilon()) {
        add(e.from * d + t, e.to * d + t, zero_vec(k));
        continue;
      }
      const GroupElement step = g.multiply(g.coset(t), values.at(e.letter));
      add(e.from * d + t, e.to * d + step.t, step.v);
    }
  add(source, language.start() * d, zero_vec(k));
  for (std::size_t s : language.accept_states())
    for (std::size_t t = 0; t < d; ++t) add(s * d + t, sinks[t], zero_vec(k));

  const auto sums = path_sums(k, std::move(out), source, sinks);
  std::vector<PolyhedralSet> parts;
  for (const auto& s : sums) parts.push_back(sl_to_polyhedral(s));
  return CWPSet(std::move(group), parts);
}

namespace {

Word spell(const VAGroup& g, const IntVec& v) {
  Word w;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (Int n = abs(v[i]); n > 0; --n) w.push_back(v[i] > 0 ? g.positive_letter(i) : g.negative_letter(i));
  return w;
}

// Path from `from` spelling `w`, ending at `to` (a fresh state when unset).
std::size_t add_path(NFsa& a, std::size_t from, const Word& w, std::optional<std::size_t> to = std::nullopt) {
  if (w.empty()) {
    if (to) a.add_epsilon(from, *to);
    return to.value_or(from);
  }
  std::size_t cur = from;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const std::size_t next = (i + 1 == w.size() && to) ? *to : a.add_state();
    a.add_edge(cur, next, 0, w[i]);
    cur = next;
  }
  return cur;
}

}  // namespace

NFsa cwp_to_regular(const CWPSet& u) {
  const VAGroup& g = u.group();
  NFsa a(1);
  for (std::size_t t = 0; t < g.degree(); ++t) {
    if (u.part(t).is_syntactically_empty()) continue;
    for (const auto& [orthant, piece] : sl_monotone_decompose(poly_to_semilinear(u.part(t))))
      for (const auto& l : piece.components()) {
        const std::size_t hub = a.add_state();
        a.add_epsilon(a.start(), hub);
        const std::size_t at = add_path(a, hub, spell(g, l.offset));
        for (const auto& p : l.periods) add_path(a, at, spell(g, p), at);
        if (t == 0)
          a.set_accepting(at);
        else
          a.add_edge(at, a.add_state(true), 0, g.transversal()[t]);
      }
  }
  return a;
}

EDT0LSystem nf_edt0l(const CWPSet& u) {
  const VAGroup& g = u.group();
  std::vector<std::pair<Letter, Letter>> letters;
  for (std::size_t i = 0; i < g.rank(); ++i) letters.emplace_back(g.positive_letter(i), g.negative_letter(i));
  std::vector<EDT0LSystem> systems;
  for (std::size_t t = 0; t < g.degree(); ++t) {
    if (u.part(t).is_syntactically_empty()) continue;
    NFsa all(g.rank());
    for (const auto& [orthant, piece] : sl_monotone_decompose(poly_to_semilinear(u.part(t))))
      for (const auto& l : piece.components()) all = nfsa_union(all, nfk_from_monotone(l, letters));
    EDT0LSystem h = edt0l_from_nfsa(all);
    if (t != 0) h = edt0l_append(std::move(h), g.transversal()[t]);
    systems.push_back(std::move(h));
  }
  return edt0l_union(systems);
}

// ---------------------------------------------------------------------------
// Balls and growth

namespace {

std::map<GroupElement, Int> ball_over(const VAGroup& g, const std::vector<GroupElement>& gens,
                                      const std::vector<Int>& weights, const Int& radius) {
  std::map<GroupElement, Int> dist{{g.identity(), Int(0)}};
  std::set<std::pair<Int, GroupElement>> frontier{{Int(0), g.identity()}};
  while (!frontier.empty()) {
    const auto [dx, x] = *frontier.begin();
    frontier.erase(frontier.begin());
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const Int dy = dx + weights[i];
      if (dy > radius) continue;
      GroupElement y = g.multiply(x, gens[i]);
      const auto it = dist.find(y);
      if (it != dist.end() && it->second <= dy) continue;
      if (it != dist.end()) frontier.erase({it->second, y});
      dist[y] = dy;
      frontier.emplace(dy, std::move(y));
    }
  }
  return dist;
}

}  // namespace

std::map<GroupElement, Int> ball_lengths(const VAGroup& g, std::size_t radius) {
  std::vector<GroupElement> gens;
  std::vector<Int> weights;
  for (const auto& x : g.generators()) {
    gens.push_back(x.value);
    weights.push_back(x.weight);
  }
  return ball_over(g, gens, weights, Int(static_cast<unsigned long>(radius)));
}

CoefficientTable relative_growth_table(const CWPSet& u, std::size_t radius) {
  CoefficientTable table(radius + 1, Int(0));
  for (const auto& [x, n] : ball_lengths(u.group(), radius))
    if (u.contains(x)) table[n.get_ui()] += 1;
  return table;
}

GrowthSeries relative_growth_series(const CWPSet& u, std::size_t radius, std::size_t margin) {
  if (radius + 1 < margin) throw PreconditionViolation("radius too small for the fit margin");
  const std::size_t max_deg = (radius + 1 - margin) / 2;
  return growth_fit(relative_growth_table(u, radius), max_deg, margin);
}

// ---------------------------------------------------------------------------
// Extended generators and pattern maps

ExtendedGenerators extended_generators(const VAGroup& g, const std::vector<Letter>& sigma,
                                       const WeightFn& weights) {
  check_dim(weights.dim(), sigma.size(), "generator weights");
  if (sigma.empty()) throw PreconditionViolation("empty generating set");
  std::vector<GroupElement> values;
  Int max_weight = 0;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    values.push_back(letter_value(g, sigma[i]));
    if (weights[i] <= 0) throw PreconditionViolation("generator weight must be positive");
    max_weight = std::max(max_weight, weights[i]);
  }
  const std::size_t d = g.degree();
  const Int probe = max_weight * static_cast<unsigned long>(d + g.rank());
  const auto ball = ball_over(g, values, weights.weights(), probe);
  std::vector<GroupElement> needed;
  for (std::size_t i = 0; i < g.rank(); ++i) needed.push_back(g.translation(unit_vec(g.rank(), i)));
  for (std::size_t t = 1; t < d; ++t) needed.push_back(g.coset(t));
  for (const auto& x : needed)
    if (!ball.count(x)) throw PreconditionViolation("generating set does not reach every default generator");

  ExtendedGenerators s;
  std::vector<std::vector<std::size_t>> layer{{}};
  for (std::size_t len = 1; len <= d; ++len) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& w : layer)
      for (std::size_t i = 0; i < sigma.size(); ++i) {
        auto x = w;
        x.push_back(i);
        Word word;
        Int weight = 0;
        GroupElement value = g.identity();
        for (std::size_t j : x) {
          word.push_back(sigma[j]);
          weight += weights[j];
          value = g.multiply(value, values[j]);
        }
        (value.t == 0 ? s.x_part : s.y_part).push_back(s.words.size());
        s.words.push_back(word);
        s.values.push_back(value);
        s.weights.push_back(weight);
        next.push_back(std::move(x));
      }
    layer = std::move(next);
  }
  std::vector<std::vector<std::size_t>> patterns{{}};
  s.patterns.push_back({});
  for (std::size_t len = 1; len <= d; ++len) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& p : patterns)
      for (std::size_t y : s.y_part) {
        auto x = p;
        x.push_back(y);
        s.patterns.push_back(x);
        next.push_back(std::move(x));
      }
    patterns = std::move(next);
  }
  return s;
}

namespace {

std::size_t exponent_count(const ExtendedGenerators& s, const std::vector<std::size_t>& pattern) {
  return s.x_part.size() * (pattern.size() + 1);
}

void check_exponents(const ExtendedGenerators& s, const std::vector<std::size_t>& pattern, const IntVec& e) {
  check_dim(e.size(), exponent_count(s, pattern), "exponent vector");
  for (const auto& x : e)
    if (x < 0) throw PreconditionViolation("negative exponent");
}

GroupElement pattern_value(const VAGroup& g, const ExtendedGenerators& s, const std::vector<std::size_t>& pattern,
                           const IntVec& e) {
  check_exponents(s, pattern, e);
  const std::size_t r = s.x_part.size();
  GroupElement out = g.identity();
  for (std::size_t b = 0; b <= pattern.size(); ++b) {
    for (std::size_t j = 0; j < r; ++j)
      out = g.multiply(out, g.power(s.values[s.x_part[j]], e[b * r + j].get_ui()));
    if (b < pattern.size()) out = g.multiply(out, s.values[pattern[b]]);
  }
  return out;
}

}  // namespace

Word patterned_word(const ExtendedGenerators& s, const std::vector<std::size_t>& pattern, const IntVec& e) {
  check_exponents(s, pattern, e);
  const std::size_t r = s.x_part.size();
  Word w;
  for (std::size_t b = 0; b <= pattern.size(); ++b) {
    for (std::size_t j = 0; j < r; ++j)
      for (Int n = e[b * r + j]; n > 0; --n) {
        const Word& x = s.words[s.x_part[j]];
        w.insert(w.end(), x.begin(), x.end());
      }
    if (b < pattern.size()) w.insert(w.end(), s.words[pattern[b]].begin(), s.words[pattern[b]].end());
  }
  return w;
}

std::size_t pattern_map_violations(const VAGroup& g, const ExtendedGenerators& s,
                                   const std::vector<std::size_t>& pattern, const PatternMap& pm,
                                   std::size_t trials, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<long> exp(0, 3);
  std::size_t bad = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    IntVec e;
    for (std::size_t j = 0; j < exponent_count(s, pattern); ++j) e.emplace_back(exp(rng));
    const GroupElement got = group_eval(g, patterned_word(s, pattern, e));
    if (!(got == GroupElement{affine_apply(pm.map, e), pm.coset})) ++bad;
  }
  return bad;
}

PatternMap derive_pattern_map(const VAGroup& g, const ExtendedGenerators& s, const std::vector<std::size_t>& pattern,
                              std::size_t trials, unsigned seed) {
  for (std::size_t y : pattern)
    if (y >= s.words.size() || s.values[y].t == 0) throw PreconditionViolation("pattern letter outside Y");
  const std::size_t m = exponent_count(s, pattern);
  const GroupElement base = pattern_value(g, s, pattern, zero_vec(m));
  std::vector<IntVec> columns;
  for (std::size_t j = 0; j < m; ++j) columns.push_back(pattern_value(g, s, pattern, unit_vec(m, j)).v - base.v);
  PatternMap pm{AffineMap(IntMat::from_columns(columns, g.rank()), base.v), base.t};
  if (pattern_map_violations(g, s, pattern, pm, trials, seed) != 0)
    throw AffinenessViolation("pattern map disagrees with evaluation");
  return pm;
}

// ---------------------------------------------------------------------------
// Subgroups, conjugacy and representatives

Subgroup::Subgroup(const VAGroup& g, const std::vector<GroupElement>& generators)
    : group_(&g), reps_(g.degree()) {
  for (const auto& x : generators) check_dim(x.v.size(), g.rank(), "subgroup generator");
  // Schreier generators r x rep(r x)^{-1} span the lattice part.
  std::vector<IntVec> schreier;
  std::queue<std::size_t> todo;
  reps_[0] = g.identity();
  todo.push(0);
  while (!todo.empty()) {
    const std::size_t t = todo.front();
    todo.pop();
    for (const auto& x : generators) {
      const GroupElement y = g.multiply(*reps_[t], x);
      if (!reps_[y.t]) {
        reps_[y.t] = y;
        todo.push(y.t);
      } else {
        schreier.push_back(g.multiply(y, g.inverse(*reps_[y.t])).v);
      }
    }
  }
  lattice_ = lattice_basis(schreier, g.rank());
}

bool Subgroup::contains(const GroupElement& x) const {
  check_dim(x.v.size(), group_->rank(), "group element");
  if (!reps_.at(x.t)) return false;
  return in_lattice(lattice_, group_->multiply(x, group_->inverse(*reps_[x.t])).v);
}

bool conjugacy_test(const VAGroup& g, const GroupElement& x, const GroupElement& y) {
  check_dim(x.v.size(), g.rank(), "group element");
  check_dim(y.v.size(), g.rank(), "group element");
  const std::size_t k = g.rank();
  // (w, s) x (w, s)^{-1} is affine in w for each coset s.
  auto conj = [&](const IntVec& w, std::size_t s) {
    const GroupElement c{w, s};
    return g.multiply(g.multiply(c, x), g.inverse(c));
  };
  for (std::size_t s = 0; s < g.degree(); ++s) {
    const GroupElement base = conj(zero_vec(k), s);
    if (base.t != y.t) continue;
    std::vector<IntVec> columns;
    for (std::size_t j = 0; j < k; ++j) columns.push_back(conj(unit_vec(k, j), s).v - base.v);
    if (snf_solve(IntMat::from_columns(columns, k), y.v - base.v)) return true;
  }
  return false;
}

std::map<Word, std::vector<std::size_t>> GeodesicRepSet::by_pattern() const {
  std::map<Word, std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < reps.size(); ++i) out[reps[i].pattern].push_back(i);
  return out;
}

namespace {

using IndexWord = std::vector<std::size_t>;

// Shortlex-least geodesic of every ball element as generator indices;
// prefixes of such words are again shortlex-least geodesics.
std::map<GroupElement, IndexWord> shortlex_indices(const VAGroup& g, const std::map<GroupElement, Int>& lengths) {
  std::vector<std::pair<Int, GroupElement>> order;
  for (const auto& [x, n] : lengths) order.emplace_back(n, x);
  std::sort(order.begin(), order.end());
  const auto& gens = g.generators();
  std::vector<GroupElement> inverses;
  for (const auto& x : gens) inverses.push_back(g.inverse(x.value));
  std::map<GroupElement, IndexWord> best;
  for (const auto& [n, x] : order) {
    if (n == 0) {
      best[x] = {};
      continue;
    }
    std::optional<IndexWord> pick;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const auto it = lengths.find(g.multiply(x, inverses[i]));
      if (it == lengths.end() || it->second + gens[i].weight != n) continue;
      IndexWord w = best.at(it->first);
      w.push_back(i);
      if (!pick || w < *pick) pick = std::move(w);
    }
    best[x] = *pick;
  }
  return best;
}

Word to_names(const VAGroup& g, const IndexWord& w) {
  Word out;
  for (std::size_t i : w) out.push_back(g.generators()[i].name);
  return out;
}

}  // namespace

std::map<GroupElement, Word> shortlex_geodesics(const VAGroup& g, std::size_t radius) {
  std::map<GroupElement, Word> out;
  for (const auto& [x, w] : shortlex_indices(g, ball_lengths(g, radius))) out[x] = to_names(g, w);
  return out;
}

GeodesicRepSet geodesic_reps(const VAGroup& g, RepKind kind, std::size_t radius,
                             const std::vector<GroupElement>& subgroup) {
  const auto lengths = ball_lengths(g, radius);
  const auto words = shortlex_indices(g, lengths);
  std::vector<std::tuple<Int, IndexWord, GroupElement>> order;
  for (const auto& [x, w] : words) order.emplace_back(lengths.at(x), w, x);
  std::sort(order.begin(), order.end());

  const Subgroup h(g, subgroup);
  GeodesicRepSet out;
  out.kind = kind;
  out.radius = radius;
  for (const auto& [n, w, x] : order) {
    bool fresh = true;
    for (const auto& r : out.reps) {
      if (kind == RepKind::Elements) break;
      if (kind == RepKind::Cosets)
        fresh = !h.contains(g.multiply(g.inverse(r.value), x));
      else if (kind == RepKind::ConjugacyClasses)
        fresh = !conjugacy_test(g, r.value, x);
      if (!fresh) break;
    }
    if (!fresh) continue;
    Representative rep{to_names(g, w), x, n, {}};
    Int weight = 0;
    for (std::size_t i : w) {
      weight += g.generators()[i].weight;
      if (g.generators()[i].value.t != 0) rep.pattern.push_back(g.generators()[i].name);
    }
    if (weight != lengths.at(x) || !(group_eval(g, rep.word) == x))
      throw std::logic_error("representative is not geodesic");
    out.reps.push_back(std::move(rep));
  }
  return out;
}

}  // namespace vabset
