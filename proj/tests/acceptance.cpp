// SPDX-License-Identifier: Apache-2.0
//
// End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.

#include <chrono>
#include <exception>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "test_util.hpp"
#include "vabset/automata.hpp"
#include "vabset/growth.hpp"
#include "vabset/polyhedral.hpp"
#include "vabset/semilinear.hpp"
#include "vabset/vabgroup.hpp"

namespace vabset {
namespace {

using R = ElementaryRegion;
using testing::iv;

// Tolerances. Every comparison below is exact; these pin sizes and budgets.
constexpr double kFreeAbelianSeconds = 10.0;
constexpr std::size_t kGrowthTerms = 20;
constexpr std::size_t kPolyCorpus = 100;
constexpr long kPolyBox = 10;
constexpr std::size_t kRandomAutomata = 50;
constexpr std::size_t kEdt0lLength = 10;
constexpr std::size_t kNormalFormLength = 12;
constexpr std::size_t kCwpPerGroup = 30;
constexpr std::size_t kCwpBall = 8;
constexpr std::size_t kFitRadius = 15, kFitMargin = 5, kFitCheckFrom = 16, kFitCheckTo = 20;
constexpr std::size_t kCertificationWords = 50;
constexpr std::size_t kRepRadius = 6, kConjugacyBall = 4, kConjugatorBall = 8;
constexpr std::size_t kLinearSets = 50;
constexpr long kLinindepNorm = 30;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void fail(const std::string& why) {
    if (pass) detail << why;
    pass = false;
  }
};

using Shared = std::shared_ptr<const VAGroup>;
Shared share(VAGroup g) { return std::make_shared<const VAGroup>(std::move(g)); }

// ---- criterion 1

Poly power(const Poly& p, std::size_t k) {
  Poly out{Int(1)};
  for (std::size_t i = 0; i < k; ++i) out = poly_mul(out, p);
  return out;
}

void free_abelian_growth(Outcome& o) {
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t k = 1; k <= 3; ++k) {
    const GrowthSeries s = growth_series(SemilinearSet::full(k), WeightFn::unit(k));
    if (s.num != power({Int(1), Int(1)}, k) || s.den != power({Int(1), Int(-1)}, k))
      o.fail("k=" + std::to_string(k) + " gives " + format_series(s.num, s.den));
    const CoefficientTable brute = growth_enumerate(SemilinearSet::full(k), WeightFn::unit(k), kGrowthTerms);
    if (s.expand_int(kGrowthTerms + 1) != brute) o.fail("k=" + std::to_string(k) + " expansion differs");
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs >= kFreeAbelianSeconds) o.fail("took " + std::to_string(secs) + " s");
  o.detail << (o.pass ? "" : "; ") << secs << " s";
}

// ---- criteria 2 and 3

struct PolyCase {
  PolyhedralSet poly;
  SemilinearSet semi;
};

const std::vector<PolyCase>& poly_corpus() {
  static const std::vector<PolyCase> corpus = [] {
    testing::Rng rng(2024);
    std::vector<PolyCase> out;
    for (std::size_t i = 0; i < kPolyCorpus; ++i) {
      const std::size_t k = rng.range(1, 3);
      const PolyhedralSet p = testing::random_poly(rng, k, rng.range(1, 3), 3, 4);
      out.push_back({p, poly_to_semilinear(p)});
    }
    return out;
  }();
  return corpus;
}

void poly_round_trip(Outcome& o) {
  std::size_t mismatches = 0, points = 0;
  for (const auto& c : poly_corpus()) {
    const PolyhedralSet back = sl_to_polyhedral(c.semi);
    const std::size_t k = c.poly.dim();
    for_each_box_point(testing::box_lo(k, kPolyBox), testing::box_hi(k, kPolyBox), [&](const IntVec& z) {
      ++points;
      if (back.contains(z) != c.poly.contains(z)) ++mismatches;
    });
  }
  if (mismatches) o.fail("membership mismatches");
  o.detail << (o.pass ? "" : ": ") << mismatches << " mismatches over " << points << " points";
}

// A component lies in orthant O exactly when its offset does and every period
// points into O. Such a component only reaches points that dominate its
// offset coordinatewise away from the origin, which prunes the box scan.
bool inside_orthant(const LinearSet& l, const OrthantIndex& o) {
  if (!o.contains(l.offset)) return false;
  for (const auto& p : l.periods)
    for (std::size_t i = 0; i < p.size(); ++i)
      if (o.nonneg[i] ? p[i] < 0 : p[i] > 0) return false;
  return true;
}

bool may_reach(const LinearSet& l, const OrthantIndex& o, const IntVec& z) {
  for (std::size_t i = 0; i < z.size(); ++i)
    if (o.nonneg[i] ? z[i] < l.offset[i] : z[i] > l.offset[i]) return false;
  return true;
}

struct Candidate {
  LinearSet component;
  PolyhedralSet members;
  bool confined;
};

void monotone_pieces(Outcome& o) {
  std::size_t violations = 0, pieces_seen = 0, components = 0;
  for (const auto& c : poly_corpus()) {
    const std::size_t k = c.poly.dim();
    const auto pieces = sl_monotone_decompose(c.semi);
    std::set<std::vector<bool>> orthants;
    std::vector<std::vector<Candidate>> candidates(pieces.size());
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      const auto& [orthant, piece] = pieces[i];
      IntVec corner;
      for (std::size_t j = 0; j < k; ++j) corner.emplace_back(orthant.nonneg[j] ? kPolyBox : -kPolyBox);
      ++pieces_seen;
      if (!orthants.insert(orthant.nonneg).second) ++violations;
      for (const auto& comp : piece.components()) {
        ++components;
        const bool confined = inside_orthant(comp, orthant);
        if (!confined) ++violations;
        if (confined && !may_reach(comp, orthant, corner)) continue;
        candidates[i].push_back({comp, sl_to_polyhedral(SemilinearSet(k, {comp})), confined});
      }
    }
    for_each_box_point(testing::box_lo(k, kPolyBox), testing::box_hi(k, kPolyBox), [&](const IntVec& z) {
      std::size_t hits = 0;
      for (std::size_t i = 0; i < pieces.size(); ++i) {
        for (const auto& cand : candidates[i]) {
          if (cand.confined && !may_reach(cand.component, pieces[i].first, z)) continue;
          if (!cand.members.contains(z)) continue;
          ++hits;
          if (!pieces[i].first.contains(z)) ++violations;
          break;
        }
      }
      if (hits > 1 || (hits == 1) != c.poly.contains(z)) ++violations;
    });
  }
  if (violations) o.fail("disjointness, orthant or cover violations");
  o.detail << (o.pass ? "" : ": ") << violations << " violations over " << pieces_seen << " pieces, " << components
           << " components";
}

// ---- criterion 4

NFsa random_nfsa(testing::Rng& rng, std::size_t arity, std::size_t states) {
  NFsa a(arity);
  for (std::size_t s = 1; s < states; ++s) a.add_state(rng.coin());
  a.set_accepting(0, rng.range(0, 3) == 0);
  if (a.accept_states().empty()) a.set_accepting(states - 1);
  for (long i = 0, n = rng.range(2, 6); i < n; ++i) {
    const std::size_t from = rng.range(0, states - 1), to = rng.range(0, states - 1);
    if (rng.range(0, 4) == 0)
      a.add_epsilon(from, to);
    else
      a.add_edge(from, to, rng.range(0, arity - 1), rng.coin() ? "a" : "b");
  }
  return a;
}

void nfsa_to_edt0l(Outcome& o) {
  testing::Rng rng(4);
  std::vector<NFsa> automata{balanced_pair_automaton()};
  for (std::size_t i = 0; i < kRandomAutomata; ++i) automata.push_back(random_nfsa(rng, rng.range(1, 3), rng.range(1, 4)));
  std::size_t words = 0;
  for (std::size_t i = 0; i < automata.size(); ++i) {
    std::set<Word> theta;
    for (const auto& t : nfsa_enumerate(automata[i], kEdt0lLength)) theta.insert(flatten(t));
    const std::set<Word> got = edt0l_enumerate(edt0l_from_nfsa(automata[i]), kEdt0lLength);
    words += theta.size();
    if (got != theta) o.fail("automaton " + std::to_string(i) + " differs");
  }
  o.detail << (o.pass ? "" : "; ") << automata.size() << " automata, " << words << " words";
}

// ---- criterion 5

std::set<Word> filtered_normal_forms(const CWPSet& u, std::size_t maxlen) {
  const VAGroup& g = u.group();
  std::set<Word> out;
  const long r = static_cast<long>(maxlen);
  for_each_box_point(testing::box_lo(g.rank(), r), testing::box_hi(g.rank(), r), [&](const IntVec& v) {
    for (std::size_t t = 0; t < g.degree(); ++t) {
      const Word nf = normal_form(g, {v, t});
      if (nf.size() <= maxlen && u.contains({v, t})) out.insert(nf);
    }
  });
  return out;
}

void normal_form_pipeline(Outcome& o) {
  const auto z = share(free_abelian(1));
  const auto dinf = share(infinite_dihedral());
  const auto klein = share(klein_bottle());
  const std::vector<std::pair<std::string, CWPSet>> sets{
      {"even integers", CWPSet(z, {PolyhedralSet::of(1, {R::congruence(iv({1}), 0, 2)})})},
      {"positive integers", CWPSet(z, {PolyhedralSet::of(1, {R::greater(iv({1}), 0)})})},
      {"single reflection", CWPSet(dinf, {PolyhedralSet::empty(1), PolyhedralSet::of(1, {R::equation(iv({1}), 1)})})},
      {"Klein quadrant",
       CWPSet(klein, {PolyhedralSet::of(2, {R::at_least(iv({1, 0}), 0), R::at_least(iv({0, 1}), 0)}),
                      PolyhedralSet::empty(2)})},
  };
  std::size_t words = 0;
  for (const auto& [name, u] : sets) {
    const std::set<Word> expected = filtered_normal_forms(u, kNormalFormLength);
    words += expected.size();
    if (edt0l_enumerate(nf_edt0l(u), kNormalFormLength) != expected) o.fail(name + " differs");
  }
  o.detail << (o.pass ? "" : "; ") << words << " normal forms";
}

// ---- criterion 6

ElementaryRegion random_region(testing::Rng& rng, std::size_t k) {
  IntVec u = rng.vec(k, 3);
  if (is_zero(u)) u[0] = 1;
  switch (rng.range(0, 3)) {
    case 0:
      return R::congruence(u, rng.range(0, 2), rng.range(2, 3));
    case 1:
      return R::equation(u, rng.range(-3, 3));
    default:
      return R::greater(u, rng.range(-3, 3));
  }
}

CWPSet random_cwp(testing::Rng& rng, const Shared& g) {
  std::vector<PolyhedralSet> parts;
  for (std::size_t t = 0; t < g->degree(); ++t) {
    std::vector<BasicPolyhedral> basics;
    for (long b = 0, n = rng.range(0, 2); b < n; ++b) {
      BasicPolyhedral basic;
      for (long r = 0, m = rng.range(1, 2); r < m; ++r) basic.regions.push_back(random_region(rng, g->rank()));
      basics.push_back(basic);
    }
    parts.emplace_back(g->rank(), basics);
  }
  return CWPSet(g, parts);
}

void cwp_round_trip(Outcome& o) {
  testing::Rng rng(6);
  std::size_t mismatches = 0;
  for (const auto& g : {share(infinite_dihedral()), share(klein_bottle())}) {
    const auto ball = ball_lengths(*g, kCwpBall);
    for (std::size_t i = 0; i < kCwpPerGroup; ++i) {
      const CWPSet u = random_cwp(rng, g);
      const CWPSet back = rational_to_cwp(g, cwp_to_regular(u));
      for (const auto& [x, n] : ball)
        if (back.contains(x) != u.contains(x)) ++mismatches;
    }
  }
  if (mismatches) o.fail("round-trip mismatches");

  const auto dinf = share(infinite_dihedral());
  NFsa at(1);
  at.set_accepting(0);
  const std::size_t mid = at.add_state();
  at.add_edge(0, mid, 0, "a");
  at.add_edge(mid, 0, 0, "t");
  const CWPSet image = rational_to_cwp(dinf, at);
  const GroupElement reflection{iv({1}), 1};
  for (const auto& [x, n] : ball_lengths(*dinf, kCwpBall))
    if (image.contains(x) != (x == dinf->identity() || x == reflection)) o.fail("image of (at)* is wrong");
  o.detail << (o.pass ? "" : "; ") << mismatches << " mismatches";
}

// ---- criterion 7

void check_fit(Outcome& o, const std::string& name, const CWPSet& u, const Poly& num, const Poly& den) {
  const GrowthSeries fit = relative_growth_series(u, kFitRadius, kFitMargin);
  if (fit.num != num || fit.den != den) {
    o.fail(name + " fits " + format_series(fit.num, fit.den));
    return;
  }
  const CoefficientTable table = relative_growth_table(u, kFitCheckTo);
  const CoefficientTable series = fit.expand_int(kFitCheckTo + 1);
  for (std::size_t n = kFitCheckFrom; n <= kFitCheckTo; ++n)
    if (series[n] != table[n]) o.fail(name + " differs at radius " + std::to_string(n));
}

void relative_growth(Outcome& o) {
  const auto dinf = share(infinite_dihedral());
  const CWPSet full = CWPSet::full(dinf);
  const CoefficientTable head = relative_growth_table(full, 3);
  if (head != CoefficientTable{Int(1), Int(3), Int(4), Int(4)}) o.fail("ball counts do not start 1, 3, 4, 4");
  check_fit(o, "full group", full, {Int(1), Int(2), Int(1)}, {Int(1), Int(-1)});
  const auto z = share(free_abelian(1));
  check_fit(o, "even subgroup", CWPSet(z, {PolyhedralSet::of(1, {R::congruence(iv({1}), 0, 2)})}),
            {Int(1), Int(0), Int(1)}, {Int(1), Int(0), Int(-1)});
  if (o.pass) o.detail << "both fits exact through radius " << kFitCheckTo;
}

// ---- criterion 8

void pattern_certification(Outcome& o) {
  const std::vector<std::pair<VAGroup, std::vector<Letter>>> groups{
      {infinite_dihedral(), {"a", "A", "t"}},
      {klein_bottle(), {"a", "A", "b", "B", "s"}},
  };
  std::size_t patterns = 0, violations = 0;
  for (const auto& [g, sigma] : groups) {
    const ExtendedGenerators s = extended_generators(g, sigma, WeightFn::unit(sigma.size()));
    for (const auto& p : s.patterns) {
      ++patterns;
      const PatternMap pm = derive_pattern_map(g, s, p);
      violations += pattern_map_violations(g, s, p, pm, kCertificationWords, 8);
    }
  }
  if (violations) o.fail("affineness violations");
  o.detail << (o.pass ? "" : ": ") << violations << " violations over " << patterns << " patterns";
}

// ---- criterion 9

void conjugacy(Outcome& o) {
  const VAGroup dinf = infinite_dihedral();
  std::set<std::pair<GroupElement, long>> expected{{dinf.identity(), 0}, {{iv({0}), 1}, 1}, {{iv({1}), 1}, 2}};
  for (long n = 1; n <= static_cast<long>(kRepRadius); ++n) expected.insert({{iv({n}), 0}, n});
  std::set<std::pair<GroupElement, long>> got;
  const auto reps = geodesic_reps(dinf, RepKind::ConjugacyClasses, kRepRadius);
  for (const auto& r : reps.reps) got.insert({r.value, r.length.get_si()});
  if (got != expected || reps.reps.size() != expected.size()) o.fail("representatives differ");

  const auto small = ball_lengths(dinf, kConjugacyBall);
  const auto conjugators = ball_lengths(dinf, kConjugatorBall);
  std::size_t pairs = 0, mismatches = 0;
  for (const auto& [x, n] : small)
    for (const auto& [y, m] : small) {
      bool oracle = false;
      for (const auto& [c, len] : conjugators)
        oracle = oracle || dinf.multiply(dinf.multiply(c, x), dinf.inverse(c)) == y;
      ++pairs;
      if (conjugacy_test(dinf, x, y) != oracle) ++mismatches;
    }
  if (mismatches) o.fail("conjugacy test disagrees with the ball");
  o.detail << (o.pass ? "" : "; ") << reps.reps.size() << " classes, " << mismatches << " mismatches over " << pairs
           << " pairs";
}

// ---- criterion 10

// Rank of at most two vectors in dimension at most two, by determinants.
bool independent(const std::vector<IntVec>& b, std::size_t k) {
  if (b.size() > k) return false;
  if (b.size() == 1) return !is_zero(b[0]);
  if (b.size() == 2) return b[0][0] * b[1][1] - b[0][1] * b[1][0] != 0;
  return true;
}

void linindep(Outcome& o) {
  testing::Rng rng(10);
  std::size_t bad_rank = 0, mismatches = 0, components = 0;
  for (std::size_t i = 0; i < kLinearSets; ++i) {
    const std::size_t k = rng.range(1, 2);
    std::vector<IntVec> periods;
    for (long j = 0, m = rng.range(1, 4); j < m; ++j) {
      const IntVec p = rng.vec(k, 3);
      if (!is_zero(p)) periods.push_back(p);
    }
    const LinearSet l(rng.vec(k, 3), periods);
    const SemilinearSet whole(k, {l});
    const SemilinearSet d = sl_decompose_linindep(l);
    for (const auto& c : d.components()) {
      ++components;
      if (!independent(c.periods, k)) ++bad_rank;
    }
    const long r = kLinindepNorm;
    for_each_box_point(testing::box_lo(k, r), testing::box_hi(k, r), [&](const IntVec& z) {
      Int norm = 0;
      for (const Int& x : z) norm += abs(x);
      if (norm <= r && sl_contains(d, z) != sl_contains(whole, z)) ++mismatches;
    });
    // Independent of the membership routine: generated points are members.
    const long bound = periods.size() <= 2 ? 30 : periods.size() == 3 ? 12 : 6;
    for (const auto& z : testing::bounded_points(l.offset, l.periods, bound, r))
      if (!sl_contains(d, z)) ++mismatches;
  }
  if (bad_rank) o.fail("dependent periods");
  if (mismatches) o.fail("set mismatch");
  o.detail << (o.pass ? "" : "; ") << components << " components, " << bad_rank << " rank failures, " << mismatches
           << " mismatches";
}

}  // namespace
}  // namespace vabset

int main() {
  using namespace vabset;
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"free abelian growth series", free_abelian_growth},
      {"polyhedral and semilinear round trip", poly_round_trip},
      {"monotone decomposition", monotone_pieces},
      {"automaton to EDT0L", nfsa_to_edt0l},
      {"normal form EDT0L pipeline", normal_form_pipeline},
      {"rational and coset-wise polyhedral equivalence", cwp_round_trip},
      {"relative growth fits", relative_growth},
      {"pattern map certification", pattern_certification},
      {"conjugacy representatives", conjugacy},
      {"linearly independent decomposition", linindep},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << i + 1 << " " << criteria[i].first << " (" << o.detail.str()
              << "; " << secs << " s)" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
