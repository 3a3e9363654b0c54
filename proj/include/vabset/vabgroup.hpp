// SPDX-License-Identifier: Apache-2.0
//
// Virtually abelian groups given as finite extensions of Z^k, coset-wise
// polyhedral subsets, and their normal-form and growth machinery.

#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vabset/automata.hpp"
#include "vabset/growth.hpp"
#include "vabset/lattice.hpp"
#include "vabset/polyhedral.hpp"

namespace vabset {

class UnknownGenerator : public Error {
 public:
  using Error::Error;
};

/// Pattern map disagrees with evaluation: the group data is inconsistent.
class AffinenessViolation : public Error {
 public:
  using Error::Error;
};

/// (v, t) stands for v * t with v in Z^k and t a transversal index.
struct GroupElement {
  IntVec v;
  std::size_t t = 0;

  bool operator==(const GroupElement& other) const = default;
  bool operator<(const GroupElement& other) const;
};

struct Generator {
  Letter name;
  GroupElement value;
  Int weight = 1;

  bool operator==(const Generator& other) const = default;
};

/// Extension 1 -> Z^k -> G -> Delta -> 1 with t_i t_j = c(i, j) t_{sigma(i, j)}
/// and t v t^{-1} = M_t v. Index 0 is the identity coset.
class VAGroup {
 public:
  /// Validates the extension data exhaustively. Without explicit generators
  /// the set {+-e_i} followed by the non-trivial transversal is used.
  VAGroup(std::size_t k, std::vector<std::string> transversal, std::vector<IntMat> action,
          std::vector<std::vector<IntVec>> cocycle, std::vector<std::vector<std::size_t>> sigma,
          std::vector<Generator> generators = {});

  std::size_t rank() const { return k_; }
  std::size_t degree() const { return labels_.size(); }
  const std::vector<std::string>& transversal() const { return labels_; }
  const IntMat& action(std::size_t t) const { return action_.at(t); }
  const IntVec& cocycle(std::size_t s, std::size_t t) const { return cocycle_.at(s).at(t); }
  std::size_t sigma(std::size_t s, std::size_t t) const { return sigma_.at(s).at(t); }
  const std::vector<Generator>& generators() const { return generators_; }
  WeightFn generator_weights() const;

  std::size_t generator_index(const Letter& name) const;
  std::optional<std::size_t> label_index(const std::string& label) const;

  GroupElement identity() const;
  GroupElement translation(IntVec v) const;
  GroupElement coset(std::size_t t) const;
  GroupElement multiply(const GroupElement& g, const GroupElement& h) const;
  GroupElement inverse(const GroupElement& g) const;
  GroupElement power(const GroupElement& g, std::size_t n) const;

  /// Default letters for e_i and -e_i. Coset letters are the transversal labels.
  const Letter& positive_letter(std::size_t i) const { return pos_letters_.at(i); }
  const Letter& negative_letter(std::size_t i) const { return neg_letters_.at(i); }

  bool operator==(const VAGroup& other) const = default;

 private:
  std::size_t k_;
  std::vector<std::string> labels_;
  std::vector<IntMat> action_;
  std::vector<IntMat> inverse_action_;
  std::vector<std::vector<IntVec>> cocycle_;
  std::vector<std::vector<std::size_t>> sigma_;
  std::vector<Generator> generators_;
  std::vector<Letter> pos_letters_, neg_letters_;
};

/// Infinite dihedral group: k = 1, t acting by -1, t^2 = 1.
VAGroup infinite_dihedral();
/// Klein bottle group: k = 2, s acting by diag(-1, 1), s^2 = (0, 1).
VAGroup klein_bottle();
/// Z^k with the trivial transversal.
VAGroup free_abelian(std::size_t k);
/// G x H with transversal T_G x T_H labelled "s_t".
VAGroup direct_product(const VAGroup& g, const VAGroup& h);

GroupElement group_eval(const VAGroup& g, const Word& word);

/// a_1^{v_1} ... a_k^{v_k} t, with A_i for negative exponents and no letter
/// for the identity coset.
Word normal_form(const VAGroup& g, const GroupElement& x);

/// Coset-wise polyhedral set: the union of V_t * t.
class CWPSet {
 public:
  /// Empty set.
  explicit CWPSet(std::shared_ptr<const VAGroup> group);
  CWPSet(std::shared_ptr<const VAGroup> group, std::vector<PolyhedralSet> parts);

  static CWPSet full(std::shared_ptr<const VAGroup> group);
  static CWPSet singleton(std::shared_ptr<const VAGroup> group, const GroupElement& x);

  const VAGroup& group() const { return *group_; }
  const std::shared_ptr<const VAGroup>& group_ptr() const { return group_; }
  const PolyhedralSet& part(std::size_t t) const { return parts_.at(t); }
  const std::vector<PolyhedralSet>& parts() const { return parts_; }
  bool contains(const GroupElement& x) const;

 private:
  std::shared_ptr<const VAGroup> group_;
  std::vector<PolyhedralSet> parts_;
};

enum class CwpOp { Union, Intersect, Complement, Translate };

CWPSet cwp_union(const CWPSet& a, const CWPSet& b);
CWPSet cwp_intersect(const CWPSet& a, const CWPSet& b);
CWPSet cwp_complement(const CWPSet& a);
/// Right translate U * g.
CWPSet cwp_translate(const CWPSet& a, const GroupElement& g);
CWPSet cwp_combine(CwpOp op, const CWPSet& a, const std::optional<CWPSet>& b = std::nullopt,
                   const std::optional<GroupElement>& g = std::nullopt);

/// Image in G of the language of a 1-fsa over generator names.
CWPSet rational_to_cwp(std::shared_ptr<const VAGroup> group, const NFsa& language);

/// 1-fsa over the default generators whose image is U. Every accepted word
/// spells a monotone vector followed by at most one coset letter.
NFsa cwp_to_regular(const CWPSet& u);

/// EDT0L system for the normal forms of the elements of U.
EDT0LSystem nf_edt0l(const CWPSet& u);

/// Weighted word length of every element of the ball, by Dijkstra over the
/// generators.
std::map<GroupElement, Int> ball_lengths(const VAGroup& g, std::size_t radius);

CoefficientTable relative_growth_table(const CWPSet& u, std::size_t radius);
/// Fits a rational series to the table with the given margin.
GrowthSeries relative_growth_series(const CWPSet& u, std::size_t radius, std::size_t margin = 5);

/// Words of length 1..d over sigma, kept as formal words, split by whether
/// they evaluate into Z^k.
struct ExtendedGenerators {
  std::vector<Word> words;
  std::vector<GroupElement> values;
  std::vector<Int> weights;
  std::vector<std::size_t> x_part;
  std::vector<std::size_t> y_part;
  /// Every sequence over y_part of length <= d, as indices into words.
  std::vector<std::vector<std::size_t>> patterns;
};

/// `sigma` lists generator names of G with their weights.
ExtendedGenerators extended_generators(const VAGroup& g, const std::vector<Letter>& sigma,
                                       const WeightFn& weights);

/// Spells the patterned word for a pattern and its x-block exponents, laid
/// out as in pattern_exponent_tape.
Word patterned_word(const ExtendedGenerators& s, const std::vector<std::size_t>& pattern,
                    const IntVec& exponents);

struct PatternMap {
  AffineMap map;
  std::size_t coset;
};

/// Affine map from exponent vectors of pi-patterned words to the Z^k part,
/// certified on `trials` random exponent vectors.
PatternMap derive_pattern_map(const VAGroup& g, const ExtendedGenerators& s,
                              const std::vector<std::size_t>& pattern, std::size_t trials = 50,
                              unsigned seed = 1);

/// Number of random patterned words whose evaluation disagrees with the map.
std::size_t pattern_map_violations(const VAGroup& g, const ExtendedGenerators& s,
                                   const std::vector<std::size_t>& pattern, const PatternMap& pm,
                                   std::size_t trials, unsigned seed);

/// Finitely generated subgroup stored as its lattice part and one
/// representative per coset label it meets.
class Subgroup {
 public:
  Subgroup(const VAGroup& g, const std::vector<GroupElement>& generators);

  bool contains(const GroupElement& x) const;
  const std::vector<IntVec>& lattice() const { return lattice_; }

 private:
  const VAGroup* group_;
  std::vector<std::optional<GroupElement>> reps_;
  std::vector<IntVec> lattice_;
};

bool conjugacy_test(const VAGroup& g, const GroupElement& x, const GroupElement& y);

enum class RepKind { Elements, Cosets, ConjugacyClasses };

struct Representative {
  Word word;
  GroupElement value;
  Int length;
  /// Letters of the word outside Z^k, in order.
  Word pattern;
};

struct GeodesicRepSet {
  RepKind kind = RepKind::Elements;
  std::size_t radius = 0;
  std::vector<Representative> reps;

  std::map<Word, std::vector<std::size_t>> by_pattern() const;
};

/// Shortlex-least geodesic word of every element of the ball.
std::map<GroupElement, Word> shortlex_geodesics(const VAGroup& g, std::size_t radius);

/// One shortlex-first geodesic per element, left coset gH or conjugacy
/// class met within the radius. `subgroup` is required for cosets.
GeodesicRepSet geodesic_reps(const VAGroup& g, RepKind kind, std::size_t radius,
                             const std::vector<GroupElement>& subgroup = {});

}  // namespace vabset
