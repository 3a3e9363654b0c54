// SPDX-License-Identifier: Apache-2.0
//
// Asynchronous n-variable finite automata and EDT0L systems.

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "vabset/lattice.hpp"
#include "vabset/semilinear.hpp"

namespace vabset {

using Letter = std::string;
using Word = std::vector<Letter>;
using WordTuple = std::vector<Word>;

/// Edge reading `letter` on tape `coord`; coord < 0 marks an all-epsilon edge.
struct NfsaEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  int coord = -1;
  Letter letter;

  bool epsilon() const { return coord < 0; }
  bool operator==(const NfsaEdge& other) const = default;
};

class NFsa {
 public:
  /// One non-accepting start state and no edges: the empty language.
  explicit NFsa(std::size_t arity = 1);

  std::size_t arity() const { return arity_; }
  std::size_t num_states() const { return accepting_.size(); }
  std::size_t start() const { return start_; }
  const std::vector<NfsaEdge>& edges() const { return edges_; }
  bool accepting(std::size_t s) const { return accepting_.at(s); }
  std::vector<std::size_t> accept_states() const;
  /// Letters used on edges, sorted.
  std::vector<Letter> alphabet() const;

  std::size_t add_state(bool accepting = false);
  void set_accepting(std::size_t s, bool accepting = true);
  void set_start(std::size_t s);
  void add_edge(std::size_t from, std::size_t to, std::size_t coord, Letter letter);
  void add_epsilon(std::size_t from, std::size_t to);
  /// Widens every label with trailing epsilon entries.
  void pad_arity(std::size_t arity);

  bool operator==(const NFsa& other) const = default;

 private:
  std::size_t arity_;
  std::size_t start_ = 0;
  std::vector<bool> accepting_;
  std::vector<NfsaEdge> edges_;
};

/// Pairs of words over {a, b} with the same number of a's, the a's read
/// alternately on tape 1 and tape 2. Two states, each with b-loops on both
/// tapes.
NFsa balanced_pair_automaton();

bool nfsa_accepts(const NFsa& a, const WordTuple& t);

/// Accepted tuples with total letter count <= maxlen.
std::set<WordTuple> nfsa_enumerate(const NFsa& a, std::size_t maxlen);

using Substitution = std::map<Letter, Word>;

NFsa nfsa_union(const NFsa& a, const NFsa& b);
NFsa nfsa_concat(const NFsa& a, const NFsa& b);
/// Replaces each letter x by the word f(x) on the same tape; letters
/// missing from f are kept.
NFsa nfsa_substitute(const NFsa& a, const Substitution& f);

enum class NfsaOp { Union, Concat, Substitute };

NFsa nfsa_combine(NfsaOp op, const NFsa& a, const std::optional<NFsa>& b = std::nullopt,
                  const Substitution& f = {});

/// Concatenation of the tapes of a tuple.
Word flatten(const WordTuple& t);

/// Normal-form automaton of a monotone linear set c + {d_j}*: a path spelling
/// c into a hub state with one loop per period. Tape i spells s_i^{|z_i|}
/// where s_i is letters[i].first on the nonnegative side, .second otherwise.
NFsa nfk_from_monotone(const LinearSet& x, const std::vector<std::pair<Letter, Letter>>& letters);

/// Tape layout of a pattern automaton: exponent j = b*r + s (block b,
/// generator s) lives on tape b*(r+1) + s and pattern letter b on tape
/// b*(r+1) + r.
std::size_t pattern_exponent_tape(std::size_t j, std::size_t r);
std::size_t pattern_letter_tape(std::size_t b, std::size_t r);

/// Automaton accepting psi(v) for v in the union of the components, where
/// psi(v) interleaves x-blocks x_1^{v..} ... x_r^{v..} with the pattern
/// letters. Components live in N^{r(|pattern|+1)}.
NFsa pattern_automaton(const Word& pattern, const std::vector<LinearSet>& components,
                       const Word& x_generators);

/// Substitution table c -> image covering the whole extended alphabet.
using Endomorphism = std::map<Letter, Word>;

struct EDT0LSystem {
  std::vector<Letter> terminals;
  std::vector<Letter> extended;  // terminals first, then non-terminals
  Word start;
  std::vector<Endomorphism> table;
  /// 1-fsa whose letters are table indices written in decimal.
  NFsa control;

  bool operator==(const EDT0LSystem& other) const = default;

  bool is_terminal(const Letter& c) const;
  /// Index of an endomorphism, interning it when new.
  std::size_t intern(const Endomorphism& e);
};

enum class ForgetMode { Forget, Hash };

inline const Letter kHashLetter = "#";

/// Non-terminal names "$1".."$n" for tapes 1..n.
Letter tape_marker(std::size_t i);

EDT0LSystem edt0l_from_nfsa(const NFsa& a, ForgetMode mode = ForgetMode::Forget);

/// Terminal words phi(start) of length <= maxlen over accepted controls.
std::set<Word> edt0l_enumerate(const EDT0LSystem& h, std::size_t maxlen);

/// Union of languages: systems are renamed apart and reached from a fresh
/// start symbol.
EDT0LSystem edt0l_union(const std::vector<EDT0LSystem>& systems);

/// Appends a terminal letter to every word of the language.
EDT0LSystem edt0l_append(EDT0LSystem h, const Letter& letter);

/// Tuple label as "(w1,...,wn)" with "~" for epsilon.
std::string edge_label(const NFsa& a, const NfsaEdge& e);
std::string nfsa_to_dot(const NFsa& a, const std::string& name = "nfsa");
std::string edt0l_to_dot(const EDT0LSystem& h);

std::string word_to_string(const Word& w);
/// Splits on spaces when present, otherwise one letter per character;
/// "~" and "" denote the empty word.
Word word_from_string(const std::string& s);

}  // namespace vabset
