// SPDX-License-Identifier: Apache-2.0

#include "vabset/automata.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace vabset {

NFsa::NFsa(std::size_t arity) : arity_(arity), accepting_(1, false) {}

std::vector<std::size_t> NFsa::accept_states() const {
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < accepting_.size(); ++s)
    if (accepting_[s]) out.push_back(s);
  return out;
}

std::vector<Letter> NFsa::alphabet() const {
  std::set<Letter> seen;
  for (const auto& e : edges_)
    if (!e.epsilon()) seen.insert(e.letter);
  return {seen.begin(), seen.end()};
}

std::size_t NFsa::add_state(bool accepting) {
  accepting_.push_back(accepting);
  return accepting_.size() - 1;
}

void NFsa::set_accepting(std::size_t s, bool accepting) { accepting_.at(s) = accepting; }

void NFsa::set_start(std::size_t s) {
  if (s >= num_states()) throw PreconditionViolation("start state out of range");
  start_ = s;
}

void NFsa::add_edge(std::size_t from, std::size_t to, std::size_t coord, Letter letter) {
  if (from >= num_states() || to >= num_states()) throw PreconditionViolation("edge state out of range");
  if (coord >= arity_) throw DimensionMismatch("edge tape " + std::to_string(coord) + " >= arity");
  if (letter.empty()) throw PreconditionViolation("edge letter must be nonempty");
  edges_.push_back({from, to, static_cast<int>(coord), std::move(letter)});
}

void NFsa::add_epsilon(std::size_t from, std::size_t to) {
  if (from >= num_states() || to >= num_states()) throw PreconditionViolation("edge state out of range");
  edges_.push_back({from, to, -1, {}});
}

void NFsa::pad_arity(std::size_t arity) {
  if (arity < arity_) throw DimensionMismatch("cannot shrink arity");
  arity_ = arity;
}

NFsa balanced_pair_automaton() {
  NFsa a(2);
  a.set_accepting(0);
  const std::size_t s1 = a.add_state();
  for (std::size_t s : {std::size_t{0}, s1}) {
    a.add_edge(s, s, 0, "b");
    a.add_edge(s, s, 1, "b");
  }
  a.add_edge(0, s1, 0, "a");
  a.add_edge(s1, 0, 1, "a");
  return a;
}

namespace {

// Letters as single char codes so that words become std::string keys.
class Codec {
 public:
  char encode(const Letter& l) {
    auto it = codes_.find(l);
    if (it != codes_.end()) return it->second;
    if (letters_.size() >= 255) throw Error("too many distinct letters");
    const char c = static_cast<char>(letters_.size() + 1);
    codes_.emplace(l, c);
    letters_.push_back(l);
    return c;
  }
  std::optional<char> find(const Letter& l) const {
    auto it = codes_.find(l);
    if (it == codes_.end()) return std::nullopt;
    return it->second;
  }
  const Letter& decode(char c) const { return letters_[static_cast<unsigned char>(c) - 1]; }
  Word decode(const std::string& s) const {
    Word w;
    for (char c : s) w.push_back(decode(c));
    return w;
  }

 private:
  std::map<Letter, char> codes_;
  std::vector<Letter> letters_;
};

std::vector<std::vector<std::size_t>> out_edges(const NFsa& a) {
  std::vector<std::vector<std::size_t>> out(a.num_states());
  for (std::size_t i = 0; i < a.edges().size(); ++i) out[a.edges()[i].from].push_back(i);
  return out;
}

}  // namespace

bool nfsa_accepts(const NFsa& a, const WordTuple& t) {
  check_dim(t.size(), a.arity(), "nfsa_accepts tuple");
  const auto out = out_edges(a);
  using Node = std::pair<std::size_t, std::vector<std::size_t>>;
  std::set<Node> seen;
  std::deque<Node> queue;
  queue.emplace_back(a.start(), std::vector<std::size_t>(a.arity(), 0));
  seen.insert(queue.front());
  while (!queue.empty()) {
    auto [s, pos] = queue.front();
    queue.pop_front();
    bool done = a.accepting(s);
    for (std::size_t i = 0; i < t.size() && done; ++i) done = pos[i] == t[i].size();
    if (done) return true;
    for (std::size_t ei : out[s]) {
      const auto& e = a.edges()[ei];
      Node next{e.to, pos};
      if (!e.epsilon()) {
        const auto c = static_cast<std::size_t>(e.coord);
        if (pos[c] >= t[c].size() || t[c][pos[c]] != e.letter) continue;
        ++next.second[c];
      }
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  return false;
}

std::set<WordTuple> nfsa_enumerate(const NFsa& a, std::size_t maxlen) {
  Codec codec;
  std::vector<char> code(a.edges().size(), 0);
  for (std::size_t i = 0; i < a.edges().size(); ++i)
    if (!a.edges()[i].epsilon()) code[i] = codec.encode(a.edges()[i].letter);
  const auto out = out_edges(a);
  using Tapes = std::vector<std::string>;
  std::set<std::pair<std::size_t, Tapes>> seen;
  std::deque<std::pair<std::size_t, Tapes>> queue;
  queue.emplace_back(a.start(), Tapes(a.arity()));
  seen.insert(queue.front());
  std::set<WordTuple> result;
  while (!queue.empty()) {
    auto [s, tapes] = queue.front();
    queue.pop_front();
    std::size_t total = 0;
    for (const auto& tp : tapes) total += tp.size();
    if (a.accepting(s)) {
      WordTuple t;
      for (const auto& tp : tapes) t.push_back(codec.decode(tp));
      result.insert(std::move(t));
    }
    for (std::size_t ei : out[s]) {
      const auto& e = a.edges()[ei];
      std::pair<std::size_t, Tapes> next{e.to, tapes};
      if (!e.epsilon()) {
        if (total + 1 > maxlen) continue;
        next.second[static_cast<std::size_t>(e.coord)].push_back(code[ei]);
      }
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  return result;
}

namespace {

// Copies b's states and edges into a, returning the state offset.
std::size_t embed(NFsa& a, const NFsa& b) {
  const std::size_t offset = a.num_states();
  for (std::size_t s = 0; s < b.num_states(); ++s) a.add_state(false);
  for (const auto& e : b.edges()) {
    if (e.epsilon())
      a.add_epsilon(e.from + offset, e.to + offset);
    else
      a.add_edge(e.from + offset, e.to + offset, static_cast<std::size_t>(e.coord), e.letter);
  }
  return offset;
}

}  // namespace

NFsa nfsa_union(const NFsa& a, const NFsa& b) {
  NFsa out(std::max(a.arity(), b.arity()));
  const std::size_t oa = embed(out, a), ob = embed(out, b);
  const std::size_t final_state = out.add_state(true);
  out.add_epsilon(0, a.start() + oa);
  out.add_epsilon(0, b.start() + ob);
  for (std::size_t s : a.accept_states()) out.add_epsilon(s + oa, final_state);
  for (std::size_t s : b.accept_states()) out.add_epsilon(s + ob, final_state);
  return out;
}

NFsa nfsa_concat(const NFsa& a, const NFsa& b) {
  check_dim(b.arity(), a.arity(), "nfsa_concat arity");
  NFsa out(a.arity());
  const std::size_t oa = embed(out, a), ob = embed(out, b);
  out.add_epsilon(0, a.start() + oa);
  for (std::size_t s : a.accept_states()) out.add_epsilon(s + oa, b.start() + ob);
  for (std::size_t s : b.accept_states()) out.set_accepting(s + ob);
  return out;
}

NFsa nfsa_substitute(const NFsa& a, const Substitution& f) {
  NFsa out(a.arity());
  for (std::size_t s = 1; s < a.num_states(); ++s) out.add_state(false);
  out.set_start(a.start());
  for (std::size_t s : a.accept_states()) out.set_accepting(s);
  for (const auto& e : a.edges()) {
    if (e.epsilon()) {
      out.add_epsilon(e.from, e.to);
      continue;
    }
    const auto c = static_cast<std::size_t>(e.coord);
    auto it = f.find(e.letter);
    if (it == f.end()) {
      out.add_edge(e.from, e.to, c, e.letter);
      continue;
    }
    const Word& img = it->second;
    if (img.empty()) {
      out.add_epsilon(e.from, e.to);
      continue;
    }
    std::size_t cur = e.from;
    for (std::size_t i = 0; i < img.size(); ++i) {
      const std::size_t next = i + 1 == img.size() ? e.to : out.add_state(false);
      out.add_edge(cur, next, c, img[i]);
      cur = next;
    }
  }
  return out;
}

NFsa nfsa_combine(NfsaOp op, const NFsa& a, const std::optional<NFsa>& b, const Substitution& f) {
  switch (op) {
    case NfsaOp::Union:
      if (!b) throw PreconditionViolation("union needs a second automaton");
      return nfsa_union(a, *b);
    case NfsaOp::Concat:
      if (!b) throw PreconditionViolation("concat needs a second automaton");
      return nfsa_concat(a, *b);
    case NfsaOp::Substitute:
      return nfsa_substitute(a, f);
  }
  throw PreconditionViolation("unknown operation");
}

Word flatten(const WordTuple& t) {
  Word w;
  for (const auto& part : t) w.insert(w.end(), part.begin(), part.end());
  return w;
}

namespace {

using Steps = std::vector<std::pair<std::size_t, Letter>>;

// Path from `from` spelling the steps; ends at `to` when given, else at a
// fresh state. Returns the end state.
std::size_t add_path(NFsa& a, std::size_t from, const Steps& steps,
                     std::optional<std::size_t> to = std::nullopt) {
  if (steps.empty()) {
    if (!to) return from;
    a.add_epsilon(from, *to);
    return *to;
  }
  std::size_t cur = from;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const std::size_t next = (i + 1 == steps.size() && to) ? *to : a.add_state(false);
    a.add_edge(cur, next, steps[i].first, steps[i].second);
    cur = next;
  }
  return cur;
}

Steps monotone_steps(const IntVec& v, const OrthantIndex& o,
                     const std::vector<std::pair<Letter, Letter>>& letters) {
  Steps steps;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Letter& l = o.nonneg[i] ? letters[i].first : letters[i].second;
    for (Int n = abs(v[i]); n > 0; --n) steps.emplace_back(i, l);
  }
  return steps;
}

}  // namespace

NFsa nfk_from_monotone(const LinearSet& x, const std::vector<std::pair<Letter, Letter>>& letters) {
  check_dim(letters.size(), x.dim(), "nfk_from_monotone letters");
  const auto o = monotone_orthant(x);
  if (!o) throw PreconditionViolation("linear set is not monotone");
  NFsa a(x.dim());
  const std::size_t hub = add_path(a, a.start(), monotone_steps(x.offset, *o, letters));
  a.set_accepting(hub);
  for (const auto& d : x.periods) add_path(a, hub, monotone_steps(d, *o, letters), hub);
  return a;
}

std::size_t pattern_exponent_tape(std::size_t j, std::size_t r) { return (j / r) * (r + 1) + j % r; }
std::size_t pattern_letter_tape(std::size_t b, std::size_t r) { return b * (r + 1) + r; }

NFsa pattern_automaton(const Word& pattern, const std::vector<LinearSet>& components,
                       const Word& x_generators) {
  const std::size_t r = x_generators.size();
  const std::size_t m = r * (pattern.size() + 1);
  NFsa a(m + pattern.size());
  const std::size_t accept = a.add_state(true);
  auto steps_of = [&](const IntVec& v) {
    Steps steps;
    for (std::size_t j = 0; j < m; ++j) {
      if (v[j] < 0) throw PreconditionViolation("pattern component leaves N^m");
      for (Int n = v[j]; n > 0; --n) steps.emplace_back(pattern_exponent_tape(j, r), x_generators[j % r]);
    }
    return steps;
  };
  Steps tail;
  for (std::size_t b = 0; b < pattern.size(); ++b) tail.emplace_back(pattern_letter_tape(b, r), pattern[b]);
  for (const auto& c : components) {
    check_dim(c.dim(), m, "pattern component");
    const std::size_t entry = a.add_state(false);
    a.add_epsilon(a.start(), entry);
    std::size_t cur = add_path(a, entry, steps_of(c.offset));
    for (const auto& p : c.periods) {
      const std::size_t mark = a.add_state(false);
      a.add_epsilon(cur, mark);
      add_path(a, mark, steps_of(p), mark);
      cur = mark;
    }
    add_path(a, cur, tail, accept);
  }
  return a;
}

bool EDT0LSystem::is_terminal(const Letter& c) const {
  return std::find(terminals.begin(), terminals.end(), c) != terminals.end();
}

std::size_t EDT0LSystem::intern(const Endomorphism& e) {
  auto it = std::find(table.begin(), table.end(), e);
  if (it != table.end()) return static_cast<std::size_t>(it - table.begin());
  table.push_back(e);
  return table.size() - 1;
}

Letter tape_marker(std::size_t i) { return "$" + std::to_string(i); }

namespace {

Endomorphism identity_on(const std::vector<Letter>& alphabet) {
  Endomorphism e;
  for (const auto& c : alphabet) e[c] = {c};
  return e;
}

}  // namespace

EDT0LSystem edt0l_from_nfsa(const NFsa& a, ForgetMode mode) {
  const std::size_t n = a.arity();
  EDT0LSystem h;
  h.terminals = a.alphabet();
  if (mode == ForgetMode::Hash && !h.is_terminal(kHashLetter)) h.terminals.push_back(kHashLetter);
  h.extended = h.terminals;
  for (std::size_t i = 1; i <= n; ++i) {
    h.extended.push_back(tape_marker(i));
    h.start.push_back(tape_marker(i));
  }
  const Endomorphism id = identity_on(h.extended);

  h.control = NFsa(1);
  for (std::size_t s = 1; s < a.num_states(); ++s) h.control.add_state(false);
  h.control.set_start(a.start());
  for (const auto& e : a.edges()) {
    if (e.epsilon()) {
      h.control.add_epsilon(e.from, e.to);
      continue;
    }
    Endomorphism phi = id;
    const Letter marker = tape_marker(static_cast<std::size_t>(e.coord) + 1);
    phi[marker] = {e.letter, marker};
    h.control.add_edge(e.from, e.to, 0, std::to_string(h.intern(phi)));
  }
  Endomorphism last = id;
  for (std::size_t i = 1; i <= n; ++i)
    last[tape_marker(i)] = (mode == ForgetMode::Hash && i < n) ? Word{kHashLetter} : Word{};
  const std::size_t last_index = h.intern(last);
  const std::size_t final_state = h.control.add_state(true);
  for (std::size_t s : a.accept_states())
    h.control.add_edge(s, final_state, 0, std::to_string(last_index));
  return h;
}

std::set<Word> edt0l_enumerate(const EDT0LSystem& h, std::size_t maxlen) {
  Codec codec;
  for (const auto& c : h.extended) codec.encode(c);
  std::vector<bool> terminal(h.extended.size() + 1, false);
  for (const auto& t : h.terminals) terminal[static_cast<unsigned char>(codec.encode(t))] = true;
  auto encode = [&](const Word& w) {
    std::string s;
    for (const auto& c : w) {
      const auto code = codec.find(c);
      if (!code) throw PreconditionViolation("letter '" + c + "' outside the extended alphabet");
      s.push_back(*code);
    }
    return s;
  };
  // images[t][c] = image of letter code c under endomorphism t
  std::vector<std::vector<std::string>> images;
  bool non_erasing = true;
  for (const auto& e : h.table) {
    std::vector<std::string> img(h.extended.size() + 1);
    for (const auto& c : h.extended) {
      auto it = e.find(c);
      if (it == e.end()) throw PreconditionViolation("endomorphism does not cover '" + c + "'");
      img[static_cast<unsigned char>(*codec.find(c))] = encode(it->second);
    }
    for (const auto& t : h.terminals) {
      const auto& w = img[static_cast<unsigned char>(*codec.find(t))];
      if (std::none_of(w.begin(), w.end(), [&](char c) { return terminal[static_cast<unsigned char>(c)]; }))
        non_erasing = false;
    }
    images.push_back(std::move(img));
  }
  const std::size_t nonterminals = h.extended.size() - h.terminals.size();
  const std::size_t cap = maxlen + nonterminals + h.start.size();
  auto terminal_count = [&](const std::string& f) {
    return static_cast<std::size_t>(
        std::count_if(f.begin(), f.end(), [&](char c) { return terminal[static_cast<unsigned char>(c)]; }));
  };

  std::vector<std::vector<std::size_t>> out(h.control.num_states());
  for (std::size_t i = 0; i < h.control.edges().size(); ++i) out[h.control.edges()[i].from].push_back(i);
  std::vector<std::size_t> edge_table(h.control.edges().size(), 0);
  for (std::size_t i = 0; i < h.control.edges().size(); ++i) {
    const auto& e = h.control.edges()[i];
    if (e.epsilon()) continue;
    const std::size_t idx = std::stoul(e.letter);
    if (idx >= h.table.size()) throw PreconditionViolation("control letter outside the table");
    edge_table[i] = idx;
  }

  std::set<std::pair<std::size_t, std::string>> seen;
  std::deque<std::pair<std::size_t, std::string>> queue;
  queue.emplace_back(h.control.start(), encode(h.start));
  seen.insert(queue.front());
  std::set<Word> result;
  while (!queue.empty()) {
    auto [s, form] = queue.front();
    queue.pop_front();
    if (h.control.accepting(s) && form.size() <= maxlen && terminal_count(form) == form.size())
      result.insert(codec.decode(form));
    for (std::size_t ei : out[s]) {
      const auto& e = h.control.edges()[ei];
      std::pair<std::size_t, std::string> next{e.to, {}};
      if (e.epsilon()) {
        next.second = form;
      } else {
        const auto& img = images[edge_table[ei]];
        for (char c : form) next.second += img[static_cast<unsigned char>(c)];
        if (next.second.size() > cap) continue;
        if (non_erasing && terminal_count(next.second) > maxlen) continue;
      }
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  return result;
}

EDT0LSystem edt0l_union(const std::vector<EDT0LSystem>& systems) {
  EDT0LSystem u;
  u.control = NFsa(1);
  const Letter start_symbol = "$S";
  std::vector<std::map<Letter, Letter>> rename(systems.size());
  std::set<Letter> terminals;
  for (const auto& h : systems) terminals.insert(h.terminals.begin(), h.terminals.end());
  u.terminals.assign(terminals.begin(), terminals.end());
  u.extended = u.terminals;
  for (std::size_t i = 0; i < systems.size(); ++i)
    for (const auto& c : systems[i].extended) {
      if (systems[i].is_terminal(c)) continue;
      rename[i][c] = "$" + std::to_string(i) + "." + c;
      u.extended.push_back(rename[i][c]);
    }
  u.extended.push_back(start_symbol);
  u.start = {start_symbol};
  const Endomorphism id = identity_on(u.extended);
  auto lift = [&](std::size_t i, const Word& w) {
    Word out;
    for (const auto& c : w) out.push_back(rename[i].count(c) ? rename[i].at(c) : c);
    return out;
  };
  for (std::size_t i = 0; i < systems.size(); ++i) {
    const auto& h = systems[i];
    std::vector<std::size_t> table_map;
    for (const auto& e : h.table) {
      Endomorphism lifted = id;
      for (const auto& [c, img] : e) lifted[rename[i].count(c) ? rename[i].at(c) : c] = lift(i, img);
      table_map.push_back(u.intern(lifted));
    }
    const std::size_t base = u.control.num_states();
    for (std::size_t s = 0; s < h.control.num_states(); ++s) u.control.add_state(false);
    for (const auto& e : h.control.edges()) {
      if (e.epsilon())
        u.control.add_epsilon(e.from + base, e.to + base);
      else
        u.control.add_edge(e.from + base, e.to + base, 0,
                           std::to_string(table_map.at(std::stoul(e.letter))));
    }
    for (std::size_t s : h.control.accept_states()) u.control.set_accepting(s + base);
    Endomorphism enter = id;
    enter[start_symbol] = lift(i, h.start);
    u.control.add_edge(0, h.control.start() + base, 0, std::to_string(u.intern(enter)));
  }
  return u;
}

EDT0LSystem edt0l_append(EDT0LSystem h, const Letter& letter) {
  if (!h.is_terminal(letter)) {
    if (std::find(h.extended.begin(), h.extended.end(), letter) != h.extended.end())
      throw PreconditionViolation("'" + letter + "' is a non-terminal");
    h.extended.insert(h.extended.begin() + static_cast<std::ptrdiff_t>(h.terminals.size()), letter);
    h.terminals.push_back(letter);
    for (auto& e : h.table) e[letter] = {letter};
  }
  h.start.push_back(letter);
  return h;
}

std::string edge_label(const NFsa& a, const NfsaEdge& e) {
  std::string out = "(";
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (i) out += ",";
    out += (!e.epsilon() && static_cast<std::size_t>(e.coord) == i) ? e.letter : "~";
  }
  return out + ")";
}

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string nfsa_to_dot(const NFsa& a, const std::string& name) {
  std::ostringstream out;
  out << "digraph " << name << " {\n  rankdir=LR;\n  __start [shape=point];\n";
  for (std::size_t s = 0; s < a.num_states(); ++s)
    out << "  q" << s << " [shape=" << (a.accepting(s) ? "doublecircle" : "circle") << "];\n";
  out << "  __start -> q" << a.start() << ";\n";
  for (const auto& e : a.edges())
    out << "  q" << e.from << " -> q" << e.to << " [label=\"" << escape(edge_label(a, e)) << "\"];\n";
  out << "}\n";
  return out.str();
}

std::string word_to_string(const Word& w) {
  if (w.empty()) return "~";
  const bool single = std::all_of(w.begin(), w.end(), [](const Letter& l) { return l.size() == 1; });
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i && !single) out += ' ';
    out += w[i];
  }
  return out;
}

Word word_from_string(const std::string& s) {
  Word w;
  if (s.empty() || s == "~") return w;
  if (s.find(' ') != std::string::npos) {
    std::istringstream in(s);
    std::string tok;
    while (in >> tok)
      if (tok != "~") w.push_back(tok);
    return w;
  }
  for (char c : s) w.emplace_back(1, c);
  return w;
}

std::string edt0l_to_dot(const EDT0LSystem& h) {
  std::ostringstream out;
  out << "// start: " << word_to_string(h.start) << "\n";
  for (std::size_t i = 0; i < h.table.size(); ++i) {
    out << "// " << i << ":";
    for (const auto& [c, img] : h.table[i])
      if (img != Word{c}) out << " " << c << "->" << word_to_string(img);
    out << "\n";
  }
  return out.str() + nfsa_to_dot(h.control, "control");
}

}  // namespace vabset
