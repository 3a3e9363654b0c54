// SPDX-License-Identifier: Apache-2.0

#include "vabset/io.hpp"

#include <fstream>
#include <sstream>

namespace vabset {

namespace {

[[noreturn]] void fail(const std::string& what) { throw ParseError(what); }

const Json& field(const Json& j, const char* name) {
  if (!j.is_object()) fail(std::string("expected an object holding '") + name + "'");
  const auto it = j.find(name);
  if (it == j.end()) fail(std::string("missing field '") + name + "'");
  return *it;
}

const Json& array(const Json& j, const char* what) {
  if (!j.is_array()) fail(std::string(what) + " must be an array");
  return j;
}

std::size_t index_from_json(const Json& j, const char* what) {
  if (!j.is_number_unsigned()) fail(std::string(what) + " must be a non-negative integer");
  return j.get<std::size_t>();
}

std::string string_from_json(const Json& j, const char* what) {
  if (!j.is_string()) fail(std::string(what) + " must be a string");
  return j.get<std::string>();
}

void expect_kind(const Json& j, const char* kind) {
  if (j.is_object() && j.contains("kind") && json_kind(j) != kind)
    fail("expected a '" + std::string(kind) + "' file, got '" + json_kind(j) + "'");
}

IntMat matrix_from_json(const Json& j, std::size_t k) {
  array(j, "matrix");
  std::vector<IntVec> rows;
  for (const auto& r : j) rows.push_back(vec_from_json(r));
  if (rows.size() != k) fail("matrix must have k rows");
  for (const auto& r : rows)
    if (r.size() != k) fail("matrix must have k columns");
  return IntMat::from_rows(rows, k);
}

Json matrix_to_json(const IntMat& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(vec_to_json(m.row(i)));
  return out;
}

Word word_json(const Json& j) {
  if (j.is_string()) return word_from_string(j.get<std::string>());
  Word w;
  for (const auto& x : array(j, "word")) w.push_back(string_from_json(x, "letter"));
  return w;
}

Json word_to_json(const Word& w) {
  Json out = Json::array();
  for (const auto& x : w) out.push_back(x);
  return out;
}

}  // namespace

Int int_from_json(const Json& j) {
  if (j.is_number_integer()) return Int(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    Int x;
    if (x.set_str(j.get<std::string>(), 10) != 0) fail("'" + j.get<std::string>() + "' is not an integer");
    return x;
  }
  fail("expected an integer");
}

Json int_to_json(const Int& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

IntVec vec_from_json(const Json& j) {
  IntVec v;
  for (const auto& x : array(j, "vector")) v.push_back(int_from_json(x));
  return v;
}

Json vec_to_json(const IntVec& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(int_to_json(x));
  return out;
}

std::string json_kind(const Json& j) {
  if (!j.is_object() || !j.contains("kind")) fail("missing field 'kind'");
  return string_from_json(j.at("kind"), "kind");
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------

VAGroup group_from_json(const Json& j) {
  expect_kind(j, "group");
  const std::size_t k = index_from_json(field(j, "k"), "k");
  std::vector<std::string> labels;
  for (const auto& l : array(field(j, "transversal"), "transversal")) labels.push_back(string_from_json(l, "label"));
  const std::size_t d = labels.size();
  std::vector<IntMat> action;
  for (const auto& m : array(field(j, "action"), "action")) action.push_back(matrix_from_json(m, k));
  std::vector<std::vector<IntVec>> cocycle;
  for (const auto& row : array(field(j, "cocycle"), "cocycle")) {
    cocycle.emplace_back();
    for (const auto& c : array(row, "cocycle row")) cocycle.back().push_back(vec_from_json(c));
  }
  auto label = [&](const Json& x) -> std::size_t {
    if (x.is_number_unsigned()) return x.get<std::size_t>();
    const std::string s = string_from_json(x, "coset");
    for (std::size_t t = 0; t < d; ++t)
      if (labels[t] == s) return t;
    fail("unknown transversal label '" + s + "'");
  };
  std::vector<std::vector<std::size_t>> sigma;
  for (const auto& row : array(field(j, "sigma"), "sigma")) {
    sigma.emplace_back();
    for (const auto& x : array(row, "sigma row")) sigma.back().push_back(label(x));
  }

  std::vector<Generator> gens;
  if (j.contains("generators"))
    for (const auto& g : array(j.at("generators"), "generators")) {
      Generator gen{string_from_json(field(g, "name"), "generator name"),
                    {vec_from_json(field(g, "v")), g.contains("coset") ? label(g.at("coset")) : 0}, 1};
      if (g.contains("weight")) gen.weight = int_from_json(g.at("weight"));
      gens.push_back(std::move(gen));
    }
  if (j.contains("weights")) {
    if (gens.empty()) gens = VAGroup(k, labels, action, cocycle, sigma).generators();
    const auto& w = array(j.at("weights"), "weights");
    if (w.size() != gens.size()) throw DimensionMismatch("weights must match the generators");
    for (std::size_t i = 0; i < gens.size(); ++i) gens[i].weight = int_from_json(w[i]);
  }
  return VAGroup(k, labels, action, cocycle, sigma, gens);
}

Json group_to_json(const VAGroup& g) {
  Json j;
  j["kind"] = "group";
  j["k"] = g.rank();
  j["transversal"] = g.transversal();
  Json action = Json::array(), cocycle = Json::array(), sigma = Json::array();
  for (std::size_t s = 0; s < g.degree(); ++s) {
    action.push_back(matrix_to_json(g.action(s)));
    Json crow = Json::array(), srow = Json::array();
    for (std::size_t t = 0; t < g.degree(); ++t) {
      crow.push_back(vec_to_json(g.cocycle(s, t)));
      srow.push_back(g.transversal()[g.sigma(s, t)]);
    }
    cocycle.push_back(crow);
    sigma.push_back(srow);
  }
  j["action"] = action;
  j["cocycle"] = cocycle;
  j["sigma"] = sigma;
  Json gens = Json::array();
  for (const auto& x : g.generators())
    gens.push_back({{"name", x.name},
                    {"v", vec_to_json(x.value.v)},
                    {"coset", g.transversal()[x.value.t]},
                    {"weight", int_to_json(x.weight)}});
  j["generators"] = gens;
  return j;
}

// ---------------------------------------------------------------------------

namespace {

ElementaryRegion region_from_json(const Json& j) {
  const std::string type = string_from_json(field(j, "type"), "region type");
  IntVec u = vec_from_json(field(j, "u"));
  const Int a = int_from_json(field(j, "a"));
  if (type == "equation") return ElementaryRegion::equation(std::move(u), a);
  if (type == "greater") return ElementaryRegion::greater(std::move(u), a);
  if (type == "at_least") return ElementaryRegion::at_least(std::move(u), a);
  if (type == "congruence") {
    const Int b = int_from_json(field(j, "b"));
    if (b <= 0) throw PreconditionViolation("congruence modulus must be positive");
    return ElementaryRegion::congruence(std::move(u), a, b);
  }
  fail("unknown region type '" + type + "'");
}

Json region_to_json(const ElementaryRegion& r) {
  Json j;
  switch (r.kind) {
    case RegionKind::Equation:
      j["type"] = "equation";
      break;
    case RegionKind::Congruence:
      j["type"] = "congruence";
      break;
    case RegionKind::Inequality:
      j["type"] = "greater";
      break;
  }
  j["u"] = vec_to_json(r.u);
  j["a"] = int_to_json(r.a);
  if (r.kind == RegionKind::Congruence) j["b"] = int_to_json(r.b);
  return j;
}

}  // namespace

PolyhedralSet polyhedral_from_json(const Json& j) {
  expect_kind(j, "polyhedral");
  const std::size_t k = index_from_json(field(j, "dim"), "dim");
  std::vector<BasicPolyhedral> basics;
  for (const auto& b : array(field(j, "basics"), "basics")) {
    BasicPolyhedral basic;
    for (const auto& r : array(b, "basic set")) {
      basic.regions.push_back(region_from_json(r));
      check_dim(basic.regions.back().dim(), k, "region");
    }
    basics.push_back(std::move(basic));
  }
  return PolyhedralSet(k, basics);
}

Json polyhedral_to_json(const PolyhedralSet& p) {
  Json basics = Json::array();
  for (const auto& b : p.basics()) {
    Json regions = Json::array();
    for (const auto& r : b.regions) regions.push_back(region_to_json(r));
    basics.push_back(regions);
  }
  return {{"kind", "polyhedral"}, {"dim", p.dim()}, {"basics", basics}};
}

SemilinearSet semilinear_from_json(const Json& j) {
  expect_kind(j, "semilinear");
  const std::size_t k = index_from_json(field(j, "dim"), "dim");
  std::vector<LinearSet> comps;
  for (const auto& c : array(field(j, "components"), "components")) {
    std::vector<IntVec> periods;
    if (c.contains("periods"))
      for (const auto& p : array(c.at("periods"), "periods")) periods.push_back(vec_from_json(p));
    comps.emplace_back(vec_from_json(field(c, "offset")), periods);
    check_dim(comps.back().dim(), k, "linear set");
  }
  return SemilinearSet(k, comps);
}

Json semilinear_to_json(const SemilinearSet& s) {
  Json comps = Json::array();
  for (const auto& l : s.components()) {
    Json periods = Json::array();
    for (const auto& p : l.periods) periods.push_back(vec_to_json(p));
    comps.push_back({{"offset", vec_to_json(l.offset)}, {"periods", periods}});
  }
  return {{"kind", "semilinear"}, {"dim", s.dim()}, {"components", comps}};
}

CWPSet cwp_from_json(const Json& j, std::shared_ptr<const VAGroup> group) {
  expect_kind(j, "cwp");
  const Json& parts = field(j, "parts");
  if (!parts.is_object()) fail("parts must map transversal labels to sets");
  std::vector<PolyhedralSet> sets(group->degree(), PolyhedralSet::empty(group->rank()));
  for (const auto& [label, p] : parts.items()) {
    const auto t = group->label_index(label);
    if (!t) throw DimensionMismatch("'" + label + "' is not a transversal label of the group");
    if (p.is_object() && p.contains("kind") && json_kind(p) == "semilinear")
      sets[*t] = sl_to_polyhedral(semilinear_from_json(p));
    else
      sets[*t] = polyhedral_from_json(p);
  }
  return CWPSet(std::move(group), sets);
}

Json cwp_to_json(const CWPSet& u) {
  Json parts = Json::object();
  for (std::size_t t = 0; t < u.group().degree(); ++t)
    parts[u.group().transversal()[t]] = polyhedral_to_json(u.part(t));
  return {{"kind", "cwp"}, {"parts", parts}};
}

// ---------------------------------------------------------------------------

NFsa nfsa_from_json(const Json& j) {
  expect_kind(j, "nfsa");
  const std::size_t n = index_from_json(field(j, "arity"), "arity");
  if (n == 0) throw PreconditionViolation("arity must be positive");
  NFsa a(n);
  const std::size_t states = index_from_json(field(j, "states"), "states");
  if (states == 0) fail("an automaton needs at least one state");
  for (std::size_t s = 1; s < states; ++s) a.add_state();
  auto state = [&](const Json& x, const char* what) {
    const std::size_t s = index_from_json(x, what);
    if (s >= states) fail(std::string(what) + " out of range");
    return s;
  };
  if (j.contains("start")) a.set_start(state(j.at("start"), "start"));
  for (const auto& s : array(field(j, "accepting"), "accepting")) a.set_accepting(state(s, "accepting state"));
  for (const auto& e : array(field(j, "edges"), "edges")) {
    const std::size_t from = state(field(e, "from"), "edge source"), to = state(field(e, "to"), "edge target");
    const Json& label = array(field(e, "label"), "edge label");
    if (label.size() != n) throw DimensionMismatch("edge label must have one entry per tape");
    std::optional<std::size_t> tape;
    for (std::size_t i = 0; i < n; ++i) {
      const std::string x = string_from_json(label[i], "edge label entry");
      if (x == "~" || x.empty()) continue;
      if (tape) fail("an edge reads at most one tape");
      tape = i;
    }
    if (tape)
      a.add_edge(from, to, *tape, label[*tape].get<std::string>());
    else
      a.add_epsilon(from, to);
  }
  return a;
}

Json nfsa_to_json(const NFsa& a) {
  Json edges = Json::array();
  for (const auto& e : a.edges()) {
    Json label = Json::array();
    for (std::size_t i = 0; i < a.arity(); ++i)
      label.push_back(!e.epsilon() && static_cast<std::size_t>(e.coord) == i ? e.letter : "~");
    edges.push_back({{"from", e.from}, {"to", e.to}, {"label", label}});
  }
  return {{"kind", "nfsa"},
          {"arity", a.arity()},
          {"states", a.num_states()},
          {"start", a.start()},
          {"accepting", a.accept_states()},
          {"edges", edges}};
}

EDT0LSystem edt0l_from_json(const Json& j) {
  expect_kind(j, "edt0l");
  EDT0LSystem h;
  for (const auto& x : array(field(j, "terminals"), "terminals")) h.terminals.push_back(string_from_json(x, "letter"));
  for (const auto& x : array(field(j, "extended"), "extended")) h.extended.push_back(string_from_json(x, "letter"));
  if (h.extended.size() < h.terminals.size() ||
      !std::equal(h.terminals.begin(), h.terminals.end(), h.extended.begin()))
    fail("extended alphabet must start with the terminals");
  h.start = word_json(field(j, "start"));
  for (const auto& e : array(field(j, "table"), "table")) {
    Endomorphism phi;
    if (!e.is_object()) fail("endomorphism must map letters to words");
    for (const auto& [c, img] : e.items()) phi[c] = word_json(img);
    h.table.push_back(std::move(phi));
  }
  h.control = nfsa_from_json(field(j, "control"));
  if (h.control.arity() != 1) throw DimensionMismatch("control must be a 1-fsa");
  for (const auto& x : h.control.alphabet()) {
    std::size_t i = 0;
    try {
      i = std::stoul(x);
    } catch (const std::exception&) {
      fail("control letter '" + x + "' is not a table index");
    }
    if (i >= h.table.size()) fail("control letter '" + x + "' is out of range");
  }
  return h;
}

Json edt0l_to_json(const EDT0LSystem& h) {
  Json table = Json::array();
  for (const auto& phi : h.table) {
    Json e = Json::object();
    for (const auto& [c, img] : phi) e[c] = word_to_json(img);
    table.push_back(e);
  }
  return {{"kind", "edt0l"},       {"terminals", h.terminals}, {"extended", h.extended},
          {"start", word_to_json(h.start)}, {"table", table},         {"control", nfsa_to_json(h.control)}};
}

}  // namespace vabset
