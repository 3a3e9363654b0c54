// SPDX-License-Identifier: Apache-2.0

#include "vabset/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>

#include "vabset/automata.hpp"
#include "vabset/growth.hpp"
#include "vabset/io.hpp"
#include "vabset/semilinear.hpp"
#include "vabset/vabgroup.hpp"

namespace vabset {

namespace {

struct Options {
  std::string group, set, automaton, edt0l, out, to, kind = "elements", builtin;
  std::vector<std::string> subgroup;
  std::vector<long> weights;
  std::size_t radius = 10, maxlen = 8, margin = 5;
  std::optional<std::size_t> enumerate;
  bool fit = false;
};

std::string render(const Word& w) {
  if (w.empty()) return "~";
  std::string s;
  for (const auto& x : w) s += (s.empty() ? "" : " ") + x;
  return s;
}

std::string render(const WordTuple& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + render(t[i]);
  return s + ")";
}

class Runner {
 public:
  Runner(const Options& o, std::ostream& out) : o_(o), out_(out) {}

  void emit(const std::string& text) {
    if (o_.out.empty()) {
      out_ << text;
      return;
    }
    std::ofstream f(o_.out, std::ios::binary);
    if (!f) throw PreconditionViolation("cannot write " + o_.out);
    f << text;
  }
  void emit(const Json& j) { emit(j.dump(2) + "\n"); }

  std::shared_ptr<const VAGroup> group() {
    if (o_.group.empty()) throw ParseError("--group is required");
    if (!group_) group_ = std::make_shared<const VAGroup>(group_from_json(read_json_file(o_.group)));
    return group_;
  }
  Json set_json() {
    if (o_.set.empty()) throw ParseError("--set is required");
    return read_json_file(o_.set);
  }
  CWPSet cwp() { return cwp_from_json(set_json(), group()); }
  NFsa automaton() {
    if (o_.automaton.empty()) throw ParseError("--automaton is required");
    return nfsa_from_json(read_json_file(o_.automaton));
  }
  EDT0LSystem edt0l() { return edt0l_from_json(read_json_file(o_.edt0l)); }

  PolyhedralSet polyhedral(const Json& j) {
    const std::string kind = json_kind(j);
    if (kind == "polyhedral") return polyhedral_from_json(j);
    if (kind == "semilinear") return sl_to_polyhedral(semilinear_from_json(j));
    throw ParseError("expected a polyhedral or semilinear set, got '" + kind + "'");
  }
  SemilinearSet semilinear(const Json& j) {
    const std::string kind = json_kind(j);
    if (kind == "semilinear") return semilinear_from_json(j);
    if (kind == "polyhedral") return poly_to_semilinear(polyhedral_from_json(j));
    throw ParseError("expected a polyhedral or semilinear set, got '" + kind + "'");
  }

  void validate() {
    std::size_t checked = 0;
    if (!o_.group.empty()) {
      group();
      out_ << "ok group\n";
      ++checked;
    }
    if (!o_.set.empty()) {
      const Json j = set_json();
      const std::string kind = json_kind(j);
      if (kind == "cwp")
        cwp();
      else
        polyhedral(j);
      out_ << "ok " << kind << "\n";
      ++checked;
    }
    if (!o_.automaton.empty()) {
      automaton();
      out_ << "ok nfsa\n";
      ++checked;
    }
    if (!o_.edt0l.empty()) {
      edt0l();
      out_ << "ok edt0l\n";
      ++checked;
    }
    if (checked == 0) throw ParseError("nothing to validate");
  }

  void growth() {
    std::string text;
    if (!o_.group.empty()) {
      const CWPSet u = o_.set.empty() ? CWPSet::full(group()) : cwp();
      if (o_.fit) {
        const GrowthSeries fit = relative_growth_series(u, o_.radius, o_.margin);
        text += format_series(fit.num, fit.den) + "\n";
      }
      text += format_table(relative_growth_table(u, o_.radius));
    } else {
      const SemilinearSet s = semilinear(set_json());
      WeightFn w = WeightFn::unit(s.dim());
      if (!o_.weights.empty()) {
        std::vector<Int> ws;
        for (long x : o_.weights) ws.emplace_back(x);
        check_dim(ws.size(), s.dim(), "weights");
        w = WeightFn(ws);
      }
      const GrowthSeries series = growth_series(s, w);
      text += format_series(series.num, series.den) + "\n";
      text += format_table(growth_enumerate(s, w, o_.radius));
    }
    emit(text);
  }

  void convert() {
    const Json j = set_json();
    if (o_.to == "semilinear")
      emit(semilinear_to_json(semilinear(j)));
    else if (o_.to == "polyhedral")
      emit(polyhedral_to_json(polyhedral(j)));
    else
      throw ParseError("--to must be semilinear or polyhedral");
  }

  void nf() {
    const EDT0LSystem h = nf_edt0l(cwp());
    if (!o_.enumerate) return emit(edt0l_to_json(h));
    std::string text;
    for (const auto& w : edt0l_enumerate(h, *o_.enumerate)) text += render(w) + "\n";
    emit(text);
  }

  void reps() {
    const auto g = group();
    RepKind kind;
    if (o_.kind == "elements")
      kind = RepKind::Elements;
    else if (o_.kind == "cosets")
      kind = RepKind::Cosets;
    else if (o_.kind == "conjugacy")
      kind = RepKind::ConjugacyClasses;
    else
      throw ParseError("--kind must be elements, cosets or conjugacy");
    std::vector<GroupElement> sub;
    for (const auto& w : o_.subgroup) sub.push_back(group_eval(*g, word_from_string(w)));
    if (kind == RepKind::Cosets && o_.subgroup.empty()) throw ParseError("cosets need --subgroup");
    std::string text;
    for (const auto& r : geodesic_reps(*g, kind, o_.radius, sub).reps) text += render(r.word) + "\n";
    emit(text);
  }

  void enumerate() {
    std::string text;
    if (!o_.automaton.empty()) {
      for (const auto& t : nfsa_enumerate(automaton(), o_.maxlen))
        text += (t.size() == 1 ? render(t[0]) : render(t)) + "\n";
    } else if (!o_.edt0l.empty()) {
      for (const auto& w : edt0l_enumerate(edt0l(), o_.maxlen)) text += render(w) + "\n";
    } else {
      throw ParseError("enumerate needs --automaton or --edt0l");
    }
    emit(text);
  }

  void dot() {
    if (!o_.builtin.empty()) {
      if (o_.builtin != "balanced") throw PreconditionViolation("unknown builtin '" + o_.builtin + "'");
      return emit(nfsa_to_dot(balanced_pair_automaton()));
    }
    if (!o_.automaton.empty()) return emit(nfsa_to_dot(automaton()));
    if (!o_.edt0l.empty()) return emit(edt0l_to_dot(edt0l()));
    if (!o_.set.empty()) {
      const SemilinearSet s = semilinear(set_json());
      if (s.components().size() != 1) throw PreconditionViolation("expected a single linear set");
      std::vector<std::pair<Letter, Letter>> letters;
      const VAGroup z = free_abelian(s.dim());
      for (std::size_t i = 0; i < s.dim(); ++i) letters.emplace_back(z.positive_letter(i), z.negative_letter(i));
      return emit(nfsa_to_dot(nfk_from_monotone(s.components()[0], letters)));
    }
    throw ParseError("emit-dot needs --builtin, --automaton, --edt0l or --set");
  }

 private:
  const Options& o_;
  std::ostream& out_;
  std::shared_ptr<const VAGroup> group_;
};

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rational subsets of virtually abelian groups", "vabset"};
  app.require_subcommand(1);
  Options o;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "Write the result to this file");
  };
  auto* validate = app.add_subcommand("validate", "Parse and check definition files");
  validate->add_option("--group", o.group);
  validate->add_option("--set", o.set);
  validate->add_option("--automaton", o.automaton);
  validate->add_option("--edt0l", o.edt0l);

  auto* growth = app.add_subcommand("growth", "Growth table and series");
  growth->add_option("--group", o.group);
  growth->add_option("--set", o.set);
  growth->add_option("--radius", o.radius);
  growth->add_option("--margin", o.margin);
  growth->add_option("--weights", o.weights)->delimiter(',');
  growth->add_flag("--fit", o.fit);
  add_common(growth);

  auto* convert = app.add_subcommand("convert", "Polyhedral and semilinear conversion");
  convert->add_option("--set", o.set)->required();
  convert->add_option("--to", o.to)->required();
  add_common(convert);

  auto* nf = app.add_subcommand("nf-edt0l", "EDT0L system for the normal forms of a set");
  nf->add_option("--group", o.group)->required();
  nf->add_option("--set", o.set)->required();
  nf->add_option("--enumerate", o.enumerate, "List words up to this length instead");
  add_common(nf);

  auto* reps = app.add_subcommand("reps", "Geodesic representatives");
  reps->add_option("--group", o.group)->required();
  reps->add_option("--kind", o.kind);
  reps->add_option("--radius", o.radius);
  reps->add_option("--subgroup", o.subgroup, "Subgroup generator word, repeatable");
  add_common(reps);

  auto* r2c = app.add_subcommand("rational-to-cwp", "Image of a regular language in the group");
  r2c->add_option("--group", o.group)->required();
  r2c->add_option("--automaton", o.automaton)->required();
  add_common(r2c);

  auto* c2r = app.add_subcommand("cwp-to-regular", "Regular language onto a coset-wise polyhedral set");
  c2r->add_option("--group", o.group)->required();
  c2r->add_option("--set", o.set)->required();
  add_common(c2r);

  auto* en = app.add_subcommand("enumerate", "Bounded enumeration of an automaton or EDT0L system");
  en->add_option("--automaton", o.automaton);
  en->add_option("--edt0l", o.edt0l);
  en->add_option("--maxlen", o.maxlen);
  add_common(en);

  auto* dot = app.add_subcommand("emit-dot", "DOT rendering");
  dot->add_option("--builtin", o.builtin, "balanced");
  dot->add_option("--automaton", o.automaton);
  dot->add_option("--edt0l", o.edt0l);
  dot->add_option("--set", o.set, "Single monotone linear set");
  add_common(dot);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  Runner run(o, out);
  const std::map<CLI::App*, std::function<void()>> verbs{
      {validate, [&] { run.validate(); }},
      {growth, [&] { run.growth(); }},
      {convert, [&] { run.convert(); }},
      {nf, [&] { run.nf(); }},
      {reps, [&] { run.reps(); }},
      {r2c, [&] { run.emit(cwp_to_json(rational_to_cwp(run.group(), run.automaton()))); }},
      {c2r, [&] { run.emit(nfsa_to_json(cwp_to_regular(run.cwp()))); }},
      {en, [&] { run.enumerate(); }},
      {dot, [&] { run.dot(); }},
  };
  try {
    for (const auto& [sub, f] : verbs)
      if (sub->parsed()) f();
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const nlohmann::json::exception& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitSemantic;
  }
  return kExitOk;
}

}  // namespace vabset
