// SPDX-License-Identifier: Apache-2.0

#include "vabset/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "test_util.hpp"
#include "vabset/io.hpp"

namespace vabset {
namespace {

using testing::iv;
using R = ElementaryRegion;

const std::string kData = VABSET_DATA_DIR;

struct Result {
  int code;
  std::string out, err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli_run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("vabset_cli_test_" + name);
  std::ofstream(path) << content;
  return path.string();
}

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

TEST(IoRoundTrip, Groups) {
  for (const VAGroup& g : {infinite_dihedral(), klein_bottle(), direct_product(klein_bottle(), infinite_dihedral())}) {
    const Json j = group_to_json(g);
    EXPECT_EQ(group_from_json(j), g);
    EXPECT_EQ(group_to_json(group_from_json(Json::parse(j.dump()))), j);
  }
  Json weighted = read_json_file(kData + "/dinf.group");
  weighted["weights"] = {1, 1, 3};
  const VAGroup g = group_from_json(weighted);
  EXPECT_EQ(g.generators()[2].weight, 3);
  EXPECT_EQ(group_from_json(group_to_json(g)), g);
  EXPECT_EQ(group_from_json(read_json_file(kData + "/klein.group")), klein_bottle());
}

TEST(IoRoundTrip, SetsAndAutomata) {
  testing::Rng rng(73);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t k = rng.range(1, 3);
    const PolyhedralSet p = PolyhedralSet::of(
        k, {R::congruence(rng.vec(k, 3), rng.range(0, 2), 3), R::greater(rng.vec(k, 3), rng.range(-3, 3)),
            R::equation(rng.vec(k, 2), rng.range(-2, 2))});
    EXPECT_EQ(polyhedral_from_json(polyhedral_to_json(p)), p);
    const SemilinearSet s(k, {LinearSet(rng.vec(k, 3), {rng.vec(k, 3), rng.vec(k, 3)})});
    EXPECT_EQ(semilinear_from_json(semilinear_to_json(s)), s);
  }
  const NFsa a = nfsa_union(balanced_pair_automaton(), NFsa(2));
  EXPECT_EQ(nfsa_from_json(nfsa_to_json(a)), a);
  const EDT0LSystem h = edt0l_from_nfsa(balanced_pair_automaton(), ForgetMode::Hash);
  EXPECT_EQ(edt0l_from_json(edt0l_to_json(h)), h);

  const auto dinf = std::make_shared<const VAGroup>(infinite_dihedral());
  const CWPSet u(dinf, {PolyhedralSet::of(1, {R::greater(iv({1}), 2)}), PolyhedralSet::empty(1)});
  const CWPSet back = cwp_from_json(cwp_to_json(u), dinf);
  EXPECT_EQ(back.parts(), u.parts());
  EXPECT_EQ(Int(int_from_json(int_to_json(Int("123456789012345678901234567890")))),
            Int("123456789012345678901234567890"));
}

TEST(IoErrors, Malformed) {
  EXPECT_THROW(group_from_json(Json::parse(R"({"kind":"group","k":1})")), ParseError);
  EXPECT_THROW(polyhedral_from_json(Json::parse(R"({"kind":"polyhedral","dim":1,"basics":[[{"type":"odd"}]]})")),
               ParseError);
  EXPECT_THROW(nfsa_from_json(Json::parse(R"({"kind":"nfsa","arity":2,"states":1,"accepting":[0],
      "edges":[{"from":0,"to":0,"label":["a","b"]}]})")),
               ParseError);
  EXPECT_THROW(int_from_json(Json::parse(R"("1x")")), ParseError);
  EXPECT_THROW(polyhedral_from_json(Json::parse(R"({"kind":"polyhedral","dim":2,
      "basics":[[{"type":"equation","u":[1],"a":0}]]})")),
               DimensionMismatch);
}

TEST(Cli, Growth) {
  const Result r = run({"growth", "--group", kData + "/dinf.group", "--radius", "15", "--fit"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "(1 + 2z + z^2) / (1 - z)");
  EXPECT_NE(r.out.find("0\t1\n1\t3\n2\t4\n"), std::string::npos);
  EXPECT_NE(r.out.find("15\t4\n"), std::string::npos);

  const Result evens = run({"growth", "--set", kData + "/evens.poly", "--radius", "4"});
  EXPECT_EQ(evens.out, "(1 + z^2) / (1 - z^2)\n0\t1\n1\t0\n2\t2\n3\t0\n4\t2\n");
}

TEST(Cli, ValidateAndConvert) {
  EXPECT_EQ(run({"validate", "--group", kData + "/dinf.group"}).code, 0);
  EXPECT_EQ(run({"validate", "--group", kData + "/klein.group", "--set", kData + "/klein_quadrant.cwp"}).code, 0);

  const Result sl = run({"convert", "--set", kData + "/evens.poly", "--to", "semilinear"});
  ASSERT_EQ(sl.code, 0) << sl.err;
  const SemilinearSet s = semilinear_from_json(Json::parse(sl.out));
  const std::string path = temp_file("evens.sl", sl.out);
  const Result back = run({"convert", "--set", path, "--to", "polyhedral"});
  ASSERT_EQ(back.code, 0) << back.err;
  const PolyhedralSet p = polyhedral_from_json(Json::parse(back.out));
  for (long n = -12; n <= 12; ++n) {
    EXPECT_EQ(sl_contains(s, iv({n})), n % 2 == 0);
    EXPECT_EQ(p.contains(iv({n})), n % 2 == 0);
  }
}

TEST(Cli, GroupVerbs) {
  const Result cwp = run({"rational-to-cwp", "--group", kData + "/dinf.group", "--automaton", kData + "/at_star.nfsa"});
  ASSERT_EQ(cwp.code, 0) << cwp.err;
  const auto dinf = std::make_shared<const VAGroup>(infinite_dihedral());
  const CWPSet u = cwp_from_json(Json::parse(cwp.out), dinf);
  for (const auto& [x, n] : ball_lengths(*dinf, 6))
    EXPECT_EQ(u.contains(x), x == dinf->identity() || (x == GroupElement{iv({1}), 1}));

  const Result reg = run({"cwp-to-regular", "--group", kData + "/dinf.group", "--set", kData + "/dinf_reflections.cwp"});
  ASSERT_EQ(reg.code, 0) << reg.err;
  for (const auto& t : nfsa_enumerate(nfsa_from_json(Json::parse(reg.out)), 6)) {
    const GroupElement x = group_eval(*dinf, t[0]);
    EXPECT_EQ(x.t, 1u);
    EXPECT_NE(x.v[0] % 2, 0);
  }

  const Result reps = run({"reps", "--group", kData + "/dinf.group", "--kind", "conjugacy", "--radius", "3"});
  EXPECT_EQ(reps.out, "~\na\nt\na a\na t\na a a\n");
  const Result cosets = run({"reps", "--group", kData + "/dinf.group", "--kind", "cosets", "--subgroup", "a"});
  EXPECT_EQ(cosets.out, "~\nt\n");

  const Result nf = run({"nf-edt0l", "--group", kData + "/dinf.group", "--set", kData + "/dinf_reflections.cwp",
                         "--enumerate", "4"});
  EXPECT_EQ(nf.out, "A A A t\nA t\na a a t\na t\n");
  const Result system = run({"nf-edt0l", "--group", kData + "/dinf.group", "--set", kData + "/dinf_reflections.cwp"});
  const std::string path = temp_file("nf.edt0l", system.out);
  EXPECT_EQ(run({"enumerate", "--edt0l", path, "--maxlen", "4"}).out, nf.out);
}

TEST(Cli, EmitDot) {
  const Result fig = run({"emit-dot", "--builtin", "balanced"});
  ASSERT_EQ(fig.code, 0);
  EXPECT_EQ(count(fig.out, "[shape=circle]") + count(fig.out, "[shape=doublecircle]"), 2u);
  EXPECT_EQ(count(fig.out, "[label="), 6u);
  EXPECT_EQ(run({"emit-dot", "--builtin", "balanced"}).out, fig.out);

  const std::string empty = temp_file("empty.nfsa", R"({"kind":"nfsa","arity":1,"states":1,"accepting":[],"edges":[]})");
  const Result e = run({"emit-dot", "--automaton", empty});
  EXPECT_EQ(e.out, "digraph nfsa {\n  rankdir=LR;\n  __start [shape=point];\n  q0 [shape=circle];\n  __start -> q0;\n}\n");

  // Offset (1,0) and periods (1,1), (0,2): 1 + 1 + (2 - 1) + (2 - 1) nodes.
  const Result lin = run({"emit-dot", "--set", kData + "/diagonal.sl"});
  EXPECT_EQ(count(lin.out, "shape=circle") + count(lin.out, "shape=doublecircle"), 4u);

  const std::string out = (std::filesystem::temp_directory_path() / "vabset_cli_test_fig.dot").string();
  EXPECT_EQ(run({"emit-dot", "--builtin", "balanced", "--out", out}).code, 0);
  std::ifstream f(out);
  EXPECT_EQ(std::string(std::istreambuf_iterator<char>(f), {}), fig.out);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"growth", "--radius", "x"}).code, 1);
  EXPECT_EQ(run({"validate", "--group", "/nonexistent/file"}).code, 1);
  EXPECT_EQ(run({"validate", "--group", temp_file("bad.json", "{not json")}).code, 1);
  EXPECT_EQ(run({"validate", "--group", kData + "/evens.poly"}).code, 1);
  const std::string nonassoc = temp_file("nonassoc.group", R"({"kind":"group","k":1,"transversal":["e","t"],
      "action":[[[1]],[[-1]]],"cocycle":[[[0],[0]],[[0],[1]]],"sigma":[["e","t"],["t","e"]]})");
  EXPECT_EQ(run({"validate", "--group", nonassoc}).code, 2);
  EXPECT_EQ(run({"nf-edt0l", "--group", kData + "/dinf.group", "--set", kData + "/klein_quadrant.cwp"}).code, 2);
  const std::string wide = temp_file("wide.cwp", R"({"kind":"cwp","parts":{"e":{"kind":"polyhedral","dim":2,"basics":[]}}})");
  EXPECT_EQ(run({"validate", "--group", kData + "/dinf.group", "--set", wide}).code, 2);
  EXPECT_EQ(run({"cwp-to-regular", "--group", kData + "/dinf.group", "--set", kData + "/evens.poly"}).code, 1);
}

TEST(Cli, MalformedInputNeverCrashes) {
  testing::Rng rng(79);
  const std::string base = Json::parse(std::ifstream(kData + "/dinf.group")).dump();
  for (int trial = 0; trial < 200; ++trial) {
    std::string mutated = base;
    for (long i = 0, n = rng.range(1, 4); i < n; ++i) {
      const std::size_t pos = rng.range(0, mutated.size() - 1);
      const char* alphabet = "{}[],:\"0123456789-aetx ";
      mutated[pos] = alphabet[rng.range(0, 22)];
    }
    const std::string path = temp_file("fuzz.group", mutated);
    const int code = run({"growth", "--group", path, "--radius", "3"}).code;
    EXPECT_TRUE(code == 0 || code == 1 || code == 2) << mutated;
  }
}

}  // namespace
}  // namespace vabset
