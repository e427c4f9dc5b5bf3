// File-format and suite-runner coverage: the canonical text form round-trips,
// parse errors carry line numbers, and each verification suite dispatches on
// parsed data.

#include <gtest/gtest.h>

#include <string>

#include "graphs_common.hpp"
#include "kgv/suites.hpp"
#include "kgv/validate.hpp"

using namespace kgv;

namespace {

const char* kWorked = R"(# single vertex, two colours, three edges each
RANK: 2
VERTICES:
  v
EDGES:
  color 1 f1 v v
  color 1 f2 v v
  color 1 f3 v v
  color 2 g1 v v
  color 2 g2 v v
  color 2 g3 v v
SQUARES:
  f1 g1 ~ g1 f2
  f1 g2 ~ g2 f1
  f1 g3 ~ g3 f2
  f2 g1 ~ g1 f1
  f2 g2 ~ g2 f2
  f2 g3 ~ g3 f1
  f3 g1 ~ g1 f3
  f3 g2 ~ g2 f3
  f3 g3 ~ g3 f3
)";

std::string with_skew_tail(const std::string& monoid, const std::string& window) {
  std::string s = kWorked;
  s += "FUNCTOR:\n  f3 -> ";
  s += monoid == "NAT 2" || monoid == "INT 2" ? "1,0\n  g3 -> 0,1\n" : "1\n  g3 -> 1\n";
  s += "MONOID: " + monoid + "\n";
  if (!window.empty()) s += "WINDOW: " + window + "\n";
  return s;
}

std::string parse_error_of(const std::string& text) {
  try {
    parse_spec(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Parse, WorkedExampleMatchesBuilderFixture) {
  SpecData sd = parse_spec(kWorked);
  ASSERT_TRUE(sd.graph.has_value());
  KGraph direct = kgvtest::f2theta();
  EXPECT_EQ(sd.graph->num_vertices(), direct.num_vertices());
  EXPECT_EQ(sd.graph->num_edges(), direct.num_edges());
  EXPECT_EQ(sd.graph->squares().size(), direct.squares().size());
  EXPECT_TRUE(validate_kgraph(*sd.graph).all_pass());
  EXPECT_FALSE(sd.monoid || sd.functor || sd.has_action || sd.window || sd.family_delta);
}

TEST(Parse, SerializeIsAFixpoint) {
  for (const std::string text :
       {std::string(kWorked), with_skew_tail("NAT 2", "0,0 2,2"), with_skew_tail("CYCLIC 3", ""),
        std::string("RANK: 2\nWINDOW: -1,-1 1,1\nFAMILY: delta 2\n")}) {
    std::string once = serialize_spec(parse_spec(text));
    EXPECT_EQ(serialize_spec(parse_spec(once)), once) << text;
  }
}

TEST(Parse, InlineAndIndentedSectionContentAgree) {
  SpecData a = parse_spec("RANK: 1\nVERTICES: u\nEDGES: color 1 e u u\n");
  SpecData b = parse_spec("RANK:\n  1\nVERTICES:\n  u\nEDGES:\n  color 1 e u u\n");
  EXPECT_EQ(serialize_spec(a), serialize_spec(b));
}

TEST(Parse, ErrorsCarryLineNumbers) {
  EXPECT_EQ(parse_error_of("RANK: 1\nRANK: 1\n"), "line 2: duplicate section RANK");
  EXPECT_EQ(parse_error_of("  stray\nRANK: 1\n"), "line 1: content before any section header");
  EXPECT_EQ(parse_error_of("RANK: 1\nBOGUS:\n"), "line 2: unknown section BOGUS");
  EXPECT_NE(parse_error_of("RANK: 1\nVERTICES: u\nEDGES:\n  color 1 e u\n").find("line 4"),
            std::string::npos);
  EXPECT_NE(parse_error_of("RANK: 1\nVERTICES: u\nEDGES:\n  color 9 e u u\n").find("colour"),
            std::string::npos);
  EXPECT_NE(parse_error_of("RANK: x\n").find("expected an integer"), std::string::npos);
  EXPECT_EQ(parse_error_of("VERTICES: u\n"), "missing section RANK");
  EXPECT_NE(parse_error_of("RANK: 1\nVERTICES: u\nEDGES: color 1 e u u\nWINDOW: 0\n")
                .find("line 4"),
            std::string::npos);
  // Structural failures surface as parse errors with the offending line.
  EXPECT_EQ(parse_error_of("RANK: 2\nVERTICES: v\nEDGES:\n  color 1 f v v\nSQUARES:\n"
                           "  f q ~ q f\n")
                .substr(0, 7),
            "line 6:");
}

TEST(Parse, MonoidForms) {
  EXPECT_EQ(parse_spec(with_skew_tail("NAT 2", "")).monoid->kind(), Monoid::Kind::nat);
  EXPECT_EQ(parse_spec(with_skew_tail("INT 2", "")).monoid->kind(), Monoid::Kind::integers);
  EXPECT_EQ(parse_spec(with_skew_tail("CYCLIC 4", "")).monoid->group().order(), 4);
  EXPECT_EQ(parse_spec(with_skew_tail("SYM3", "")).monoid->group().order(), 6);

  // An explicit table for Z/2 canonicalises back to the CYCLIC form.
  SpecData t = parse_spec("RANK: 1\nVERTICES: u\nEDGES: color 1 e u u\n"
                          "MONOID: TABLE 2\n  0 1\n  1 0\n");
  EXPECT_NE(serialize_spec(t).find("MONOID: CYCLIC 2"), std::string::npos);

  EXPECT_NE(parse_error_of("RANK: 1\nVERTICES: u\nEDGES: color 1 e u u\n"
                           "MONOID: TABLE 2\n  0 1\n  1 1\n")
                .find("not a group table"),
            std::string::npos);
  EXPECT_NE(parse_error_of("RANK: 1\nVERTICES: u\nEDGES: color 1 e u u\nMONOID: BLORP\n")
                .find("unknown monoid"),
            std::string::npos);
}

TEST(Parse, FunctorDefaultsToIdentityAndSerializesSparsely) {
  SpecData sd = parse_spec(with_skew_tail("NAT 2", "0,0 2,2"));
  ASSERT_TRUE(sd.functor.has_value());
  const KGraph& g = *sd.graph;
  for (int e = 0; e < g.num_edges(); ++e) {
    const std::string& id = g.edge(e).id;
    Monoid::Elt want = id == "f3"   ? Monoid::Elt{1, 0}
                       : id == "g3" ? Monoid::Elt{0, 1}
                                    : Monoid::Elt{0, 0};
    EXPECT_EQ((*sd.functor)[e], want) << id;
  }
  std::string text = serialize_spec(sd);
  EXPECT_NE(text.find("f3 -> 1,0"), std::string::npos);
  EXPECT_EQ(text.find("f1 ->"), std::string::npos);
  EXPECT_NE(parse_error_of(std::string(kWorked) + "FUNCTOR:\n  f9 -> 1,0\nMONOID: NAT 2\n")
                .find("unknown edge"),
            std::string::npos);
  EXPECT_NE(parse_error_of(std::string(kWorked) + "FUNCTOR:\n  f3 -> 1\nMONOID: NAT 2\n")
                .find("not an element"),
            std::string::npos);
}

namespace {

const char* kTwoTori = R"(RANK: 2
VERTICES:
  vA
  vB
EDGES:
  color 1 fA vA vA
  color 1 fB vB vB
  color 2 gA vA vA
  color 2 gB vB vB
SQUARES:
  fA gA ~ gA fA
  fB gB ~ gB fB
MONOID: CYCLIC 2
ACTION:
  gen 1
  v vA -> vB
  v vB -> vA
  e fA -> fB
  e fB -> fA
  e gA -> gB
  e gB -> gA
)";

}  // namespace

TEST(Parse, ActionGeneratorsWithIdentityDefaults) {
  SpecData sd = parse_spec(kTwoTori);
  ASSERT_TRUE(sd.has_action);
  ASSERT_EQ(sd.gens.size(), 1u);
  Action a = build_action(sd);
  EXPECT_EQ(a.monoid().group().order(), 2);
  std::string text = serialize_spec(sd);
  EXPECT_EQ(serialize_spec(parse_spec(text)), text);

  // Mapping lines are optional: unspecified vertices and edges stay fixed.
  SpecData partial = parse_spec("RANK: 1\nVERTICES: u\nEDGES: color 1 e u u\n"
                                "MONOID: CYCLIC 2\nACTION:\n  gen 1\n");
  EXPECT_NO_THROW(build_action(partial));

  // A vertex map that breaks the edge maps is a semantic error, not a parse one.
  std::string bad = kTwoTori;
  bad.replace(bad.find("e gB -> gA"), 10, "e gB -> gB");
  SpecData sd_bad = parse_spec(bad);
  EXPECT_THROW(build_action(sd_bad), ActionError);
}

TEST(Parse, FamilyBuildsTheLatticeWindow) {
  SpecData sd = parse_spec("RANK: 2\nFAMILY: delta 2\nWINDOW: -1,-1 1,1\n");
  ASSERT_TRUE(sd.family_delta.has_value());
  EXPECT_EQ(sd.graph->num_vertices(), 9);
  EXPECT_TRUE(sd.graph->vertex_index("p0.0").has_value());
  Action tr = build_action(sd);
  EXPECT_EQ(tr.monoid().kind(), Monoid::Kind::nat);
  EXPECT_EQ(tr.monoid().dim(), 2);

  EXPECT_NE(parse_error_of("RANK: 2\nFAMILY: delta 2\n").find("requires a WINDOW"),
            std::string::npos);
  EXPECT_NE(parse_error_of("RANK: 2\nVERTICES: v\nFAMILY: delta 2\nWINDOW: -1,-1 1,1\n")
                .find("not allowed with a FAMILY"),
            std::string::npos);
  EXPECT_NE(parse_error_of("RANK: 2\nFAMILY: delta 1\nWINDOW: -1,-1 1,1\n")
                .find("disagrees with RANK"),
            std::string::npos);
}

TEST(Suites, Lemma21AndAperiodicityOnParsedGraphs) {
  SpecData sd = parse_spec(kWorked);
  SuiteOptions opt;
  opt.trials = 25;
  Report lem = run_suite(sd, "lemma21", opt);
  EXPECT_FALSE(lem.any_fail()) << lem.checks.size();
  EXPECT_EQ(lem.suite, "lemma21");

  Report ap = run_suite(sd, "aperiodicity", opt);
  EXPECT_TRUE(ap.all_pass());

  EXPECT_THROW(run_suite(sd, "no-such-suite", opt), PreconditionError);
}

TEST(Suites, SkewSuitesFromSpecText) {
  SuiteOptions opt;

  SpecData z3 = parse_spec(with_skew_tail("CYCLIC 3", ""));
  Report t51 = run_suite(z3, "thm51", opt);
  EXPECT_TRUE(t51.all_pass());

  SpecData lattice = parse_spec(with_skew_tail("NAT 2", "0,0 2,2"));
  Report main = run_suite(lattice, "main", opt);
  EXPECT_FALSE(main.any_fail());
  EXPECT_TRUE(main.any_untested());  // window-boundary records

  // On a finite window the invariance check necessarily skips boundary
  // images, so the suite passes everywhere it can test and marks the rest.
  SpecData dil = parse_spec(with_skew_tail("INT 2", "-2,-2 2,2"));
  Report dh = run_suite(dil, "dilation-hyp", opt);
  EXPECT_FALSE(dh.any_fail());
  for (const auto& c : dh.checks)
    if (c.status != Status::pass) EXPECT_EQ(c.id, "omega-invariant-boundary");

  // Suite preconditions surface as exceptions, not reports.
  EXPECT_THROW(run_suite(z3, "dilation-hyp", opt), PreconditionError);
  EXPECT_THROW(run_suite(lattice, "thm51", opt), PreconditionError);
}

TEST(Suites, GrossTuckerOnFreeAndNonFreeActions) {
  SuiteOptions opt;
  SpecData tori = parse_spec(kTwoTori);
  Report ok = run_suite(tori, "gross-tucker", opt);
  EXPECT_TRUE(ok.all_pass()) << ok.checks.size();
  bool saw_domain = false;
  for (const auto& c : ok.checks)
    if (c.id == "fundamental-domain") saw_domain = c.status == Status::pass;
  EXPECT_TRUE(saw_domain);

  // Lattice translation on the window family admits no fundamental domain:
  // the suite reports that as untested with the pigeonhole certificate.
  SpecData delta = parse_spec("RANK: 2\nFAMILY: delta 2\nWINDOW: -3,-3 3,3\n");
  Report inf = run_suite(delta, "gross-tucker", opt);
  EXPECT_FALSE(inf.any_fail());
  ASSERT_EQ(inf.checks.size(), 1u);
  EXPECT_EQ(inf.checks[0].id, "fundamental-domain");
  EXPECT_EQ(inf.checks[0].status, Status::untested);
  EXPECT_NE(inf.checks[0].witness.find("no fundamental domain exists"), std::string::npos);
}
