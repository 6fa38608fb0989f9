#include <gtest/gtest.h>

#include "dialectic/dlm.hpp"
#include "dialectic/schemes.hpp"
#include "dialectic/zoo.hpp"

using namespace dialectic;

namespace {

const char* kModelA =
    "domain: 1 2 3\n"
    "T: (1) (2) (3)\n"
    "Anti: (1) (2) (3)\n"
    "A: (1,2) (2,3) (3,1)\n"
    "S: (1,3,2) (2,1,3) (3,2,1)\n"
    "D: (1,2) (1,3) (2,1) (2,3) (3,1) (3,2)\n"
    "N: (1) (2) (3)\n";

}  // namespace

TEST(Dlm, EmitModelA) { EXPECT_EQ(emit_dlm(build_model(ModelId::kA)), kModelA); }

TEST(Dlm, ParseVariants) {
  const auto parsed = parse_dlm(
      "# Model A, scrambled\n"
      "\n"
      "domain: 1 2 3   # three elements\n"
      "S: (3, 2, 1) (1,3,2)\n"
      "S: (2,1,3)\n"
      "T: 1 2 3\n"
      "A: (3,1) (1,2) (2,3)\n"
      "D: (1,2) (1,3) (2,1) (2,3) (3,1) (3,2)\n"
      "Anti: (1) (2) (3)\n"
      "N: 1 (2) 3\n");
  EXPECT_TRUE(parsed.warnings.empty());
  EXPECT_EQ(parsed.structure, build_model(ModelId::kA));
  EXPECT_EQ(emit_dlm(parsed.structure), kModelA);
}

TEST(Dlm, DuplicatesCollapseWithWarning) {
  const auto parsed = parse_dlm("domain: a b\nT: (a) (a) b\n");
  EXPECT_EQ(parsed.structure.table("T").size(), 2u);
  ASSERT_EQ(parsed.warnings.size(), 1u);
  EXPECT_NE(parsed.warnings[0].find("duplicate"), std::string::npos);
}

TEST(Dlm, EmptyTableIsDeclared) {
  const auto parsed = parse_dlm("domain: a\nP:\n");
  EXPECT_TRUE(parsed.structure.has_table("P"));
  EXPECT_TRUE(parsed.structure.table("P").empty());
  EXPECT_EQ(emit_dlm(parsed.structure), "domain: a\nP:\n");
}

TEST(Dlm, Errors) {
  auto line_of = [](const char* text) -> std::size_t {
    try {
      parse_dlm(text);
    } catch (const FormatError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("T: (1)\n"), 1u);                          // domain must come first
  EXPECT_EQ(line_of("domain: 1 2\nQ: (1)\n"), 2u);             // unknown relation
  EXPECT_EQ(line_of("domain: 1 2\nA: (1)\n"), 2u);             // arity
  EXPECT_EQ(line_of("domain: 1 2\nA: (1,3)\n"), 2u);           // unknown element
  EXPECT_EQ(line_of("domain: 1 1\n"), 1u);                     // duplicate label
  EXPECT_EQ(line_of("domain:\n"), 1u);                         // empty domain
  EXPECT_EQ(line_of("domain: 1\n\nS: (1,1,1\n"), 3u);          // unterminated
  EXPECT_EQ(line_of("domain: 1\nS (1,1,1)\n"), 2u);            // no colon
  EXPECT_EQ(line_of("domain: 1\ndomain: 2\n"), 2u);            // second domain
  EXPECT_EQ(line_of("# nothing\n"), 1u);                       // missing domain
  EXPECT_EQ(line_of("domain: 1\nA: (1;1)\n"), 2u);
}

TEST(Dlm, RoundTripZoo) {
  std::vector<FiniteStructure> zoo{build_model(ModelId::kA), build_model(ModelId::kB),
                                   model_a_with_alternative_n()};
  for (int k = 2; k <= 12; ++k) zoo.push_back(build_model_d_finite(k));
  const auto c = build_model_c();
  zoo.push_back(c.restrict_to(c.window(6)));
  const auto huge = build_model_d_computable(BigInt(1) << 80);
  zoo.push_back(huge.restrict_to(huge.window(8)));
  for (const auto& s : zoo) {
    const auto text = emit_dlm(s);
    const auto back = parse_dlm(text);
    EXPECT_EQ(back.structure, s);
    EXPECT_EQ(emit_dlm(back.structure), text);
  }
}

TEST(Dlm, UnknownTableCannotBeWritten) {
  FiniteStructure s({"a"});
  s.add_table("Q", 1);
  EXPECT_THROW(emit_dlm(s), StructureError);
}

TEST(Report, TextAndJson) {
  auto a = build_model(ModelId::kA);
  a.table("S").erase(std::vector<std::size_t>{2, 1, 0});
  const auto r = check_scheme(a, tas_scheme(SchemeId::kTas1));
  const auto text = format_report(r);
  EXPECT_NE(text.find("E3 FAIL counterexample: x=2, y=1\n"), std::string::npos);
  EXPECT_NE(text.find("E1 PASS\n"), std::string::npos);
  EXPECT_NE(text.find("result FAIL"), std::string::npos);

  const auto j = report_json(r);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["scheme"], "TAS1");
  EXPECT_EQ(j["all_pass"], false);
  ASSERT_EQ(j["axioms"].size(), 5u);
  EXPECT_EQ(j["axioms"][2]["label"], "E3");
  EXPECT_EQ(j["axioms"][2]["verdict"], "FAIL");
  EXPECT_EQ(j["axioms"][2]["counterexample"][0]["var"], "x");
  EXPECT_EQ(j["axioms"][2]["counterexample"][0]["value"], "2");
  EXPECT_FALSE(j.contains("window"));
}

TEST(AxiomFile, ParsesAndExpandsN) {
  const auto axioms = parse_axiom_file(
      "# extra\n"
      "Loop: forall x. (T(x) -> ~A(x, x))\n"
      "\n"
      "Node: exists z. N(z)   # uses the definition\n");
  ASSERT_EQ(axioms.size(), 2u);
  EXPECT_EQ(axioms[0].label, "Loop");
  EXPECT_EQ(format_formula(axioms[0].formula), "forall x. (T(x) -> ~A(x, x))");
  EXPECT_FALSE(predicates_of(axioms[1].formula).count("N"));
  auto scheme = Scheme{"custom", axioms};
  EXPECT_TRUE(check_scheme(build_model(ModelId::kA), scheme).all_pass());
}

TEST(AxiomFile, Errors) {
  auto line_of = [](const char* text) -> std::size_t {
    try {
      parse_axiom_file(text);
    } catch (const FormatError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("X: exists x. T(x)\nY: T(y)\n"), 2u);          // free variable
  EXPECT_EQ(line_of("X: exists x. T(x)\nX: exists x. T(x)\n"), 2u);  // repeated label
  EXPECT_EQ(line_of("exists x. T(x)\n"), 1u);                        // no label
  EXPECT_EQ(line_of("X: exists x. Q(x)\n"), 1u);                     // unknown predicate
  EXPECT_EQ(line_of("# only a comment\n"), 1u);
}
