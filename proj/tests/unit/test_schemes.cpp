#include <gtest/gtest.h>

#include <set>

#include "dialectic/schemes.hpp"
#include "dialectic/syntax.hpp"

using namespace dialectic;

namespace {

std::vector<std::string> labels_of(const Scheme& s) {
  std::vector<std::string> out;
  for (const auto& a : s.axioms) out.push_back(a.label);
  return out;
}

Formula parse(std::string_view text) { return parse_formula(text, tas_signature(), {.require_closed = true}); }

}  // namespace

TEST(Schemes, Tas1) {
  const auto s = tas_scheme(SchemeId::kTas1);
  EXPECT_EQ(s.name, "TAS1");
  EXPECT_EQ(labels_of(s), (std::vector<std::string>{"E1", "E2", "E3", "R1", "R2"}));
  EXPECT_EQ(s.required_predicates, (std::vector<std::string>{"T", "A", "S"}));
}

TEST(Schemes, Tas2) {
  const auto s = tas_scheme(SchemeId::kTas2);
  EXPECT_EQ(s.axioms.size(), 7u);
  EXPECT_EQ(labels_of(s), (std::vector<std::string>{"E1", "E2", "E3", "R1", "R2", "E4", "E5"}));
  EXPECT_EQ(s.required_predicates, (std::vector<std::string>{"T", "A", "S", "D"}));
  EXPECT_TRUE(alpha_equivalent(s.axiom("E4").formula,
                               parse("exists z. exists x. exists y. (S(z, x, y) & D(z, x) & D(z, y))")));
}

TEST(Schemes, Tas3) {
  const auto s = tas_scheme(SchemeId::kTas3);
  EXPECT_EQ(labels_of(s),
            (std::vector<std::string>{"E1", "E2", "E3", "E4", "E5.1", "E6.1", "R1.1", "R2.1", "R3.1", "R4.1"}));
  EXPECT_EQ(s.required_predicates, (std::vector<std::string>{"T", "A", "S", "D", "P"}));
  for (const auto& a : s.axioms) EXPECT_FALSE(a.optional);

  const auto ext = tas_scheme(SchemeId::kTas3, true);
  EXPECT_EQ(ext.axioms.size(), 11u);
  EXPECT_EQ(ext.axioms.back().label, "Ext");
  EXPECT_TRUE(ext.axioms.back().optional);
  EXPECT_TRUE(alpha_equivalent(
      ext.axiom("Ext").formula,
      parse("forall x. ((exists y. (T(y) & A(x, y))) -> exists u. ((exists v. (T(v) & A(u, v))) & P(x, u)))")));
}

TEST(Schemes, ExtensionOnlyForTas3) {
  EXPECT_THROW(tas_scheme(SchemeId::kTas1, true), std::invalid_argument);
  EXPECT_THROW(tas_scheme(SchemeId::kTas2, true), std::invalid_argument);
}

TEST(Schemes, Identifiers) {
  EXPECT_EQ(parse_scheme_id("tas1"), SchemeId::kTas1);
  EXPECT_EQ(parse_scheme_id("tas3"), SchemeId::kTas3);
  EXPECT_THROW(parse_scheme_id("tas4"), std::invalid_argument);
  EXPECT_EQ(scheme_name(SchemeId::kTas2), "TAS2");
}

TEST(Schemes, SharedPrefixesAreIdentical) {
  const auto t1 = tas_scheme(SchemeId::kTas1);
  const auto t2 = tas_scheme(SchemeId::kTas2);
  const auto t3 = tas_scheme(SchemeId::kTas3);
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(t2.axioms[i].label, t1.axioms[i].label);
    EXPECT_EQ(t2.axioms[i].formula, t1.axioms[i].formula);
  }
  for (const char* label : {"E1", "E2", "E3", "E4"}) EXPECT_EQ(t3.axiom(label).formula, t2.axiom(label).formula);
}

TEST(Schemes, AxiomsAreClosedAndWellTyped) {
  for (bool ext : {false, true}) {
    for (auto id : {SchemeId::kTas1, SchemeId::kTas2, SchemeId::kTas3}) {
      if (ext && id != SchemeId::kTas3) continue;
      const auto s = tas_scheme(id, ext);
      std::set<std::string> labels;
      const std::set<std::string> allowed(s.required_predicates.begin(), s.required_predicates.end());
      for (const auto& a : s.axioms) {
        EXPECT_TRUE(labels.insert(a.label).second) << a.label;
        EXPECT_TRUE(free_variables(a.formula).empty()) << a.label;
        for (const auto& p : predicates_of(a.formula)) EXPECT_TRUE(allowed.count(p)) << a.label << " uses " << p;
      }
    }
  }
}

TEST(Schemes, GoldenTextsRoundTrip) {
  const auto s = tas_scheme(SchemeId::kTas3, true);
  const auto t2 = tas_scheme(SchemeId::kTas2);
  std::vector<Axiom> all = s.axioms;
  all.push_back(t2.axiom("R1"));
  all.push_back(t2.axiom("R2"));
  all.push_back(t2.axiom("E5"));
  for (const auto& a : all) {
    EXPECT_EQ(parse(format_formula(a.formula)), a.formula) << a.label;
    // The stored axiom is the source text with N expanded.
    EXPECT_EQ(expand_defined_n(parse(axiom_source(a.label))), a.formula) << a.label;
  }
  EXPECT_THROW(axiom_source("E9"), std::out_of_range);
}

TEST(Schemes, FrozenSources) {
  EXPECT_EQ(axiom_source("E1"), "exists x. T(x)");
  EXPECT_EQ(axiom_source("E2"), "forall x. (T(x) -> exists! y. A(y, x))");
  EXPECT_EQ(axiom_source("R2"),
            "forall x. forall y. forall z. (S(z, x, y) -> T(z) & (A(x, y) | A(y, x)) & ~(S(x, z, y) | S(y, x, z)))");
  EXPECT_EQ(axiom_source("E5"), "forall x. (N(x) -> exists y. (N(y) & y != x))");
}

TEST(Schemes, NExpansion) {
  const auto e5 = tas_scheme(SchemeId::kTas2).axiom("E5").formula;
  EXPECT_FALSE(predicates_of(e5).count("N"));
  EXPECT_TRUE(alpha_equivalent(
      e5, parse("forall x. ((exists a. exists b. (S(x, a, b) & D(x, a) & D(x, b))) -> "
                "exists y. ((exists c. exists d. (S(y, c, d) & D(y, c) & D(y, d))) & y != x))")));
}

TEST(Schemes, ExpansionIsIdempotent) {
  const Scheme raw{"raw",
                   {{"E4", parse(axiom_source("E4"))}, {"E5", parse(axiom_source("E5"))}},
                   {"S", "D"},
                   true};
  const auto once = expand_defined(raw);
  const auto twice = expand_defined(once);
  ASSERT_EQ(once.axioms.size(), twice.axioms.size());
  for (std::size_t i = 0; i < once.axioms.size(); ++i) EXPECT_EQ(once.axioms[i].formula, twice.axioms[i].formula);

  const auto t3 = tas_scheme(SchemeId::kTas3, true);
  const auto e = expand_defined(t3);
  for (std::size_t i = 0; i < t3.axioms.size(); ++i) EXPECT_EQ(e.axioms[i].formula, t3.axioms[i].formula);
}

TEST(Schemes, UniqueExpansionRemovesExistsUnique) {
  const auto s = expand_unique(tas_scheme(SchemeId::kTas1));
  for (const auto& a : s.axioms) {
    const auto text = format_formula(a.formula);
    EXPECT_EQ(text.find("exists!"), std::string::npos) << a.label;
  }
  EXPECT_TRUE(alpha_equivalent(
      s.axiom("E2").formula, parse("forall x. (T(x) -> exists y. (A(y, x) & forall w. (A(w, x) -> w = y)))")));
}

TEST(Schemes, InfinityCore) {
  const auto core = infinity_core_scheme();
  EXPECT_EQ(labels_of(core), (std::vector<std::string>{"E4", "E5.1", "R3.1", "R4.1"}));
  EXPECT_FALSE(core.n_is_defined);
  EXPECT_EQ(core.axiom("E4").formula, parse("exists x. N(x)"));
  std::set<std::string> preds;
  for (const auto& a : core.axioms)
    for (const auto& p : predicates_of(a.formula)) preds.insert(p);
  EXPECT_EQ(preds, (std::set<std::string>{"N", "P"}));
}
