#include <gtest/gtest.h>

#include <algorithm>

#include "dialectic/consequence.hpp"
#include "dialectic/zoo.hpp"
#include "generators.hpp"

using namespace dialectic;

namespace {

using Tokens = std::set<std::string>;

// Apply every rule until nothing changes.
Tokens naive_closure(const LogicSystem& ls, Tokens x) {
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& r : ls.rules()) {
      const bool ready =
          std::all_of(r.premises.begin(), r.premises.end(), [&](const std::string& p) { return x.count(p) > 0; });
      if (ready && x.insert(r.conclusion).second) changed = true;
    }
  }
  return x;
}

bool subset(const Tokens& a, const Tokens& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

LogicSystem random_system(testgen::Rng& rng) {
  const std::size_t n = testgen::uniform(rng, 1, 8);
  const auto language = testgen::labels(n);
  std::vector<Rule> rules;
  const std::size_t count = testgen::uniform(rng, 0, 20);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t arity = testgen::uniform(rng, 1, 4);
    Rule r;
    for (std::size_t k = 0; k + 1 < arity; ++k) r.premises.push_back(language[testgen::uniform(rng, 0, n - 1)]);
    r.conclusion = language[testgen::uniform(rng, 0, n - 1)];
    rules.push_back(r);
  }
  return LogicSystem(language, rules);
}

Tokens random_subset(testgen::Rng& rng, const std::vector<std::string>& language, double p) {
  Tokens out;
  for (const auto& t : language)
    if (testgen::coin(rng, p)) out.insert(t);
  return out;
}

std::vector<Tokens> subsets_of(const Tokens& x) {
  const std::vector<std::string> items(x.begin(), x.end());
  std::vector<Tokens> out;
  for (std::uint32_t mask = 0; mask < (1u << items.size()); ++mask) {
    Tokens s;
    for (std::size_t i = 0; i < items.size(); ++i)
      if ((mask >> i) & 1u) s.insert(items[i]);
    out.push_back(s);
  }
  return out;
}

void check_operator_axioms(const LogicSystem& ls, testgen::Rng& rng) {
  for (int trial = 0; trial < 4; ++trial) {
    const Tokens x = random_subset(rng, ls.language(), 0.3);
    Tokens y = x;
    for (const auto& t : random_subset(rng, ls.language(), 0.3)) y.insert(t);
    const Tokens cx = closure(ls, x);
    ASSERT_EQ(cx, naive_closure(ls, x));
    ASSERT_TRUE(subset(x, cx));                 // extensive
    ASSERT_EQ(closure(ls, cx), cx);             // idempotent
    ASSERT_TRUE(subset(cx, closure(ls, y)));    // monotone
    if (x.size() <= 8) {                        // finitary
      Tokens uni;
      for (const auto& f : subsets_of(x))
        for (const auto& t : closure(ls, f)) uni.insert(t);
      ASSERT_EQ(uni, cx);
    }
  }
  for (const auto& r : ls.rules()) {
    const Tokens premises(r.premises.begin(), r.premises.end());
    ASSERT_TRUE(closure(ls, premises).count(r.conclusion)) << format_rule(r);
  }
}

}  // namespace

TEST(Rules, FromModelA) {
  const auto ls = rules_from_synthesis(build_model(ModelId::kA));
  std::set<Rule> got(ls.rules().begin(), ls.rules().end());
  EXPECT_EQ(got, (std::set<Rule>{{{"2", "3"}, "1"}, {{"3", "1"}, "2"}, {{"1", "2"}, "3"}}));
  EXPECT_EQ(ls.language(), (std::vector<std::string>{"1", "2", "3"}));
}

TEST(Rules, FromModelB) {
  const auto ls = rules_from_synthesis(build_model(ModelId::kB));
  std::set<Rule> got(ls.rules().begin(), ls.rules().end());
  EXPECT_EQ(got, (std::set<Rule>{{{"3", "1"}, "2"}, {{"4", "2"}, "1"}}));
}

TEST(Rules, OracleByTupleRewrite) {
  // (z, x, y) in S becomes (y, x, z).
  for (int k = 2; k <= 6; ++k) {
    const auto d = build_model_d_finite(k);
    std::set<Rule> expected;
    for (const auto& t : d.labelled_tuples("S")) expected.insert({{t[2], t[1]}, t[0]});
    const auto ls = rules_from_synthesis(d);
    EXPECT_EQ(std::set<Rule>(ls.rules().begin(), ls.rules().end()), expected);
  }
}

TEST(Rules, EmptySynthesis) {
  FiniteStructure s({"a", "b"});
  s.add_table("S", 3);
  EXPECT_TRUE(rules_from_synthesis(s).rules().empty());
  FiniteStructure bare({"a"});
  EXPECT_THROW(rules_from_synthesis(bare), StructureError);
}

TEST(Rules, Validation) {
  EXPECT_THROW(LogicSystem({"a", "a"}, {}), std::invalid_argument);
  EXPECT_THROW(LogicSystem({"a"}, {{{"b"}, "a"}}), std::invalid_argument);
  EXPECT_THROW(LogicSystem({"a"}, {{{"a"}, "c"}}), std::invalid_argument);
  EXPECT_EQ(LogicSystem({"a"}, {{{"a"}, "a"}, {{"a"}, "a"}}).rules().size(), 1u);
  EXPECT_EQ(format_rule({{"2", "3"}, "1"}), "(2,3,1)");
  EXPECT_EQ(format_rule({{}, "1"}), "(1)");
}

TEST(Closure, Examples) {
  const auto a = rules_from_synthesis(build_model(ModelId::kA));
  EXPECT_EQ(closure(a, {"2", "3"}), (Tokens{"1", "2", "3"}));
  EXPECT_EQ(naive_closure(a, {"2", "3"}), (Tokens{"1", "2", "3"}));
  EXPECT_TRUE(closure(a, {}).empty());
  EXPECT_EQ(closure(a, {"1"}), (Tokens{"1"}));

  const auto b = rules_from_synthesis(build_model(ModelId::kB));
  EXPECT_EQ(closure(b, {"1", "3"}), (Tokens{"1", "2", "3"}));
  EXPECT_EQ(naive_closure(b, {"1", "3"}), (Tokens{"1", "2", "3"}));
  EXPECT_THROW(closure(b, {"9"}), std::invalid_argument);
}

TEST(Closure, SetSemanticsAndAxiomTokens) {
  const LogicSystem ls({"p", "q", "r", "s"}, {{{"p", "p"}, "q"}, {{}, "r"}, {{"r", "q"}, "s"}});
  EXPECT_EQ(closure(ls, {}), (Tokens{"r"}));
  EXPECT_EQ(closure(ls, {"p"}), (Tokens{"p", "q", "r", "s"}));
  // Premise order does not matter.
  const LogicSystem swapped({"p", "q", "r", "s"}, {{{"p", "p"}, "q"}, {{}, "r"}, {{"q", "r"}, "s"}});
  EXPECT_EQ(closure(swapped, {"p"}), closure(ls, {"p"}));
}

TEST(Closure, TarskiAxiomsOnRandomSystems) {
  testgen::Rng rng(2024);
  for (int i = 0; i < 500; ++i) check_operator_axioms(random_system(rng), rng);
}

TEST(Closure, TarskiAxiomsOnZooSystems) {
  testgen::Rng rng(8);
  std::vector<FiniteStructure> zoo{build_model(ModelId::kA), build_model(ModelId::kB)};
  for (int k = 2; k <= 12; ++k) zoo.push_back(build_model_d_finite(k));
  const auto c = build_model_c();
  zoo.push_back(c.restrict_to(c.window(4)));
  for (const auto& s : zoo) check_operator_axioms(rules_from_synthesis(s), rng);
}

TEST(ParseRules, Formats) {
  const auto ls = parse_rules("# rules\nlanguage: a b c d\n(a,b,c)\nb c d   # trailing\n\n(d)\n");
  EXPECT_EQ(ls.language(), (std::vector<std::string>{"a", "b", "c", "d"}));
  ASSERT_EQ(ls.rules().size(), 3u);
  EXPECT_EQ(ls.rules()[0], (Rule{{"a", "b"}, "c"}));
  EXPECT_EQ(ls.rules()[1], (Rule{{"b", "c"}, "d"}));
  EXPECT_EQ(ls.rules()[2], (Rule{{}, "d"}));
  EXPECT_EQ(closure(ls, {"a", "b"}), (Tokens{"a", "b", "c", "d"}));
  const auto implicit = parse_rules("(x, y, z)\n");
  EXPECT_EQ(implicit.language(), (std::vector<std::string>{"x", "y", "z"}));
}

TEST(ParseRules, Errors) {
  try {
    parse_rules("(a,b,c)\n(a,b\n");
    FAIL();
  } catch (const RulesFormatError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse_rules("()\n"), RulesFormatError);
  EXPECT_THROW(parse_rules("a (b) c\n"), RulesFormatError);
}
