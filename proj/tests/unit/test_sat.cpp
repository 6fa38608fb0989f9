#include <gtest/gtest.h>

#include "dialectic/sat.hpp"
#include "generators.hpp"

using namespace dialectic::sat;

namespace {

bool satisfies(const std::vector<bool>& model, const std::vector<Clause>& clauses) {
  for (const auto& c : clauses) {
    bool sat = false;
    for (auto l : c) sat = sat || model[static_cast<std::size_t>(std::abs(l) - 1)] == (l > 0);
    if (!sat) return false;
  }
  return true;
}

bool brute_force_sat(std::size_t vars, const std::vector<Clause>& clauses) {
  std::vector<bool> model(vars);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << vars); ++mask) {
    for (std::size_t v = 0; v < vars; ++v) model[v] = (mask >> v) & 1u;
    if (satisfies(model, clauses)) return true;
  }
  return false;
}

// Pigeons p into holes h: variable p*h + j + 1 means pigeon p sits in hole j.
std::vector<Clause> pigeonhole(int pigeons, int holes) {
  std::vector<Clause> out;
  auto var = [&](int p, int j) { return p * holes + j + 1; };
  for (int p = 0; p < pigeons; ++p) {
    Clause c;
    for (int j = 0; j < holes; ++j) c.push_back(var(p, j));
    out.push_back(c);
  }
  for (int j = 0; j < holes; ++j)
    for (int p = 0; p < pigeons; ++p)
      for (int q = p + 1; q < pigeons; ++q) out.push_back({-var(p, j), -var(q, j)});
  return out;
}

Result run(std::size_t vars, const std::vector<Clause>& clauses, Options opts = {}) {
  Solver s(vars, opts);
  for (const auto& c : clauses) s.add_clause(c);
  return s.solve();
}

}  // namespace

TEST(Sat, Trivial) {
  EXPECT_EQ(run(1, {}), Result::kSat);
  EXPECT_EQ(run(1, {{1}, {-1}}), Result::kUnsat);
  EXPECT_EQ(run(2, {{}}), Result::kUnsat);
  EXPECT_EQ(run(2, {{1, -1}}), Result::kSat);
  Solver s(3);
  s.add_clause({-1});
  s.add_clause({1, 2});
  s.add_clause({-2, 3});
  ASSERT_EQ(s.solve(), Result::kSat);
  EXPECT_FALSE(s.model_value(1));
  EXPECT_TRUE(s.model_value(2));
  EXPECT_TRUE(s.model_value(3));
}

TEST(Sat, FalseFirstBranching) {
  Solver s(3);
  s.add_clause({1, 2, 3});
  ASSERT_EQ(s.solve(), Result::kSat);
  EXPECT_EQ(s.model(), (std::vector<bool>{false, false, true}));
}

TEST(Sat, Pigeonhole) {
  EXPECT_EQ(run(12, pigeonhole(4, 3)), Result::kUnsat);
  EXPECT_EQ(run(30, pigeonhole(6, 5)), Result::kUnsat);
  EXPECT_EQ(run(16, pigeonhole(4, 4)), Result::kSat);
}

TEST(Sat, TimeLimit) {
  const auto clauses = pigeonhole(11, 10);
  EXPECT_EQ(run(110, clauses, {.seed = std::nullopt, .time_limit = std::chrono::milliseconds(1)}), Result::kUnknown);
}

TEST(Sat, RandomAgainstBruteForce) {
  testgen::Rng rng(1234);
  int sat = 0, unsat = 0;
  for (int i = 0; i < 600; ++i) {
    const std::size_t vars = testgen::uniform(rng, 1, 12);
    const std::size_t count = testgen::uniform(rng, 0, vars * 5);
    std::vector<Clause> clauses;
    for (std::size_t c = 0; c < count; ++c) {
      Clause clause;
      const std::size_t width = testgen::uniform(rng, 1, 4);
      for (std::size_t k = 0; k < width; ++k) {
        const int v = static_cast<int>(testgen::uniform(rng, 1, vars));
        clause.push_back(testgen::coin(rng) ? v : -v);
      }
      clauses.push_back(clause);
    }
    const bool expected = brute_force_sat(vars, clauses);
    for (std::optional<std::uint64_t> seed : {std::optional<std::uint64_t>{}, std::optional<std::uint64_t>{i}}) {
      Solver s(vars, {.seed = seed, .time_limit = std::nullopt});
      for (const auto& c : clauses) s.add_clause(c);
      const auto r = s.solve();
      ASSERT_EQ(r == Result::kSat, expected) << "instance " << i;
      if (r == Result::kSat) ASSERT_TRUE(satisfies(s.model(), clauses));
    }
    (expected ? sat : unsat)++;
  }
  EXPECT_GT(sat, 50);
  EXPECT_GT(unsat, 50);
}

TEST(Sat, IncrementalEnumeration) {
  // All 2^4 assignments of 4 unconstrained variables, blocked one by one.
  Solver s(4);
  int found = 0;
  while (s.solve() == Result::kSat) {
    ++found;
    Clause block;
    for (int v = 1; v <= 4; ++v) block.push_back(s.model_value(v) ? -v : v);
    s.add_clause(block);
  }
  EXPECT_EQ(found, 16);
  EXPECT_EQ(s.solve(), Result::kUnsat);
}

TEST(Sat, Deterministic) {
  const auto clauses = pigeonhole(6, 5);
  Solver a(30), b(30);
  for (const auto& c : clauses) {
    a.add_clause(c);
    b.add_clause(c);
  }
  a.solve();
  b.solve();
  EXPECT_EQ(a.stats().decisions, b.stats().decisions);
  EXPECT_EQ(a.stats().propagations, b.stats().propagations);
  EXPECT_EQ(a.stats().conflicts, b.stats().conflicts);
}

TEST(Sat, LiteralRange) {
  Solver s(2);
  EXPECT_THROW(s.add_clause({3}), std::out_of_range);
  EXPECT_THROW(s.add_clause({0}), std::out_of_range);
}
