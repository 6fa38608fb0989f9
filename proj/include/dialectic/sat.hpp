// A small conflict-driven clause-learning SAT solver.
//
// Branching is deterministic by default: the lowest-index unassigned
// variable, tried false first. A seed switches to a shuffled variable order
// with random polarities. No restarts, no clause deletion.

#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace dialectic::sat {

/// DIMACS-style literal: +v or -v for variable v >= 1.
using Literal = int;
using Clause = std::vector<Literal>;

struct Stats {
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t learned = 0;
};

struct Options {
  std::optional<std::uint64_t> seed;
  std::optional<std::chrono::milliseconds> time_limit;
};

enum class Result { kSat, kUnsat, kUnknown };

class Solver {
 public:
  explicit Solver(std::size_t num_vars, Options options = {});

  std::size_t num_vars() const { return num_vars_; }

  /// May be called before or between solve() calls.
  void add_clause(const Clause& clause);

  Result solve();

  /// Value of a variable in the last model found.
  bool model_value(int var) const { return model_.at(static_cast<std::size_t>(var - 1)); }
  const std::vector<bool>& model() const { return model_; }

  const Stats& stats() const { return stats_; }

 private:
  using Lit = std::uint32_t;  // 2 * (var - 1) + negated
  static constexpr int kNoReason = -1;

  Lit to_lit(Literal l) const;
  static Lit negate(Lit l) { return l ^ 1u; }
  static std::size_t var_of(Lit l) { return l >> 1; }

  // 1 true, 0 false, -1 unassigned.
  int value(Lit l) const {
    const int v = assigns_[var_of(l)];
    return v < 0 ? -1 : (v ^ static_cast<int>(l & 1u));
  }

  void enqueue(Lit l, int reason);
  int propagate();
  void analyze(int conflict, std::vector<Lit>& learnt, int& backjump_level);
  void cancel_until(int level);
  int decision_level() const { return static_cast<int>(trail_lim_.size()); }
  int attach(std::vector<Lit> lits);
  std::optional<Lit> pick_branch();

  std::size_t num_vars_;
  Options options_;
  bool unsat_ = false;

  std::vector<std::vector<Lit>> clauses_;
  std::vector<std::vector<int>> watches_;  // indexed by literal
  std::vector<int> assigns_;
  std::vector<int> level_;
  std::vector<int> reason_;
  std::vector<Lit> trail_;
  std::vector<std::size_t> trail_lim_;
  std::size_t qhead_ = 0;

  std::vector<std::size_t> order_;      // branching order of variables
  std::vector<std::size_t> position_;   // var -> index in order_
  std::vector<bool> polarity_;          // true = try positive first
  std::size_t next_branch_ = 0;

  std::vector<char> seen_;
  std::vector<bool> model_;
  Stats stats_;
};

}  // namespace dialectic::sat
