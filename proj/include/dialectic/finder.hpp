// Finite model finding: ground a scheme over {0, ..., n-1}, solve the
// propositional problem, enumerate models. A brute-force enumerator serves as
// an independent oracle at tiny sizes.

#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dialectic/sat.hpp"
#include "dialectic/schemes.hpp"
#include "dialectic/structure.hpp"

namespace dialectic {

struct GroundAtom {
  std::string predicate;
  Tuple args;
};

struct ClauseOrigin {
  std::string axiom;
  /// Bindings of the axiom's universal prefix, e.g. "x=0, y=2".
  std::string instantiation;
};

struct GroundProblem {
  Scheme scheme;
  std::size_t domain_size = 0;
  /// Predicates in variable order with their arities.
  std::vector<std::pair<std::string, std::size_t>> predicates;
  /// Variables 1..num_atoms are relation atoms; the rest are definitional.
  std::size_t num_atoms = 0;
  std::size_t num_vars = 0;
  std::vector<sat::Clause> clauses;
  std::vector<ClauseOrigin> provenance;  // parallel to clauses

  int atom_variable(std::string_view predicate, std::span<const std::size_t> args) const;
  /// Throws std::out_of_range for auxiliary variables.
  GroundAtom atom(int var) const;
  std::string atom_name(int var) const;

  /// "p cnf" header, one comment line per atom, then the clauses.
  std::string to_dimacs() const;

  /// First variable index (0-based) of each predicate's block.
  std::vector<std::size_t> offsets;
};

struct GroundOptions {
  /// Assert T(0): element 0 witnesses E1. Sound up to isomorphism only.
  bool pin_witness = false;
};

/// exists! is expanded here; equalities between elements fold to constants.
/// Nested connectives get definitional variables (one direction only).
GroundProblem ground(const Scheme& scheme, std::size_t n, GroundOptions options = {});

enum class SolveStatus { kSat, kUnsat, kUnknown };

const char* status_name(SolveStatus s);

struct SolveOutcome {
  SolveStatus status = SolveStatus::kUnknown;
  /// Present iff SAT. Domain labels are "0".."n-1"; N is derived when defined.
  std::optional<FiniteStructure> model;
  sat::Stats stats;
  double seconds = 0;
};

struct SolveOptions {
  std::optional<std::uint64_t> seed;
  std::optional<std::chrono::milliseconds> time_limit;
};

/// Every SAT result is re-checked against the scheme; a failing extraction
/// throws std::logic_error.
SolveOutcome solve(const GroundProblem& problem, SolveOptions options = {});

/// Structure read off the positive atoms of a full assignment.
FiniteStructure extract_structure(const GroundProblem& problem, const std::vector<bool>& assignment);

struct FindOptions {
  /// One representative per isomorphism class (n <= 5).
  bool dedup = false;
  bool pin_witness = false;
  std::optional<std::uint64_t> seed;
};

inline constexpr std::size_t kMaxDedupSize = 5;

/// Up to `limit` models via blocking clauses. With dedup, `limit` counts
/// isomorphism classes and each result is in canonical form.
std::vector<FiniteStructure> find_models(const Scheme& scheme, std::size_t n, std::size_t limit,
                                         FindOptions options = {});

/// Lexicographically least relabeling of s over the scheme's predicates, on
/// labels "0".."n-1". Requires n <= kMaxDedupSize.
FiniteStructure canonical_form(const FiniteStructure& s, const std::vector<std::string>& predicates);

inline constexpr std::size_t kBruteForceBitBudget = 24;

/// Sum of n^arity over the scheme's predicates.
std::size_t relation_bits(const Scheme& scheme, std::size_t n);

/// All models on {0..n-1} by exhaustive enumeration of relation tables.
/// Throws std::invalid_argument when relation_bits exceeds the budget.
std::vector<FiniteStructure> brute_force_models(const Scheme& scheme, std::size_t n);

}  // namespace dialectic
