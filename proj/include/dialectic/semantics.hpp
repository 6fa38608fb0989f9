// Tarskian satisfaction over finite structures, scheme checking with
// counterexamples, and windowed checking of infinite computable structures.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dialectic/schemes.hpp"
#include "dialectic/structure.hpp"
#include "dialectic/syntax.hpp"

namespace dialectic {

using BigInt = boost::multiprecision::cpp_int;

/// Variable name -> element label.
using Assignment = std::map<std::string, std::string, std::less<>>;

class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A formula compiled against one structure. Relation pointers are captured
/// at construction, so table contents may change between calls (the brute
/// force oracle relies on this) but tables must not be added or removed.
class Evaluator {
 public:
  /// `free_order` fixes the slot order of the formula's free variables; any
  /// free variable not listed is an error.
  Evaluator(const FiniteStructure& s, const Formula& f, const std::vector<std::string>& free_order = {});

  /// Values are domain indices, one per entry of `free_order`.
  bool operator()(std::span<const std::size_t> free_values = {}) const;

 private:
  struct Node {
    Formula::Kind kind;
    const Relation* relation = nullptr;
    std::vector<std::size_t> slots;  // atom/equality operands
    std::size_t slot = 0;            // bound variable
    int lhs = -1;
    int rhs = -1;
  };

  int compile(const Formula& f, std::map<std::string, std::size_t, std::less<>>& slots);
  bool eval(int node, std::vector<std::size_t>& env) const;

  const FiniteStructure* structure_;
  std::vector<Node> nodes_;
  std::size_t num_free_;
  std::size_t num_slots_ = 0;
  int root_ = -1;
};

bool evaluate(const FiniteStructure& s, const Formula& f, const Assignment& env = {});

enum class Verdict {
  kPass,
  kFail,
  /// A required predicate has no table; counts as failure.
  kMissingPredicate,
  /// An optional axiom whose predicates are missing; does not count as failure.
  kSkippedMissingPredicate,
  /// A witness function misbehaved (bounded checks only); counts as failure.
  kStructureError,
};

const char* verdict_name(Verdict v);

struct AxiomResult {
  std::string label;
  Verdict verdict = Verdict::kPass;
  /// Values for the axiom's leading universal variables that falsify it.
  std::vector<std::pair<std::string, std::string>> counterexample;
  std::string detail;
};

struct BoundedWindow {
  std::size_t universal = 0;
  std::size_t existential = 0;
};

struct CheckReport {
  std::string scheme;
  std::vector<AxiomResult> entries;
  /// Problems with the structure itself, e.g. a declared N that differs from
  /// the derived one.
  std::vector<std::string> structure_errors;
  std::optional<BoundedWindow> window;

  bool all_pass() const;
  std::vector<Verdict> verdicts() const;
  const AxiomResult& entry(std::string_view label) const;
};

struct CheckOptions {
  /// Compare a declared N table against derived_n.
  bool cross_check_n = true;
};

CheckReport check_scheme(const FiniteStructure& s, const Scheme& scheme, CheckOptions options = {});

/// { z | exists x, y: S(z,x,y) & D(z,x) & D(z,y) } in domain order.
std::vector<std::string> derived_n(const FiniteStructure& s);

/// Copy of s whose N table is replaced by derived_n(s).
FiniteStructure with_derived_n(FiniteStructure s);

/// Splits an axiom into its leading universal variables and the matrix.
std::pair<std::vector<std::string>, Formula> universal_prefix(const Formula& f);

// ---------------------------------------------------------------------------
// Infinite structures given by decision procedures.

using BigAssignment = std::map<std::string, BigInt, std::less<>>;

struct Membership {
  std::size_t arity = 1;
  std::function<bool(std::span<const BigInt>)> test;
};

/// Produces an existential witness from the bindings in scope, or nothing.
using WitnessFn = std::function<std::optional<BigInt>(const BigAssignment&)>;

struct ComputableStructure {
  std::string name;
  std::function<bool(const BigInt&)> element_test;
  /// The first m elements of a fixed enumeration of the domain.
  std::function<std::vector<BigInt>(std::size_t)> window;
  std::map<std::string, Membership, std::less<>> membership;
  /// Keyed by (axiom label, existential variable name).
  std::map<std::pair<std::string, std::string>, WitnessFn> witnesses;

  bool holds(std::string_view predicate, std::span<const BigInt> args) const;

  /// Induced finite substructure on the given elements (labels are decimal).
  FiniteStructure restrict_to(const std::vector<BigInt>& elements) const;
};

/// Universal quantifiers (by polarity) range over window(universal_window);
/// existential ones search window(existential_window) and fall back to the
/// registered witness function. A pass only asserts bounded satisfaction.
CheckReport bounded_check(const ComputableStructure& cs, const Scheme& scheme, std::size_t universal_window,
                          std::size_t existential_window);

}  // namespace dialectic
