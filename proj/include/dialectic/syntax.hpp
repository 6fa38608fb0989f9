// First-order formulas with equality and the unique-existence quantifier.
//
// Formulas are immutable values backed by shared nodes, so copying is cheap
// and sharing across threads is safe. There are no function symbols or
// constants: every argument position holds a variable.

#pragma once

#include <cstddef>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dialectic {

/// Predicate symbols with arities. Equality is built in and never listed.
class Signature {
 public:
  struct Symbol {
    std::string name;
    std::size_t arity;
    bool operator==(const Symbol&) const = default;
  };

  Signature() = default;
  explicit Signature(std::vector<Symbol> symbols);

  void add(std::string name, std::size_t arity);
  bool contains(std::string_view name) const;
  std::size_t arity(std::string_view name) const;  // throws std::out_of_range
  const std::vector<Symbol>& symbols() const { return symbols_; }

 private:
  std::vector<Symbol> symbols_;
};

/// T/1, N/1, A/2, D/2, P/2, S/3.
const Signature& tas_signature();

class Formula {
 public:
  enum class Kind { kAtom, kEquality, kNot, kAnd, kOr, kImplies, kForAll, kExists, kExistsUnique };

  static Formula atom(std::string predicate, std::vector<std::string> args);
  static Formula equality(std::string lhs, std::string rhs);
  static Formula negation(Formula f);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula disjunction(Formula lhs, Formula rhs);
  static Formula implication(Formula lhs, Formula rhs);
  static Formula forall(std::string var, Formula body);
  static Formula exists(std::string var, Formula body);
  static Formula exists_unique(std::string var, Formula body);

  Kind kind() const;
  bool is_quantifier() const;
  bool is_binary() const;

  /// Predicate name for atoms.
  const std::string& predicate() const;
  /// Atom arguments, or the two sides of an equality.
  const std::vector<std::string>& args() const;
  /// Bound variable of a quantifier.
  const std::string& var() const;
  /// Operand of Not, body of a quantifier, left side of a binary connective.
  const Formula& lhs() const;
  const Formula& rhs() const;
  const Formula& body() const { return lhs(); }

  /// Structural equality (bound variable names must match).
  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Formula::Node {
  Kind kind;
  std::string name;               // predicate or bound variable
  std::vector<std::string> args;  // atom / equality operands
  std::vector<Formula> children;
};

/// Syntax error carrying a zero-based character offset into the source text.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

struct ParseOptions {
  /// Reject formulas with free variables.
  bool require_closed = false;
};

/// Grammar (lowest to highest precedence):
///
///   formula     := implication
///   implication := disjunction [ "->" implication ]
///   disjunction := conjunction { "|" conjunction }
///   conjunction := unary { "&" unary }
///   unary       := "~" unary | quantifier | primary
///   quantifier  := ("forall" | "exists" | "exists!") IDENT "." formula
///   primary     := "(" formula ")" | IDENT "(" IDENT { "," IDENT } ")"
///                | IDENT "=" IDENT | IDENT "!=" IDENT
///
/// A quantifier body extends as far right as possible. `x != y` is sugar for
/// `~(x = y)`.
Formula parse_formula(std::string_view text, const Signature& signature, ParseOptions options = {});

/// Prints in the grammar above; parse_formula(format_formula(f)) == f.
std::string format_formula(const Formula& f);

std::set<std::string> free_variables(const Formula& f);

/// Every variable name occurring in f, bound or free.
std::set<std::string> all_variables(const Formula& f);

/// Every predicate name occurring in f.
std::set<std::string> predicates_of(const Formula& f);

/// Rewrites every `exists! y. phi(y)` as
/// `exists y. (phi(y) & forall w. (phi(w) -> w = y))` with w fresh for the
/// whole formula. Formulas without exists! come back unchanged.
Formula expand_unique_existence(const Formula& f);

/// Capture-avoiding substitution of free occurrences of `from` by `to`.
Formula substitute(const Formula& f, const std::string& from, const std::string& to);

/// Equal up to consistent renaming of bound variables.
bool alpha_equivalent(const Formula& a, const Formula& b);

/// Returns `base` if unused, else the first free `base1`, `base2`, ...; records it.
class FreshNames {
 public:
  explicit FreshNames(std::set<std::string> taken) : taken_(std::move(taken)) {}
  std::string next(const std::string& base);

 private:
  std::set<std::string> taken_;
};

}  // namespace dialectic
