// Hand-rolled generators shared by the property tests.

#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "dialectic/structure.hpp"
#include "dialectic/syntax.hpp"

namespace testgen {

using dialectic::FiniteStructure;
using dialectic::Formula;
using dialectic::Signature;

using Rng = std::mt19937_64;

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

struct FormulaGen {
  const Signature& signature;
  std::vector<std::string> variables = {"x", "y", "z", "u"};
  bool allow_unique = true;
  /// Probability of a quantifier node at each non-leaf position.
  double quantifier_bias = 0.35;

  // Variables in scope are preferred so that most atoms are bound.
  Formula atom(Rng& rng, const std::vector<std::string>& scope) const {
    auto pick = [&]() -> std::string {
      if (!scope.empty() && coin(rng, 0.9)) return scope[uniform(rng, 0, scope.size() - 1)];
      return variables[uniform(rng, 0, variables.size() - 1)];
    };
    if (coin(rng, 0.2)) return Formula::equality(pick(), pick());
    const auto& symbols = signature.symbols();
    const auto& sym = symbols[uniform(rng, 0, symbols.size() - 1)];
    std::vector<std::string> args;
    for (std::size_t i = 0; i < sym.arity; ++i) args.push_back(pick());
    return Formula::atom(sym.name, args);
  }

  Formula operator()(Rng& rng, int depth, std::vector<std::string> scope = {}) const {
    if (depth <= 0) return atom(rng, scope);
    if (coin(rng, quantifier_bias)) {
      const auto& v = variables[uniform(rng, 0, variables.size() - 1)];
      auto inner = scope;
      inner.push_back(v);
      auto body = (*this)(rng, depth - 1, inner);
      switch (uniform(rng, 0, allow_unique ? 2 : 1)) {
        case 0: return Formula::forall(v, body);
        case 1: return Formula::exists(v, body);
        default: return Formula::exists_unique(v, body);
      }
    }
    switch (uniform(rng, 0, 4)) {
      case 0: return Formula::negation((*this)(rng, depth - 1, scope));
      case 1: return Formula::conjunction((*this)(rng, depth - 1, scope), (*this)(rng, depth - 1, scope));
      case 2: return Formula::disjunction((*this)(rng, depth - 1, scope), (*this)(rng, depth - 1, scope));
      case 3: return Formula::implication((*this)(rng, depth - 1, scope), (*this)(rng, depth - 1, scope));
      default: return atom(rng, scope);
    }
  }
};

/// Closes f by wrapping free variables in random quantifiers.
inline Formula close(Rng& rng, Formula f, bool allow_unique = true) {
  for (const auto& v : dialectic::free_variables(f)) {
    switch (uniform(rng, 0, allow_unique ? 2 : 1)) {
      case 0: f = Formula::forall(v, f); break;
      case 1: f = Formula::exists(v, f); break;
      default: f = Formula::exists_unique(v, f); break;
    }
  }
  return f;
}

inline std::vector<std::string> labels(std::size_t n, std::size_t first = 0) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(first + i));
  return out;
}

/// Calls visit on every structure over {0..n-1} for the signature, reusing one
/// mutable structure. Returns the number of structures visited.
inline std::uint64_t for_each_structure(const Signature& sig, std::size_t n,
                                        const std::function<void(const FiniteStructure&)>& visit) {
  FiniteStructure s(labels(n));
  struct Slot {
    dialectic::Relation* rel;
    std::uint64_t code;
  };
  std::vector<Slot> slots;
  for (const auto& sym : sig.symbols()) {
    auto& rel = s.add_table(sym.name, sym.arity);
    for (std::uint64_t c = 0; c < rel.universe(); ++c) slots.push_back({&rel, c});
  }
  const std::uint64_t total = std::uint64_t{1} << slots.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    for (std::size_t b = 0; b < slots.size(); ++b) slots[b].rel->set_code(slots[b].code, (mask >> b) & 1u);
    visit(s);
  }
  return total;
}

/// Random structure over the signature with tuple density p.
inline FiniteStructure random_structure(Rng& rng, const Signature& sig, std::size_t n, double p = 0.4) {
  FiniteStructure s(labels(n));
  for (const auto& sym : sig.symbols()) {
    auto& rel = s.add_table(sym.name, sym.arity);
    for (std::uint64_t c = 0; c < rel.universe(); ++c)
      if (coin(rng, p)) rel.set_code(c, true);
  }
  return s;
}

}  // namespace testgen
