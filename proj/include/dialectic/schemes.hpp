// The three dialectical axiom schemes over T/1, A/2, S/3, D/2, P/2.
//
// N is a defined predicate: N(z) := exists x. exists y. S(z,x,y) & D(z,x) & D(z,y).
// Built-in schemes store their axioms with N already expanded, so checking
// never reads a declared N table.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dialectic/syntax.hpp"

namespace dialectic {

struct Axiom {
  std::string label;
  Formula formula;
  /// Optional extension axioms are skipped (not failed) when a predicate is missing.
  bool optional = false;
};

struct Scheme {
  std::string name;
  std::vector<Axiom> axioms;
  /// Predicates a structure must provide, in grounding order.
  std::vector<std::string> required_predicates;
  /// True when N is a defined predicate (expanded); false when N is primitive.
  bool n_is_defined = true;

  const Axiom& axiom(std::string_view label) const;  // throws std::out_of_range
  bool has_axiom(std::string_view label) const;
};

enum class SchemeId { kTas1, kTas2, kTas3 };

SchemeId parse_scheme_id(std::string_view text);  // "tas1" | "tas2" | "tas3"
std::string scheme_name(SchemeId id);

/// The extension (antithesis progression) exists only for TAS3; requesting
/// it for TAS1/TAS2 throws std::invalid_argument.
Scheme tas_scheme(SchemeId id, bool with_extension = false);

/// {E4, E5.1, R3.1, R4.1} with N primitive, over N/1 and P/2.
Scheme infinity_core_scheme();

/// The unexpanded source text of a built-in axiom, e.g. "exists x. N(x)".
std::string axiom_source(std::string_view label);

/// Replaces every N(t) with its definition using fresh bound variables.
/// Idempotent: a formula without N is returned unchanged.
Formula expand_defined_n(const Formula& f);

/// Applies expand_unique_existence to every axiom.
Scheme expand_unique(const Scheme& scheme);

/// Applies expand_defined_n to every axiom.
Scheme expand_defined(const Scheme& scheme);

}  // namespace dialectic
