#include "dialectic/schemes.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>

namespace dialectic {

namespace {

// Axiom sources in the formula grammar. N appears unexpanded here.
const std::map<std::string, std::string, std::less<>>& axiom_texts() {
  static const std::map<std::string, std::string, std::less<>> texts = {
      {"E1", "exists x. T(x)"},
      {"E2", "forall x. (T(x) -> exists! y. A(y, x))"},
      {"E3", "forall x. forall y. (A(y, x) -> exists! z. S(z, x, y))"},
      {"R1", "forall x. forall y. (A(y, x) -> T(x) & ~A(x, y))"},
      {"R2", "forall x. forall y. forall z. (S(z, x, y) -> T(z) & (A(x, y) | A(y, x)) & ~(S(x, z, y) | S(y, x, z)))"},
      {"E4", "exists x. N(x)"},
      {"E5", "forall x. (N(x) -> exists y. (N(y) & y != x))"},
      {"E5.1", "forall x. (N(x) -> exists y. (N(y) & P(x, y)))"},
      {"E6.1", "forall x. exists y. P(x, y)"},
      {"R1.1", "forall x. forall y. (A(y, x) -> T(x) & P(x, y))"},
      {"R2.1",
       "forall x. forall y. forall z. (S(z, x, y) -> T(z) & (A(x, y) | A(y, x)) & S(z, y, x) & P(x, z) & P(y, z))"},
      {"R3.1", "forall x. forall y. (P(x, y) -> ~P(y, x))"},
      {"R4.1", "forall x. forall y. forall z. (P(x, y) & P(y, z) -> P(x, z))"},
      // x is an antithesis: exists y. (T(y) & A(x, y))
      {"Ext", "forall x. ((exists y. (T(y) & A(x, y))) -> exists y. ((exists z. (T(z) & A(y, z))) & P(x, y)))"},
  };
  return texts;
}

Formula parse_axiom(std::string_view label) {
  return parse_formula(axiom_source(label), tas_signature(), {.require_closed = true});
}

Formula n_definition(const std::string& subject, FreshNames& names) {
  const std::string x = names.next("x");
  const std::string y = names.next("y");
  Formula matrix = Formula::conjunction(
      Formula::conjunction(Formula::atom("S", {subject, x, y}), Formula::atom("D", {subject, x})),
      Formula::atom("D", {subject, y}));
  return Formula::exists(x, Formula::exists(y, std::move(matrix)));
}

Formula expand_n(const Formula& f, FreshNames& names) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::kAtom:
      return f.predicate() == "N" ? n_definition(f.args()[0], names) : f;
    case K::kEquality:
      return f;
    case K::kNot: {
      Formula inner = expand_n(f.lhs(), names);
      return inner == f.lhs() ? f : Formula::negation(std::move(inner));
    }
    case K::kAnd:
    case K::kOr:
    case K::kImplies: {
      Formula l = expand_n(f.lhs(), names);
      Formula r = expand_n(f.rhs(), names);
      if (l == f.lhs() && r == f.rhs()) return f;
      if (f.kind() == K::kAnd) return Formula::conjunction(std::move(l), std::move(r));
      if (f.kind() == K::kOr) return Formula::disjunction(std::move(l), std::move(r));
      return Formula::implication(std::move(l), std::move(r));
    }
    default: {
      Formula body = expand_n(f.body(), names);
      if (body == f.body()) return f;
      if (f.kind() == K::kForAll) return Formula::forall(f.var(), std::move(body));
      if (f.kind() == K::kExists) return Formula::exists(f.var(), std::move(body));
      return Formula::exists_unique(f.var(), std::move(body));
    }
  }
}

Axiom make_axiom(std::string_view label, bool optional = false) {
  return Axiom{std::string(label), expand_defined_n(parse_axiom(label)), optional};
}

}  // namespace

const Axiom& Scheme::axiom(std::string_view label) const {
  for (const auto& a : axioms)
    if (a.label == label) return a;
  throw std::out_of_range("scheme " + name + " has no axiom '" + std::string(label) + "'");
}

bool Scheme::has_axiom(std::string_view label) const {
  return std::any_of(axioms.begin(), axioms.end(), [&](const Axiom& a) { return a.label == label; });
}

SchemeId parse_scheme_id(std::string_view text) {
  if (text == "tas1") return SchemeId::kTas1;
  if (text == "tas2") return SchemeId::kTas2;
  if (text == "tas3") return SchemeId::kTas3;
  throw std::invalid_argument("unknown scheme '" + std::string(text) + "' (expected tas1, tas2 or tas3)");
}

std::string scheme_name(SchemeId id) {
  switch (id) {
    case SchemeId::kTas1: return "TAS1";
    case SchemeId::kTas2: return "TAS2";
    case SchemeId::kTas3: return "TAS3";
  }
  return "?";
}

std::string axiom_source(std::string_view label) {
  auto it = axiom_texts().find(label);
  if (it == axiom_texts().end()) throw std::out_of_range("no built-in axiom '" + std::string(label) + "'");
  return it->second;
}

Formula expand_defined_n(const Formula& f) {
  FreshNames names(all_variables(f));
  return expand_n(f, names);
}

Scheme tas_scheme(SchemeId id, bool with_extension) {
  if (with_extension && id != SchemeId::kTas3)
    throw std::invalid_argument("the extension axiom is only defined for TAS3");

  Scheme s;
  s.name = scheme_name(id);
  switch (id) {
    case SchemeId::kTas1:
      s.required_predicates = {"T", "A", "S"};
      for (auto label : {"E1", "E2", "E3", "R1", "R2"}) s.axioms.push_back(make_axiom(label));
      break;
    case SchemeId::kTas2:
      s.required_predicates = {"T", "A", "S", "D"};
      for (auto label : {"E1", "E2", "E3", "R1", "R2", "E4", "E5"}) s.axioms.push_back(make_axiom(label));
      break;
    case SchemeId::kTas3:
      s.required_predicates = {"T", "A", "S", "D", "P"};
      for (auto label : {"E1", "E2", "E3", "E4", "E5.1", "E6.1", "R1.1", "R2.1", "R3.1", "R4.1"})
        s.axioms.push_back(make_axiom(label));
      if (with_extension) {
        s.name += "+Ext";
        s.axioms.push_back(make_axiom("Ext", true));
      }
      break;
  }
  return s;
}

Scheme infinity_core_scheme() {
  Scheme s;
  s.name = "TAS3-core";
  s.required_predicates = {"N", "P"};
  s.n_is_defined = false;
  for (auto label : {"E4", "E5.1", "R3.1", "R4.1"}) s.axioms.push_back(Axiom{label, parse_axiom(label), false});
  return s;
}

Scheme expand_unique(const Scheme& scheme) {
  Scheme out = scheme;
  for (auto& a : out.axioms) a.formula = expand_unique_existence(a.formula);
  return out;
}

Scheme expand_defined(const Scheme& scheme) {
  Scheme out = scheme;
  for (auto& a : out.axioms) a.formula = expand_defined_n(a.formula);
  return out;
}

}  // namespace dialectic
