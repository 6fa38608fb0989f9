// Finitary rules of inference read off the synthesis relation, and the
// consequence operator (deductive closure) they generate.

#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dialectic/structure.hpp"

namespace dialectic {

/// From all premises, deduce the conclusion. No premises: an axiom token.
struct Rule {
  std::vector<std::string> premises;
  std::string conclusion;

  friend bool operator==(const Rule&, const Rule&) = default;
  friend auto operator<=>(const Rule&, const Rule&) = default;
};

/// "(p1,...,q)"
std::string format_rule(const Rule& r);

class LogicSystem {
 public:
  /// Throws std::invalid_argument on duplicate language tokens or a rule
  /// component outside the language. Duplicate rules are dropped.
  LogicSystem(std::vector<std::string> language, std::vector<Rule> rules);

  const std::vector<std::string>& language() const { return language_; }
  const std::vector<Rule>& rules() const { return rules_; }
  bool contains(std::string_view token) const;

  /// Tokens of a set listed in language order.
  std::vector<std::string> ordered(const std::set<std::string>& tokens) const;

 private:
  std::vector<std::string> language_;
  std::set<std::string, std::less<>> members_;
  std::vector<Rule> rules_;
};

/// Rules (y, x, z) for every (z, x, y) in S; the language is the domain.
/// Throws StructureError when s has no S table.
LogicSystem rules_from_synthesis(const FiniteStructure& s);

/// Least superset of `premises` closed under the rules. Rules fire on set
/// membership, so a repeated premise needs only one occurrence.
/// Throws std::invalid_argument for a premise outside the language.
std::set<std::string> closure(const LogicSystem& ls, const std::set<std::string>& premises);

class RulesFormatError : public std::runtime_error {
 public:
  RulesFormatError(const std::string& message, std::size_t line);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// One rule per line, "(2,3,1)" or "2 3 1", conclusion last. An optional
/// "language: a b c" line declares extra tokens; otherwise the language is
/// every token mentioned. '#' starts a comment.
LogicSystem parse_rules(std::string_view text);

}  // namespace dialectic
