// The .dlm structure file format and report rendering.
//
//   # comment
//   domain: 1 2 3
//   T: (1) (2) (3)
//   A: (2,1) (3,2) (1,3)
//   S: (1,3,2) (2,1,3) (3,2,1)
//
// Unary tables also accept bare labels ("T: 1 2 3"). A relation line with no
// tuples declares an empty table. A declared N is kept as a table and only
// ever cross-checked against the derived one.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dialectic/semantics.hpp"
#include "dialectic/structure.hpp"

namespace dialectic {

class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& message, std::size_t line);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Relation names the format knows, in emission order, with arities.
const std::vector<std::pair<std::string, std::size_t>>& dlm_relations();

struct ParsedStructure {
  FiniteStructure structure;
  /// E.g. duplicate tuples that were collapsed.
  std::vector<std::string> warnings;
};

ParsedStructure parse_dlm(std::string_view text);

/// Canonical text: domain line, then tables in dlm_relations() order with
/// tuples in domain order. Throws StructureError for a table the format does
/// not know.
std::string emit_dlm(const FiniteStructure& s);

/// Axiom files hold one closed formula per line as `LABEL: formula`, over the
/// relations above; `#` starts a comment. N is expanded by its definition.
/// Throws FormatError for syntax errors, free variables or repeated labels.
std::vector<Axiom> parse_axiom_file(std::string_view text);

std::string format_report(const CheckReport& report);

/// {"schema": 1, "scheme": ..., "all_pass": ..., "axioms": [...], ...}
nlohmann::json report_json(const CheckReport& report);

}  // namespace dialectic
