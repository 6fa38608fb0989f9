#include "dialectic/dlm.hpp"

#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "dialectic/zoo.hpp"

namespace dialectic {

FormatError::FormatError(const std::string& message, std::size_t line)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

const std::vector<std::pair<std::string, std::size_t>>& dlm_relations() {
  static const std::vector<std::pair<std::string, std::size_t>> relations = {
      {"T", 1}, {kAntithesisTable, 1}, {"A", 2}, {"S", 3}, {"D", 2}, {"P", 2}, {"N", 1}};
  return relations;
}

namespace {

std::optional<std::size_t> known_arity(std::string_view name) {
  for (const auto& [n, arity] : dlm_relations())
    if (n == name) return arity;
  return std::nullopt;
}

bool label_char(char c) {
  return c != '(' && c != ')' && c != ',' && c != ':' && c != '#' && c != ' ' && c != '\t' && c != '\r';
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Tuples on the right of "name:". Each is "(a,b,...)" or a bare label.
std::vector<std::vector<std::string>> parse_tuples(std::string_view text, std::size_t line_no) {
  std::vector<std::vector<std::string>> out;
  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\r')) ++i;
  };
  auto read_label = [&]() {
    const std::size_t start = i;
    while (i < text.size() && label_char(text[i])) ++i;
    if (i == start) throw FormatError("expected an element label at column " + std::to_string(i + 1), line_no);
    return std::string(text.substr(start, i - start));
  };
  for (;;) {
    skip_space();
    if (i == text.size()) break;
    if (text[i] != '(') {
      out.push_back({read_label()});
      continue;
    }
    ++i;
    std::vector<std::string> tuple;
    for (;;) {
      skip_space();
      tuple.push_back(read_label());
      skip_space();
      if (i == text.size()) throw FormatError("unterminated tuple", line_no);
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (text[i] != ',') throw FormatError(std::string("unexpected '") + text[i] + "' in tuple", line_no);
      ++i;
    }
    out.push_back(std::move(tuple));
  }
  return out;
}

}  // namespace

ParsedStructure parse_dlm(std::string_view text) {
  std::optional<FiniteStructure> s;
  std::vector<std::string> warnings;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto colon = line.find(':');
    if (colon == std::string_view::npos) throw FormatError("expected 'name: ...'", line_no);
    const std::string name(trim(line.substr(0, colon)));
    const std::string_view rest = line.substr(colon + 1);

    if (name == "domain") {
      if (s) throw FormatError("second domain line", line_no);
      std::vector<std::string> labels;
      std::istringstream in{std::string(rest)};
      for (std::string t; in >> t;) {
        for (char c : t)
          if (!label_char(c)) throw FormatError("invalid element label '" + t + "'", line_no);
        labels.push_back(t);
      }
      try {
        s.emplace(std::move(labels));
      } catch (const StructureError& e) {
        throw FormatError(e.what(), line_no);
      }
      continue;
    }
    if (!s) throw FormatError("the domain line must come first", line_no);
    const auto arity = known_arity(name);
    if (!arity) throw FormatError("unknown relation '" + name + "'", line_no);
    s->add_table(name, *arity);
    for (const auto& tuple : parse_tuples(rest, line_no)) {
      if (tuple.size() != *arity)
        throw FormatError(name + " has arity " + std::to_string(*arity) + " but a tuple has " +
                              std::to_string(tuple.size()) + " components",
                          line_no);
      bool fresh = false;
      try {
        fresh = s->insert(name, tuple);
      } catch (const StructureError& e) {
        throw FormatError(e.what(), line_no);
      }
      if (!fresh) {
        std::string shown = "(";
        for (std::size_t k = 0; k < tuple.size(); ++k) shown += (k ? "," : "") + tuple[k];
        warnings.push_back("line " + std::to_string(line_no) + ": duplicate tuple " + name + shown + ") ignored");
      }
    }
  }
  if (!s) throw FormatError("missing domain line", line_no);
  return {std::move(*s), std::move(warnings)};
}

std::vector<Axiom> parse_axiom_file(std::string_view text) {
  static const Signature sig = [] {
    Signature out;
    for (const auto& [name, arity] : dlm_relations()) out.add(name, arity);
    return out;
  }();
  std::vector<Axiom> axioms;
  std::set<std::string> seen;
  std::istringstream in{std::string(text)};
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw FormatError("expected 'LABEL: formula'", line_no);
    std::string label = line.substr(first, colon - first);
    while (!label.empty() && (label.back() == ' ' || label.back() == '\t')) label.pop_back();
    if (label.empty() || label.find_first_of(" \t") != std::string::npos)
      throw FormatError("bad axiom label '" + label + "'", line_no);
    if (!seen.insert(label).second) throw FormatError("axiom '" + label + "' defined twice", line_no);
    try {
      const auto f = parse_formula(std::string_view(line).substr(colon + 1), sig, {.require_closed = true});
      axioms.push_back({label, expand_defined_n(f)});
    } catch (const ParseError& e) {
      throw FormatError(label + ": " + e.what(), line_no);
    }
  }
  if (axioms.empty()) throw FormatError("no axioms", line_no == 0 ? 1 : line_no);
  return axioms;
}

std::string emit_dlm(const FiniteStructure& s) {
  for (const auto& [name, rel] : s.tables())
    if (!known_arity(name)) throw StructureError("table '" + name + "' cannot be written to a .dlm file");
  std::string out = "domain:";
  for (const auto& l : s.domain()) out += " " + l;
  out += "\n";
  for (const auto& [name, arity] : dlm_relations()) {
    if (!s.has_table(name)) continue;
    out += name + ":";
    for (const auto& t : s.labelled_tuples(name)) {
      out += " (";
      for (std::size_t k = 0; k < t.size(); ++k) out += (k ? "," : "") + t[k];
      out += ")";
    }
    out += "\n";
  }
  return out;
}

std::string format_report(const CheckReport& report) {
  std::ostringstream os;
  os << "scheme " << report.scheme << "\n";
  if (report.window)
    os << "window universal=" << report.window->universal << " existential=" << report.window->existential << "\n";
  std::size_t passed = 0;
  std::size_t counted = 0;
  for (const auto& e : report.entries) {
    os << e.label << " " << verdict_name(e.verdict);
    if (!e.counterexample.empty()) {
      os << " counterexample:";
      for (std::size_t i = 0; i < e.counterexample.size(); ++i)
        os << (i ? ", " : " ") << e.counterexample[i].first << "=" << e.counterexample[i].second;
    }
    if (!e.detail.empty() && e.verdict != Verdict::kPass) os << " (" << e.detail << ")";
    os << "\n";
    if (e.verdict == Verdict::kSkippedMissingPredicate) continue;
    ++counted;
    if (e.verdict == Verdict::kPass) ++passed;
  }
  for (const auto& err : report.structure_errors) os << "structure error: " << err << "\n";
  os << "result " << (report.all_pass() ? "PASS" : "FAIL") << " (" << passed << "/" << counted << " axioms)\n";
  return os.str();
}

nlohmann::json report_json(const CheckReport& report) {
  nlohmann::json axioms = nlohmann::json::array();
  for (const auto& e : report.entries) {
    nlohmann::json ce = nlohmann::json::array();
    for (const auto& [var, value] : e.counterexample) ce.push_back({{"var", var}, {"value", value}});
    axioms.push_back({{"label", e.label}, {"verdict", verdict_name(e.verdict)}, {"counterexample", ce},
                      {"detail", e.detail}});
  }
  nlohmann::json j = {{"schema", 1},
                      {"scheme", report.scheme},
                      {"all_pass", report.all_pass()},
                      {"axioms", axioms},
                      {"structure_errors", report.structure_errors}};
  if (report.window)
    j["window"] = {{"universal", report.window->universal}, {"existential", report.window->existential}};
  return j;
}

}  // namespace dialectic
