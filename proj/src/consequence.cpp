#include "dialectic/consequence.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace dialectic {

std::string format_rule(const Rule& r) {
  std::string out = "(";
  for (const auto& p : r.premises) out += p + ",";
  return out + r.conclusion + ")";
}

LogicSystem::LogicSystem(std::vector<std::string> language, std::vector<Rule> rules)
    : language_(std::move(language)) {
  for (const auto& t : language_)
    if (!members_.insert(t).second) throw std::invalid_argument("duplicate token '" + t + "' in language");
  std::set<Rule> seen;
  for (auto& r : rules) {
    for (const auto& p : r.premises)
      if (!contains(p)) throw std::invalid_argument("rule " + format_rule(r) + ": '" + p + "' is not in the language");
    if (!contains(r.conclusion))
      throw std::invalid_argument("rule " + format_rule(r) + ": '" + r.conclusion + "' is not in the language");
    if (seen.insert(r).second) rules_.push_back(std::move(r));
  }
}

bool LogicSystem::contains(std::string_view token) const { return members_.find(token) != members_.end(); }

std::vector<std::string> LogicSystem::ordered(const std::set<std::string>& tokens) const {
  std::vector<std::string> out;
  for (const auto& t : language_)
    if (tokens.count(t)) out.push_back(t);
  return out;
}

LogicSystem rules_from_synthesis(const FiniteStructure& s) {
  const Relation& S = s.table("S");
  std::vector<Rule> rules;
  for (const auto& t : S.tuples()) rules.push_back({{s.label(t[2]), s.label(t[1])}, s.label(t[0])});
  return LogicSystem(s.domain(), std::move(rules));
}

std::set<std::string> closure(const LogicSystem& ls, const std::set<std::string>& premises) {
  const auto& lang = ls.language();
  std::map<std::string, std::size_t, std::less<>> index;
  for (std::size_t i = 0; i < lang.size(); ++i) index.emplace(lang[i], i);

  // missing[r]: distinct premises of rule r not yet derived.
  const auto& rules = ls.rules();
  std::vector<std::size_t> missing(rules.size());
  std::vector<std::vector<std::size_t>> waiting(lang.size());
  for (std::size_t r = 0; r < rules.size(); ++r) {
    std::set<std::size_t> distinct;
    for (const auto& p : rules[r].premises) distinct.insert(index.at(p));
    missing[r] = distinct.size();
    for (auto p : distinct) waiting[p].push_back(r);
  }

  std::vector<bool> derived(lang.size(), false);
  std::vector<std::size_t> work;
  auto add = [&](std::size_t t) {
    if (!derived[t]) {
      derived[t] = true;
      work.push_back(t);
    }
  };
  for (const auto& p : premises) {
    auto it = index.find(p);
    if (it == index.end()) throw std::invalid_argument("premise '" + p + "' is not in the language");
    add(it->second);
  }
  for (std::size_t r = 0; r < rules.size(); ++r)
    if (missing[r] == 0) add(index.at(rules[r].conclusion));

  while (!work.empty()) {
    const std::size_t t = work.back();
    work.pop_back();
    for (auto r : waiting[t])
      if (--missing[r] == 0) add(index.at(rules[r].conclusion));
  }

  std::set<std::string> out;
  for (std::size_t i = 0; i < lang.size(); ++i)
    if (derived[i]) out.insert(lang[i]);
  return out;
}

RulesFormatError::RulesFormatError(const std::string& message, std::size_t line)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

namespace {

std::vector<std::string> split_tokens(std::string_view text) {
  std::string cleaned(text);
  for (char& c : cleaned)
    if (c == ',' || c == '\t') c = ' ';
  std::istringstream in(cleaned);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

LogicSystem parse_rules(std::string_view text) {
  std::vector<std::string> language;
  std::set<std::string> known;
  auto mention = [&](const std::string& t) {
    if (known.insert(t).second) language.push_back(t);
  };
  std::vector<Rule> rules;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.starts_with("language:")) {
      for (const auto& t : split_tokens(line.substr(9))) mention(t);
      continue;
    }
    if (line.front() == '(') {
      if (line.back() != ')') throw RulesFormatError("unterminated rule tuple", line_no);
      line = line.substr(1, line.size() - 2);
      if (line.find_first_of("()") != std::string_view::npos)
        throw RulesFormatError("one rule per line expected", line_no);
    } else if (line.find_first_of("()") != std::string_view::npos) {
      throw RulesFormatError("unbalanced parentheses", line_no);
    }
    auto tokens = split_tokens(line);
    if (tokens.empty()) throw RulesFormatError("empty rule", line_no);
    for (const auto& t : tokens) mention(t);
    Rule r;
    r.conclusion = tokens.back();
    tokens.pop_back();
    r.premises = std::move(tokens);
    rules.push_back(std::move(r));
  }
  return LogicSystem(std::move(language), std::move(rules));
}

}  // namespace dialectic
