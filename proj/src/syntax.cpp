#include "dialectic/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>

namespace dialectic {

namespace {

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

bool is_keyword(std::string_view s) { return s == "forall" || s == "exists"; }

}  // namespace

// ---------------------------------------------------------------------------
// Signature

Signature::Signature(std::vector<Symbol> symbols) {
  for (auto& s : symbols) add(std::move(s.name), s.arity);
}

void Signature::add(std::string name, std::size_t arity) {
  if (!is_identifier(name) || is_keyword(name))
    throw std::invalid_argument("invalid predicate name '" + name + "'");
  if (arity == 0) throw std::invalid_argument("predicate '" + name + "' must have arity >= 1");
  if (contains(name)) throw std::invalid_argument("duplicate predicate '" + name + "'");
  symbols_.push_back({std::move(name), arity});
}

bool Signature::contains(std::string_view name) const {
  return std::any_of(symbols_.begin(), symbols_.end(), [&](const Symbol& s) { return s.name == name; });
}

std::size_t Signature::arity(std::string_view name) const {
  for (const auto& s : symbols_)
    if (s.name == name) return s.arity;
  throw std::out_of_range("unknown predicate '" + std::string(name) + "'");
}

const Signature& tas_signature() {
  static const Signature sig({{"T", 1}, {"N", 1}, {"A", 2}, {"D", 2}, {"P", 2}, {"S", 3}});
  return sig;
}

// ---------------------------------------------------------------------------
// Formula construction and access

Formula Formula::atom(std::string predicate, std::vector<std::string> args) {
  return Formula(std::make_shared<const Node>(Node{Kind::kAtom, std::move(predicate), std::move(args), {}}));
}

Formula Formula::equality(std::string lhs, std::string rhs) {
  return Formula(std::make_shared<const Node>(Node{Kind::kEquality, {}, {std::move(lhs), std::move(rhs)}, {}}));
}

Formula Formula::negation(Formula f) {
  return Formula(std::make_shared<const Node>(Node{Kind::kNot, {}, {}, {std::move(f)}}));
}

Formula Formula::conjunction(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(Node{Kind::kAnd, {}, {}, {std::move(lhs), std::move(rhs)}}));
}

Formula Formula::disjunction(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(Node{Kind::kOr, {}, {}, {std::move(lhs), std::move(rhs)}}));
}

Formula Formula::implication(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(Node{Kind::kImplies, {}, {}, {std::move(lhs), std::move(rhs)}}));
}

Formula Formula::forall(std::string var, Formula body) {
  return Formula(std::make_shared<const Node>(Node{Kind::kForAll, std::move(var), {}, {std::move(body)}}));
}

Formula Formula::exists(std::string var, Formula body) {
  return Formula(std::make_shared<const Node>(Node{Kind::kExists, std::move(var), {}, {std::move(body)}}));
}

Formula Formula::exists_unique(std::string var, Formula body) {
  return Formula(std::make_shared<const Node>(Node{Kind::kExistsUnique, std::move(var), {}, {std::move(body)}}));
}

Formula::Kind Formula::kind() const { return node_->kind; }

bool Formula::is_quantifier() const {
  return kind() == Kind::kForAll || kind() == Kind::kExists || kind() == Kind::kExistsUnique;
}

bool Formula::is_binary() const {
  return kind() == Kind::kAnd || kind() == Kind::kOr || kind() == Kind::kImplies;
}

const std::string& Formula::predicate() const { return node_->name; }
const std::vector<std::string>& Formula::args() const { return node_->args; }
const std::string& Formula::var() const { return node_->name; }
const Formula& Formula::lhs() const { return node_->children.at(0); }
const Formula& Formula::rhs() const { return node_->children.at(1); }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.name == y.name && x.args == y.args && x.children == y.children;
}

// ---------------------------------------------------------------------------
// Parser

ParseError::ParseError(const std::string& message, std::size_t position)
    : std::runtime_error("at offset " + std::to_string(position) + ": " + message), position_(position) {}

namespace {

enum class Tok { kIdent, kForall, kExists, kExistsBang, kDot, kComma, kLParen, kRParen,
                 kNot, kAnd, kOr, kArrow, kEq, kNeq, kEnd };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      std::string word(s.substr(start, i - start));
      if (word == "forall") {
        out.push_back({Tok::kForall, word, start});
      } else if (word == "exists") {
        // "exists!" but not "exists !=" (which cannot occur in valid input anyway).
        if (i < s.size() && s[i] == '!' && !(i + 1 < s.size() && s[i + 1] == '=')) {
          ++i;
          out.push_back({Tok::kExistsBang, "exists!", start});
        } else {
          out.push_back({Tok::kExists, word, start});
        }
      } else {
        out.push_back({Tok::kIdent, word, start});
      }
      continue;
    }
    switch (c) {
      case '.': out.push_back({Tok::kDot, ".", start}); ++i; continue;
      case ',': out.push_back({Tok::kComma, ",", start}); ++i; continue;
      case '(': out.push_back({Tok::kLParen, "(", start}); ++i; continue;
      case ')': out.push_back({Tok::kRParen, ")", start}); ++i; continue;
      case '~': out.push_back({Tok::kNot, "~", start}); ++i; continue;
      case '&': out.push_back({Tok::kAnd, "&", start}); ++i; continue;
      case '|': out.push_back({Tok::kOr, "|", start}); ++i; continue;
      case '=': out.push_back({Tok::kEq, "=", start}); ++i; continue;
      default: break;
    }
    if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
      out.push_back({Tok::kArrow, "->", start});
      i += 2;
      continue;
    }
    if (c == '!' && i + 1 < s.size() && s[i + 1] == '=') {
      out.push_back({Tok::kNeq, "!=", start});
      i += 2;
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", start);
  }
  out.push_back({Tok::kEnd, "", s.size()});
  return out;
}

const char* describe(Tok t) {
  switch (t) {
    case Tok::kIdent: return "identifier";
    case Tok::kForall: return "'forall'";
    case Tok::kExists: return "'exists'";
    case Tok::kExistsBang: return "'exists!'";
    case Tok::kDot: return "'.'";
    case Tok::kComma: return "','";
    case Tok::kLParen: return "'('";
    case Tok::kRParen: return "')'";
    case Tok::kNot: return "'~'";
    case Tok::kAnd: return "'&'";
    case Tok::kOr: return "'|'";
    case Tok::kArrow: return "'->'";
    case Tok::kEq: return "'='";
    case Tok::kNeq: return "'!='";
    case Tok::kEnd: return "end of input";
  }
  return "?";
}

class Parser {
 public:
  Parser(std::string_view text, const Signature& sig) : tokens_(tokenize(text)), sig_(sig) {}

  Formula parse_all() {
    Formula f = implication();
    if (peek().kind != Tok::kEnd)
      throw ParseError(std::string("unexpected ") + describe(peek().kind), peek().pos);
    return f;
  }

  std::optional<std::size_t> first_free_position() const { return first_free_; }
  const std::string& first_free_name() const { return first_free_name_; }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& advance() { return tokens_[pos_++]; }

  const Token& expect(Tok kind) {
    if (peek().kind != kind)
      throw ParseError(std::string("expected ") + describe(kind) + ", found " + describe(peek().kind),
                       peek().pos);
    return advance();
  }

  void use_variable(const Token& t) {
    if (std::find(scope_.begin(), scope_.end(), t.text) == scope_.end() && !first_free_) {
      first_free_ = t.pos;
      first_free_name_ = t.text;
    }
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (peek().kind == Tok::kArrow) {
      advance();
      return Formula::implication(std::move(lhs), implication());
    }
    return lhs;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (peek().kind == Tok::kOr) {
      advance();
      f = Formula::disjunction(std::move(f), conjunction());
    }
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (peek().kind == Tok::kAnd) {
      advance();
      f = Formula::conjunction(std::move(f), unary());
    }
    return f;
  }

  Formula unary() {
    switch (peek().kind) {
      case Tok::kNot:
        advance();
        return Formula::negation(unary());
      case Tok::kForall:
      case Tok::kExists:
      case Tok::kExistsBang: {
        const Tok q = advance().kind;
        std::string var = expect(Tok::kIdent).text;
        expect(Tok::kDot);
        scope_.push_back(var);
        Formula body = implication();
        scope_.pop_back();
        if (q == Tok::kForall) return Formula::forall(std::move(var), std::move(body));
        if (q == Tok::kExists) return Formula::exists(std::move(var), std::move(body));
        return Formula::exists_unique(std::move(var), std::move(body));
      }
      default:
        return primary();
    }
  }

  Formula primary() {
    if (peek().kind == Tok::kLParen) {
      advance();
      Formula f = implication();
      expect(Tok::kRParen);
      return f;
    }
    const Token& head = expect(Tok::kIdent);
    if (peek().kind == Tok::kLParen) {
      if (!sig_.contains(head.text)) throw ParseError("unknown predicate '" + head.text + "'", head.pos);
      advance();
      std::vector<std::string> args;
      do {
        const Token& arg = expect(Tok::kIdent);
        use_variable(arg);
        args.push_back(arg.text);
      } while (peek().kind == Tok::kComma && (advance(), true));
      expect(Tok::kRParen);
      const std::size_t arity = sig_.arity(head.text);
      if (args.size() != arity)
        throw ParseError("predicate '" + head.text + "' expects " + std::to_string(arity) + " argument(s), got " +
                             std::to_string(args.size()),
                         head.pos);
      return Formula::atom(head.text, std::move(args));
    }
    if (peek().kind == Tok::kEq || peek().kind == Tok::kNeq) {
      const bool negated = advance().kind == Tok::kNeq;
      const Token& rhs = expect(Tok::kIdent);
      use_variable(head);
      use_variable(rhs);
      Formula eq = Formula::equality(head.text, rhs.text);
      return negated ? Formula::negation(std::move(eq)) : eq;
    }
    throw ParseError("expected '(', '=' or '!=' after '" + head.text + "'", peek().pos);
  }

  std::vector<Token> tokens_;
  const Signature& sig_;
  std::size_t pos_ = 0;
  std::vector<std::string> scope_;
  std::optional<std::size_t> first_free_;
  std::string first_free_name_;
};

}  // namespace

Formula parse_formula(std::string_view text, const Signature& signature, ParseOptions options) {
  Parser parser(text, signature);
  Formula f = parser.parse_all();
  if (options.require_closed && parser.first_free_position())
    throw ParseError("unbound variable '" + parser.first_free_name() + "'", *parser.first_free_position());
  return f;
}

// ---------------------------------------------------------------------------
// Printer

namespace {

int precedence(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::kImplies: return 1;
    case Formula::Kind::kOr: return 2;
    case Formula::Kind::kAnd: return 3;
    default: return 4;
  }
}

// `tail`: nothing follows f before the enclosing parenthesis or the end, so
// a quantifier there may omit its parentheses.
void print(std::ostream& os, const Formula& f, bool tail);

void print_operand(std::ostream& os, const Formula& f, bool parens, bool tail) {
  if (parens || (f.is_quantifier() && !tail)) {
    os << '(';
    print(os, f, true);
    os << ')';
  } else {
    print(os, f, tail);
  }
}

void print(std::ostream& os, const Formula& f, bool tail) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::kAtom: {
      os << f.predicate() << '(';
      for (std::size_t i = 0; i < f.args().size(); ++i) os << (i ? ", " : "") << f.args()[i];
      os << ')';
      return;
    }
    case K::kEquality:
      os << f.args()[0] << " = " << f.args()[1];
      return;
    case K::kNot:
      if (f.lhs().kind() == K::kEquality) {
        os << f.lhs().args()[0] << " != " << f.lhs().args()[1];
        return;
      }
      os << '~';
      print_operand(os, f.lhs(), f.lhs().is_binary(), tail);
      return;
    case K::kAnd:
    case K::kOr:
    case K::kImplies: {
      const int p = precedence(f);
      const bool right_assoc = f.kind() == K::kImplies;
      const bool lparen = right_assoc ? precedence(f.lhs()) <= p : precedence(f.lhs()) < p;
      const bool rparen = right_assoc ? precedence(f.rhs()) < p : precedence(f.rhs()) <= p;
      print_operand(os, f.lhs(), lparen, false);
      os << (f.kind() == K::kAnd ? " & " : f.kind() == K::kOr ? " | " : " -> ");
      print_operand(os, f.rhs(), rparen, tail);
      return;
    }
    case K::kForAll:
    case K::kExists:
    case K::kExistsUnique:
      os << (f.kind() == K::kForAll ? "forall " : f.kind() == K::kExists ? "exists " : "exists! ") << f.var()
         << ". ";
      print_operand(os, f.body(), f.body().is_binary(), true);
      return;
  }
}

}  // namespace

std::string format_formula(const Formula& f) {
  std::ostringstream os;
  print(os, f, true);
  return os.str();
}

// ---------------------------------------------------------------------------
// Variables and rewriting

namespace {

void collect_free(const Formula& f, std::vector<std::string>& bound, std::set<std::string>& out) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::kAtom:
    case K::kEquality:
      for (const auto& a : f.args())
        if (std::find(bound.begin(), bound.end(), a) == bound.end()) out.insert(a);
      return;
    case K::kNot:
      collect_free(f.lhs(), bound, out);
      return;
    case K::kAnd:
    case K::kOr:
    case K::kImplies:
      collect_free(f.lhs(), bound, out);
      collect_free(f.rhs(), bound, out);
      return;
    default:
      bound.push_back(f.var());
      collect_free(f.body(), bound, out);
      bound.pop_back();
      return;
  }
}

void collect_all(const Formula& f, std::set<std::string>& vars, std::set<std::string>* preds) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::kAtom:
      if (preds) preds->insert(f.predicate());
      [[fallthrough]];
    case K::kEquality:
      vars.insert(f.args().begin(), f.args().end());
      return;
    case K::kNot:
      collect_all(f.lhs(), vars, preds);
      return;
    case K::kAnd:
    case K::kOr:
    case K::kImplies:
      collect_all(f.lhs(), vars, preds);
      collect_all(f.rhs(), vars, preds);
      return;
    default:
      vars.insert(f.var());
      collect_all(f.body(), vars, preds);
      return;
  }
}

Formula rebuild_quantifier(Formula::Kind kind, std::string var, Formula body) {
  switch (kind) {
    case Formula::Kind::kForAll: return Formula::forall(std::move(var), std::move(body));
    case Formula::Kind::kExists: return Formula::exists(std::move(var), std::move(body));
    default: return Formula::exists_unique(std::move(var), std::move(body));
  }
}

Formula rebuild_binary(Formula::Kind kind, Formula lhs, Formula rhs) {
  switch (kind) {
    case Formula::Kind::kAnd: return Formula::conjunction(std::move(lhs), std::move(rhs));
    case Formula::Kind::kOr: return Formula::disjunction(std::move(lhs), std::move(rhs));
    default: return Formula::implication(std::move(lhs), std::move(rhs));
  }
}

Formula expand_unique(const Formula& f, FreshNames& names) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::kAtom:
    case K::kEquality:
      return f;
    case K::kNot: {
      Formula inner = expand_unique(f.lhs(), names);
      return inner == f.lhs() ? f : Formula::negation(std::move(inner));
    }
    case K::kAnd:
    case K::kOr:
    case K::kImplies: {
      Formula l = expand_unique(f.lhs(), names);
      Formula r = expand_unique(f.rhs(), names);
      if (l == f.lhs() && r == f.rhs()) return f;
      return rebuild_binary(f.kind(), std::move(l), std::move(r));
    }
    case K::kForAll:
    case K::kExists: {
      Formula body = expand_unique(f.body(), names);
      return body == f.body() ? f : rebuild_quantifier(f.kind(), f.var(), std::move(body));
    }
    case K::kExistsUnique: {
      Formula body = expand_unique(f.body(), names);
      const std::string w = names.next("w");
      Formula other = substitute(body, f.var(), w);
      Formula uniqueness = Formula::forall(w, Formula::implication(std::move(other), Formula::equality(w, f.var())));
      return Formula::exists(f.var(), Formula::conjunction(std::move(body), std::move(uniqueness)));
    }
  }
  return f;
}

}  // namespace

std::set<std::string> free_variables(const Formula& f) {
  std::set<std::string> out;
  std::vector<std::string> bound;
  collect_free(f, bound, out);
  return out;
}

std::set<std::string> all_variables(const Formula& f) {
  std::set<std::string> out;
  collect_all(f, out, nullptr);
  return out;
}

std::set<std::string> predicates_of(const Formula& f) {
  std::set<std::string> vars, preds;
  collect_all(f, vars, &preds);
  return preds;
}

std::string FreshNames::next(const std::string& base) {
  std::string candidate = base;
  for (std::size_t i = 1; taken_.count(candidate); ++i) candidate = base + std::to_string(i);
  taken_.insert(candidate);
  return candidate;
}

Formula expand_unique_existence(const Formula& f) {
  FreshNames names(all_variables(f));
  return expand_unique(f, names);
}

Formula substitute(const Formula& f, const std::string& from, const std::string& to) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::kAtom:
    case K::kEquality: {
      if (std::find(f.args().begin(), f.args().end(), from) == f.args().end()) return f;
      std::vector<std::string> args = f.args();
      std::replace(args.begin(), args.end(), from, to);
      return f.kind() == K::kAtom ? Formula::atom(f.predicate(), std::move(args))
                                  : Formula::equality(args[0], args[1]);
    }
    case K::kNot:
      return Formula::negation(substitute(f.lhs(), from, to));
    case K::kAnd:
    case K::kOr:
    case K::kImplies:
      return rebuild_binary(f.kind(), substitute(f.lhs(), from, to), substitute(f.rhs(), from, to));
    default: {
      if (f.var() == from) return f;
      if (f.var() == to && free_variables(f.body()).count(from)) {
        std::set<std::string> taken = all_variables(f.body());
        taken.insert(from);
        taken.insert(to);
        const std::string renamed = FreshNames(std::move(taken)).next(f.var());
        Formula body = substitute(substitute(f.body(), f.var(), renamed), from, to);
        return rebuild_quantifier(f.kind(), renamed, std::move(body));
      }
      return rebuild_quantifier(f.kind(), f.var(), substitute(f.body(), from, to));
    }
  }
}

namespace {

bool alpha_eq(const Formula& a, const Formula& b, std::vector<std::pair<std::string, std::string>>& binders) {
  if (a.kind() != b.kind()) return false;
  using K = Formula::Kind;
  auto same_var = [&](const std::string& x, const std::string& y) {
    for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
      const bool hx = it->first == x;
      const bool hy = it->second == y;
      if (hx || hy) return hx && hy;
    }
    return x == y;
  };
  switch (a.kind()) {
    case K::kAtom:
      if (a.predicate() != b.predicate()) return false;
      [[fallthrough]];
    case K::kEquality:
      if (a.args().size() != b.args().size()) return false;
      for (std::size_t i = 0; i < a.args().size(); ++i)
        if (!same_var(a.args()[i], b.args()[i])) return false;
      return true;
    case K::kNot:
      return alpha_eq(a.lhs(), b.lhs(), binders);
    case K::kAnd:
    case K::kOr:
    case K::kImplies:
      return alpha_eq(a.lhs(), b.lhs(), binders) && alpha_eq(a.rhs(), b.rhs(), binders);
    default: {
      binders.emplace_back(a.var(), b.var());
      const bool eq = alpha_eq(a.body(), b.body(), binders);
      binders.pop_back();
      return eq;
    }
  }
}

}  // namespace

bool alpha_equivalent(const Formula& a, const Formula& b) {
  std::vector<std::pair<std::string, std::string>> binders;
  return alpha_eq(a, b, binders);
}

}  // namespace dialectic
