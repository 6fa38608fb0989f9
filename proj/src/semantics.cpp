#include "dialectic/semantics.hpp"

#include <algorithm>
#include <sstream>

namespace dialectic {

// ---------------------------------------------------------------------------
// Finite evaluation

Evaluator::Evaluator(const FiniteStructure& s, const Formula& f, const std::vector<std::string>& free_order)
    : structure_(&s), num_free_(free_order.size()) {
  std::map<std::string, std::size_t, std::less<>> slots;
  for (const auto& v : free_order) {
    if (!slots.emplace(v, slots.size()).second)
      throw EvaluationError("variable '" + v + "' listed twice among free variables");
  }
  for (const auto& v : free_variables(f))
    if (!slots.count(v)) throw EvaluationError("free variable '" + v + "' has no value");
  root_ = compile(f, slots);
  num_slots_ = slots.size();
}

int Evaluator::compile(const Formula& f, std::map<std::string, std::size_t, std::less<>>& slots) {
  using K = Formula::Kind;
  auto slot_of = [&](const std::string& v) {
    auto [it, inserted] = slots.emplace(v, slots.size());
    return it->second;
  };
  Node node{f.kind()};
  switch (f.kind()) {
    case K::kAtom: {
      node.relation = structure_->find_table(f.predicate());
      if (!node.relation) throw EvaluationError("missing table for predicate '" + f.predicate() + "'");
      if (node.relation->arity() != f.args().size())
        throw EvaluationError("predicate '" + f.predicate() + "' used with arity " +
                              std::to_string(f.args().size()) + " but table has arity " +
                              std::to_string(node.relation->arity()));
      [[fallthrough]];
    }
    case K::kEquality:
      for (const auto& a : f.args()) node.slots.push_back(slot_of(a));
      break;
    case K::kNot:
      node.lhs = compile(f.lhs(), slots);
      break;
    case K::kAnd:
    case K::kOr:
    case K::kImplies:
      node.lhs = compile(f.lhs(), slots);
      node.rhs = compile(f.rhs(), slots);
      break;
    default:
      node.slot = slot_of(f.var());
      node.lhs = compile(f.body(), slots);
      break;
  }
  nodes_.push_back(std::move(node));
  return static_cast<int>(nodes_.size() - 1);
}

bool Evaluator::operator()(std::span<const std::size_t> free_values) const {
  if (free_values.size() != num_free_) throw EvaluationError("wrong number of free-variable values");
  std::vector<std::size_t> env(num_slots_, 0);
  for (std::size_t i = 0; i < free_values.size(); ++i) {
    if (free_values[i] >= structure_->size()) throw EvaluationError("assignment value outside the domain");
    env[i] = free_values[i];
  }
  return eval(root_, env);
}

bool Evaluator::eval(int index, std::vector<std::size_t>& env) const {
  using K = Formula::Kind;
  const Node& node = nodes_[static_cast<std::size_t>(index)];
  const std::size_t n = structure_->size();
  switch (node.kind) {
    case K::kAtom: {
      std::uint64_t code = 0;
      for (auto s : node.slots) code = code * n + env[s];
      return node.relation->contains_code(code);
    }
    case K::kEquality:
      return env[node.slots[0]] == env[node.slots[1]];
    case K::kNot:
      return !eval(node.lhs, env);
    case K::kAnd:
      return eval(node.lhs, env) && eval(node.rhs, env);
    case K::kOr:
      return eval(node.lhs, env) || eval(node.rhs, env);
    case K::kImplies:
      return !eval(node.lhs, env) || eval(node.rhs, env);
    case K::kForAll:
    case K::kExists:
    case K::kExistsUnique: {
      const std::size_t saved = env[node.slot];
      bool result;
      if (node.kind == K::kForAll) {
        result = true;
        for (std::size_t v = 0; v < n && result; ++v) {
          env[node.slot] = v;
          result = eval(node.lhs, env);
        }
      } else if (node.kind == K::kExists) {
        result = false;
        for (std::size_t v = 0; v < n && !result; ++v) {
          env[node.slot] = v;
          result = eval(node.lhs, env);
        }
      } else {
        std::size_t count = 0;
        for (std::size_t v = 0; v < n && count < 2; ++v) {
          env[node.slot] = v;
          if (eval(node.lhs, env)) ++count;
        }
        result = count == 1;
      }
      env[node.slot] = saved;
      return result;
    }
  }
  return false;
}

bool evaluate(const FiniteStructure& s, const Formula& f, const Assignment& env) {
  std::vector<std::string> order;
  std::vector<std::size_t> values;
  for (const auto& v : free_variables(f)) {
    auto it = env.find(v);
    if (it == env.end()) throw EvaluationError("free variable '" + v + "' has no value");
    if (!s.has_element(it->second))
      throw EvaluationError("value '" + it->second + "' of '" + v + "' is not in the domain");
    order.push_back(v);
    values.push_back(s.index_of(it->second));
  }
  return Evaluator(s, f, order)(values);
}

// ---------------------------------------------------------------------------
// Reports

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kPass: return "PASS";
    case Verdict::kFail: return "FAIL";
    case Verdict::kMissingPredicate: return "MISSING-PREDICATE";
    case Verdict::kSkippedMissingPredicate: return "SKIPPED-MISSING-PREDICATE";
    case Verdict::kStructureError: return "STRUCTURE-ERROR";
  }
  return "?";
}

bool CheckReport::all_pass() const {
  if (!structure_errors.empty()) return false;
  return std::all_of(entries.begin(), entries.end(), [](const AxiomResult& e) {
    return e.verdict == Verdict::kPass || e.verdict == Verdict::kSkippedMissingPredicate;
  });
}

std::vector<Verdict> CheckReport::verdicts() const {
  std::vector<Verdict> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.verdict);
  return out;
}

const AxiomResult& CheckReport::entry(std::string_view label) const {
  for (const auto& e : entries)
    if (e.label == label) return e;
  throw std::out_of_range("report has no entry '" + std::string(label) + "'");
}

std::pair<std::vector<std::string>, Formula> universal_prefix(const Formula& f) {
  std::vector<std::string> vars;
  const Formula* cur = &f;
  while (cur->kind() == Formula::Kind::kForAll &&
         std::find(vars.begin(), vars.end(), cur->var()) == vars.end()) {
    vars.push_back(cur->var());
    cur = &cur->body();
  }
  return {vars, *cur};
}

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? ", " : "") + items[i];
  return out;
}

// Advances an odometer over [0, radix)^k; returns false after the last tuple.
bool next_tuple(std::vector<std::size_t>& digits, std::size_t radix) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (++digits[i] < radix) return true;
    digits[i] = 0;
  }
  return false;
}

}  // namespace

CheckReport check_scheme(const FiniteStructure& s, const Scheme& scheme, CheckOptions options) {
  CheckReport report;
  report.scheme = scheme.name;

  if (options.cross_check_n && scheme.n_is_defined && s.has_table("N") && s.has_table("S") && s.has_table("D")) {
    const auto derived = derived_n(s);
    std::vector<std::string> declared;
    for (const auto& t : s.labelled_tuples("N")) declared.push_back(t[0]);
    if (declared != derived)
      report.structure_errors.push_back("declared N {" + join(declared) + "} differs from derived N {" +
                                        join(derived) + "}");
  }

  for (const auto& axiom : scheme.axioms) {
    AxiomResult result{axiom.label};
    std::vector<std::string> missing;
    for (const auto& p : predicates_of(axiom.formula))
      if (!s.has_table(p)) missing.push_back(p);
    if (!missing.empty()) {
      result.verdict = axiom.optional ? Verdict::kSkippedMissingPredicate : Verdict::kMissingPredicate;
      result.detail = "missing table(s): " + join(missing);
      report.entries.push_back(std::move(result));
      continue;
    }

    auto [vars, matrix] = universal_prefix(axiom.formula);
    Evaluator ev(s, matrix, vars);
    std::vector<std::size_t> values(vars.size(), 0);
    do {
      if (!ev(values)) {
        result.verdict = Verdict::kFail;
        for (std::size_t i = 0; i < vars.size(); ++i) result.counterexample.emplace_back(vars[i], s.label(values[i]));
        break;
      }
    } while (next_tuple(values, s.size()));
    report.entries.push_back(std::move(result));
  }
  return report;
}

std::vector<std::string> derived_n(const FiniteStructure& s) {
  const Relation& S = s.table("S");
  const Relation& D = s.table("D");
  if (S.arity() != 3 || D.arity() != 2) throw StructureError("S must be ternary and D binary");
  std::vector<bool> member(s.size(), false);
  for (const auto& t : S.tuples()) {
    const std::size_t pair_zx[] = {t[0], t[1]};
    const std::size_t pair_zy[] = {t[0], t[2]};
    if (D.contains(pair_zx) && D.contains(pair_zy)) member[t[0]] = true;
  }
  std::vector<std::string> out;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (member[i]) out.push_back(s.label(i));
  return out;
}

FiniteStructure with_derived_n(FiniteStructure s) {
  const auto n = derived_n(s);
  s.remove_table("N");
  s.add_table("N", 1);
  for (const auto& z : n) s.insert("N", {z});
  return s;
}

// ---------------------------------------------------------------------------
// Computable structures

bool ComputableStructure::holds(std::string_view predicate, std::span<const BigInt> args) const {
  auto it = membership.find(predicate);
  if (it == membership.end()) throw EvaluationError("no membership procedure for '" + std::string(predicate) + "'");
  if (args.size() != it->second.arity) throw EvaluationError("arity mismatch for '" + std::string(predicate) + "'");
  return it->second.test(args);
}

FiniteStructure ComputableStructure::restrict_to(const std::vector<BigInt>& elements) const {
  std::vector<std::string> labels;
  labels.reserve(elements.size());
  for (const auto& e : elements) {
    if (!element_test(e)) throw StructureError("element " + e.str() + " is not in " + name);
    labels.push_back(e.str());
  }
  FiniteStructure out(std::move(labels));
  for (const auto& [pred, mem] : membership) {
    Relation& rel = out.add_table(pred, mem.arity);
    std::vector<std::size_t> idx(mem.arity, 0);
    std::vector<BigInt> args(mem.arity);
    do {
      for (std::size_t i = 0; i < idx.size(); ++i) args[i] = elements[idx[i]];
      if (mem.test(args)) rel.insert(idx);
    } while (next_tuple(idx, elements.size()));
  }
  return out;
}

namespace {

class BoundedEvaluator {
 public:
  BoundedEvaluator(const ComputableStructure& cs, std::string label, const Formula& matrix,
                   const std::vector<std::string>& free_order, const std::vector<BigInt>& universal,
                   const std::vector<BigInt>& existential)
      : cs_(cs), label_(std::move(label)), universal_(universal), existential_(existential) {
    for (const auto& v : free_order) slot_of(v);
    root_ = compile(matrix);
    env_.resize(names_.size());
    bound_.assign(names_.size(), false);
  }

  bool run(const std::vector<BigInt>& free_values) {
    for (std::size_t i = 0; i < free_values.size(); ++i) {
      env_[i] = free_values[i];
      bound_[i] = true;
    }
    return eval(root_, true);
  }

  const std::optional<std::string>& structure_error() const { return structure_error_; }

 private:
  struct Node {
    Formula::Kind kind;
    const Membership* membership = nullptr;
    std::vector<std::size_t> slots;
    std::size_t slot = 0;
    int lhs = -1;
    int rhs = -1;
  };

  std::size_t slot_of(const std::string& v) {
    auto it = std::find(names_.begin(), names_.end(), v);
    if (it != names_.end()) return static_cast<std::size_t>(it - names_.begin());
    names_.push_back(v);
    return names_.size() - 1;
  }

  int compile(const Formula& f) {
    using K = Formula::Kind;
    Node node{f.kind()};
    switch (f.kind()) {
      case K::kAtom: {
        auto it = cs_.membership.find(f.predicate());
        if (it == cs_.membership.end())
          throw EvaluationError("no membership procedure for '" + f.predicate() + "'");
        node.membership = &it->second;
        [[fallthrough]];
      }
      case K::kEquality:
        for (const auto& a : f.args()) node.slots.push_back(slot_of(a));
        break;
      case K::kNot:
        node.lhs = compile(f.lhs());
        break;
      case K::kAnd:
      case K::kOr:
      case K::kImplies:
        node.lhs = compile(f.lhs());
        node.rhs = compile(f.rhs());
        break;
      case K::kExistsUnique:
        throw EvaluationError("bounded evaluation expects exists! to be expanded");
      default:
        node.slot = slot_of(f.var());
        node.lhs = compile(f.body());
        break;
    }
    nodes_.push_back(std::move(node));
    return static_cast<int>(nodes_.size() - 1);
  }

  // `positive` is the polarity of the node within the axiom.
  bool eval(int index, bool positive) {
    using K = Formula::Kind;
    const Node& node = nodes_[static_cast<std::size_t>(index)];
    switch (node.kind) {
      case K::kAtom: {
        args_.clear();
        for (auto s : node.slots) args_.push_back(env_[s]);
        return node.membership->test(args_);
      }
      case K::kEquality:
        return env_[node.slots[0]] == env_[node.slots[1]];
      case K::kNot:
        return !eval(node.lhs, !positive);
      case K::kAnd:
        return eval(node.lhs, positive) && eval(node.rhs, positive);
      case K::kOr:
        return eval(node.lhs, positive) || eval(node.rhs, positive);
      case K::kImplies:
        return !eval(node.lhs, !positive) || eval(node.rhs, positive);
      case K::kForAll:
      case K::kExists: {
        const bool universal = (node.kind == K::kForAll) == positive;
        const auto& range = universal ? universal_ : existential_;
        const bool want = node.kind == K::kExists;  // value that short-circuits
        const BigInt saved = env_[node.slot];
        const bool saved_bound = bound_[node.slot];
        bound_[node.slot] = true;
        bool result = !want;
        if (!universal) ++searching_;
        for (const auto& v : range) {
          env_[node.slot] = v;
          if (eval(node.lhs, positive) == want) {
            result = want;
            break;
          }
          if (structure_error_) break;
        }
        if (!universal) --searching_;
        if (!universal && node.kind == K::kExists && !result && !structure_error_) result = try_witness(node, positive);
        env_[node.slot] = saved;
        bound_[node.slot] = saved_bound;
        return result;
      }
      default:
        return false;
    }
  }

  bool try_witness(const Node& node, bool positive) {
    const std::string& var = names_[node.slot];
    auto it = cs_.witnesses.find({label_, var});
    if (it == cs_.witnesses.end()) return false;
    BigAssignment scope;
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (bound_[i] && i != node.slot) scope.emplace(names_[i], env_[i]);
    const auto witness = it->second(scope);
    if (!witness) return false;
    if (!cs_.element_test(*witness)) {
      structure_error_ = "witness for " + var + " in " + label_ + " returned " + witness->str() +
                         ", which is not a domain element";
      return false;
    }
    env_[node.slot] = *witness;
    if (!eval(node.lhs, positive)) {
      // Inside an outer existential search the bindings may not be the ones
      // the witness was written for; only a fully witnessed path is an error.
      if (!structure_error_ && searching_ == 0)
        structure_error_ = "witness for " + var + " in " + label_ + " returned " + witness->str() +
                           ", which does not satisfy the matrix";
      return false;
    }
    return true;
  }

  const ComputableStructure& cs_;
  std::string label_;
  const std::vector<BigInt>& universal_;
  const std::vector<BigInt>& existential_;
  std::vector<std::string> names_;
  std::vector<Node> nodes_;
  int root_ = -1;
  std::vector<BigInt> env_;
  std::vector<bool> bound_;
  std::vector<BigInt> args_;
  std::optional<std::string> structure_error_;
  int searching_ = 0;  // enclosing existential quantifiers scanning their window
};

}  // namespace

CheckReport bounded_check(const ComputableStructure& cs, const Scheme& scheme, std::size_t universal_window,
                          std::size_t existential_window) {
  if (universal_window > existential_window)
    throw std::invalid_argument("universal window must not exceed the existential window");

  CheckReport report;
  report.scheme = scheme.name;
  report.window = BoundedWindow{universal_window, existential_window};

  const std::vector<BigInt> universal = cs.window(universal_window);
  const std::vector<BigInt> existential = cs.window(existential_window);
  for (const auto* w : {&universal, &existential})
    for (const auto& e : *w)
      if (!cs.element_test(e)) report.structure_errors.push_back("window element " + e.str() + " fails element_test");

  for (const auto& axiom : expand_unique(scheme).axioms) {
    AxiomResult result{axiom.label};
    std::vector<std::string> missing;
    for (const auto& p : predicates_of(axiom.formula))
      if (!cs.membership.count(p)) missing.push_back(p);
    if (!missing.empty()) {
      result.verdict = axiom.optional ? Verdict::kSkippedMissingPredicate : Verdict::kMissingPredicate;
      result.detail = "missing membership procedure(s): " + join(missing);
      report.entries.push_back(std::move(result));
      continue;
    }

    auto [vars, matrix] = universal_prefix(axiom.formula);
    BoundedEvaluator ev(cs, axiom.label, matrix, vars, universal, existential);
    if (vars.empty() || !universal.empty()) {
      std::vector<std::size_t> idx(vars.size(), 0);
      std::vector<BigInt> values(vars.size());
      do {
        for (std::size_t i = 0; i < idx.size(); ++i) values[i] = universal[idx[i]];
        const bool ok = ev.run(values);
        if (ev.structure_error()) {
          result.verdict = Verdict::kStructureError;
          result.detail = *ev.structure_error();
          break;
        }
        if (!ok) {
          result.verdict = Verdict::kFail;
          for (std::size_t i = 0; i < vars.size(); ++i) result.counterexample.emplace_back(vars[i], values[i].str());
          break;
        }
      } while (next_tuple(idx, universal.size()));
    }
    std::ostringstream detail;
    if (result.verdict == Verdict::kPass)
      detail << "pass at window (" << universal_window << ", " << existential_window << ")";
    if (result.detail.empty()) result.detail = detail.str();
    report.entries.push_back(std::move(result));
  }
  return report;
}

}  // namespace dialectic
