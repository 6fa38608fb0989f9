#include "dialectic/finder.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "dialectic/semantics.hpp"

namespace dialectic {

// ---------------------------------------------------------------------------
// GroundProblem

namespace {

std::uint64_t power(std::size_t base, std::size_t exponent) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exponent; ++i) r *= base;
  return r;
}

std::vector<std::string> numbered_labels(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return labels;
}

// Predicates of a scheme: required ones first, then any others its axioms use.
std::vector<std::pair<std::string, std::size_t>> scheme_predicates(const Scheme& scheme) {
  std::vector<std::pair<std::string, std::size_t>> out;
  auto add = [&](const std::string& p) {
    for (const auto& [name, arity] : out)
      if (name == p) return;
    out.emplace_back(p, tas_signature().arity(p));
  };
  for (const auto& p : scheme.required_predicates) add(p);
  for (const auto& a : scheme.axioms)
    for (const auto& p : predicates_of(a.formula)) add(p);
  return out;
}

}  // namespace

int GroundProblem::atom_variable(std::string_view predicate, std::span<const std::size_t> args) const {
  for (std::size_t i = 0; i < predicates.size(); ++i) {
    if (predicates[i].first != predicate) continue;
    if (args.size() != predicates[i].second) throw std::invalid_argument("arity mismatch for " + predicates[i].first);
    std::uint64_t code = 0;
    for (auto a : args) {
      if (a >= domain_size) throw std::out_of_range("element outside the ground domain");
      code = code * domain_size + a;
    }
    return static_cast<int>(offsets[i] + code + 1);
  }
  throw std::out_of_range("predicate '" + std::string(predicate) + "' is not part of the ground problem");
}

GroundAtom GroundProblem::atom(int var) const {
  if (var < 1 || static_cast<std::size_t>(var) > num_atoms) throw std::out_of_range("not a relation atom");
  const auto index = static_cast<std::size_t>(var - 1);
  std::size_t p = predicates.size() - 1;
  while (offsets[p] > index) --p;
  std::uint64_t code = index - offsets[p];
  Tuple args(predicates[p].second);
  for (std::size_t i = args.size(); i-- > 0;) {
    args[i] = static_cast<std::size_t>(code % domain_size);
    code /= domain_size;
  }
  return {predicates[p].first, std::move(args)};
}

std::string GroundProblem::atom_name(int var) const {
  if (var < 1 || static_cast<std::size_t>(var) > num_atoms) return "aux" + std::to_string(var);
  const auto a = atom(var);
  std::string out = a.predicate + "(";
  for (std::size_t i = 0; i < a.args.size(); ++i) out += (i ? "," : "") + std::to_string(a.args[i]);
  return out + ")";
}

std::string GroundProblem::to_dimacs() const {
  std::ostringstream os;
  os << "c scheme " << scheme.name << " over domain size " << domain_size << "\n";
  for (std::size_t v = 1; v <= num_atoms; ++v) os << "c atom " << v << " " << atom_name(static_cast<int>(v)) << "\n";
  os << "p cnf " << num_vars << " " << clauses.size() << "\n";
  for (const auto& c : clauses) {
    for (auto l : c) os << l << " ";
    os << "0\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Grounding

namespace {

class Grounder {
 public:
  Grounder(GroundProblem& p) : p_(p) {}

  void assert_axiom(const Axiom& axiom) {
    label_ = axiom.label;
    assert_formula(axiom.formula, true);
  }

  void add_clause(sat::Clause c, std::string instantiation) {
    p_.clauses.push_back(std::move(c));
    p_.provenance.push_back({label_, std::move(instantiation)});
  }

  void set_label(std::string label) { label_ = std::move(label); }

 private:
  // Result of grounding a subformula: a constant or a literal.
  struct G {
    enum Kind { kFalse, kTrue, kLit } kind;
    int lit = 0;
  };

  using K = Formula::Kind;

  static bool conjunctive(const Formula& f, bool positive) {
    switch (f.kind()) {
      case K::kAnd:
      case K::kForAll:
        return positive;
      case K::kOr:
      case K::kImplies:
      case K::kExists:
        return !positive;
      default:
        return false;
    }
  }

  static bool disjunctive(const Formula& f, bool positive) {
    switch (f.kind()) {
      case K::kAnd:
      case K::kForAll:
        return !positive;
      case K::kOr:
      case K::kImplies:
      case K::kExists:
        return positive;
      default:
        return false;
    }
  }

  std::size_t lookup(const std::string& var) const {
    for (auto it = env_.rbegin(); it != env_.rend(); ++it)
      if (it->first == var) return it->second;
    throw std::invalid_argument("free variable '" + var + "' in axiom " + label_);
  }

  std::string instantiation() const {
    std::string out;
    for (std::size_t i = 0; i < env_.size(); ++i)
      out += (i ? ", " : "") + env_[i].first + "=" + std::to_string(env_[i].second);
    return out;
  }

  // Calls visit(child, polarity) for the operands of a binary or quantified
  // node; quantifiers are unrolled over the domain.
  template <typename Visit>
  void for_each_operand(const Formula& f, bool positive, Visit&& visit) {
    switch (f.kind()) {
      case K::kAnd:
      case K::kOr:
        visit(f.lhs(), positive);
        visit(f.rhs(), positive);
        return;
      case K::kImplies:
        visit(f.lhs(), !positive);
        visit(f.rhs(), positive);
        return;
      case K::kForAll:
      case K::kExists:
        for (std::size_t v = 0; v < p_.domain_size; ++v) {
          env_.emplace_back(f.var(), v);
          visit(f.body(), positive);
          env_.pop_back();
        }
        return;
      default:
        throw std::logic_error("for_each_operand on a non-compound formula");
    }
  }

  void gather(const Formula& f, bool positive, bool conj, std::vector<G>& out) {
    if (f.kind() == K::kNot) return gather(f.lhs(), !positive, conj, out);
    if (conj ? conjunctive(f, positive) : disjunctive(f, positive)) {
      for_each_operand(f, positive, [&](const Formula& c, bool pol) { gather(c, pol, conj, out); });
      return;
    }
    out.push_back(ground_node(f, positive));
  }

  G ground_node(const Formula& f, bool positive) {
    switch (f.kind()) {
      case K::kAtom: {
        std::vector<std::size_t> args;
        args.reserve(f.args().size());
        for (const auto& a : f.args()) args.push_back(lookup(a));
        const int v = p_.atom_variable(f.predicate(), args);
        return {G::kLit, positive ? v : -v};
      }
      case K::kEquality: {
        const bool eq = lookup(f.args()[0]) == lookup(f.args()[1]);
        return {eq == positive ? G::kTrue : G::kFalse};
      }
      case K::kNot:
        return ground_node(f.lhs(), !positive);
      case K::kExistsUnique:
        throw std::logic_error("exists! must be expanded before grounding");
      default:
        break;
    }
    std::vector<G> parts;
    const bool conj = conjunctive(f, positive);
    gather(f, positive, conj, parts);
    return conj ? make_and(parts) : make_or(parts);
  }

  int fresh_aux() { return static_cast<int>(++p_.num_vars); }

  G make_and(const std::vector<G>& parts) {
    std::vector<int> lits;
    for (const auto& g : parts) {
      if (g.kind == G::kFalse) return {G::kFalse};
      if (g.kind == G::kLit) lits.push_back(g.lit);
    }
    if (lits.empty()) return {G::kTrue};
    if (lits.size() == 1) return {G::kLit, lits[0]};
    const int a = fresh_aux();
    for (int l : lits) add_clause({-a, l}, instantiation());
    return {G::kLit, a};
  }

  G make_or(const std::vector<G>& parts) {
    std::vector<int> lits;
    for (const auto& g : parts) {
      if (g.kind == G::kTrue) return {G::kTrue};
      if (g.kind == G::kLit) lits.push_back(g.lit);
    }
    if (lits.empty()) return {G::kFalse};
    if (lits.size() == 1) return {G::kLit, lits[0]};
    const int a = fresh_aux();
    sat::Clause c{-a};
    c.insert(c.end(), lits.begin(), lits.end());
    add_clause(std::move(c), instantiation());
    return {G::kLit, a};
  }

  void assert_formula(const Formula& f, bool positive) {
    if (f.kind() == K::kNot) return assert_formula(f.lhs(), !positive);
    if (conjunctive(f, positive)) {
      for_each_operand(f, positive, [&](const Formula& c, bool pol) { assert_formula(c, pol); });
      return;
    }
    std::vector<G> parts;
    if (disjunctive(f, positive)) {
      gather(f, positive, false, parts);
    } else {
      parts.push_back(ground_node(f, positive));
    }
    sat::Clause clause;
    for (const auto& g : parts) {
      if (g.kind == G::kTrue) return;
      if (g.kind == G::kLit) clause.push_back(g.lit);
    }
    add_clause(std::move(clause), instantiation());
  }

  GroundProblem& p_;
  std::string label_;
  std::vector<std::pair<std::string, std::size_t>> env_;
};

}  // namespace

GroundProblem ground(const Scheme& scheme, std::size_t n, GroundOptions options) {
  if (n == 0) throw std::invalid_argument("domain size must be at least 1");
  GroundProblem p;
  p.scheme = expand_unique(scheme);
  p.domain_size = n;
  p.predicates = scheme_predicates(scheme);
  for (const auto& [name, arity] : p.predicates) {
    p.offsets.push_back(p.num_atoms);
    p.num_atoms += power(n, arity);
  }
  p.num_vars = p.num_atoms;

  Grounder g(p);
  for (const auto& axiom : p.scheme.axioms) g.assert_axiom(axiom);
  if (options.pin_witness) {
    const std::size_t zero[] = {0};
    g.set_label("pin");
    g.add_clause({p.atom_variable("T", zero)}, "T(0)");
  }
  return p;
}

// ---------------------------------------------------------------------------
// Solving and enumeration

const char* status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::kSat: return "SAT";
    case SolveStatus::kUnsat: return "UNSAT";
    case SolveStatus::kUnknown: return "UNKNOWN";
  }
  return "?";
}

FiniteStructure extract_structure(const GroundProblem& problem, const std::vector<bool>& assignment) {
  FiniteStructure s(numbered_labels(problem.domain_size));
  for (std::size_t i = 0; i < problem.predicates.size(); ++i) {
    const auto& [name, arity] = problem.predicates[i];
    Relation& rel = s.add_table(name, arity);
    for (std::uint64_t code = 0; code < rel.universe(); ++code)
      if (assignment.at(problem.offsets[i] + code)) rel.set_code(code, true);
  }
  if (problem.scheme.n_is_defined && s.has_table("S") && s.has_table("D")) s = with_derived_n(std::move(s));
  return s;
}

namespace {

void require_sound(const FiniteStructure& s, const Scheme& scheme) {
  const auto report = check_scheme(s, scheme);
  if (!report.all_pass())
    throw std::logic_error("solver produced a structure that does not satisfy " + scheme.name);
}

sat::Solver make_solver(const GroundProblem& problem, std::optional<std::uint64_t> seed,
                        std::optional<std::chrono::milliseconds> time_limit) {
  sat::Solver solver(problem.num_vars, {seed, time_limit});
  for (const auto& c : problem.clauses) solver.add_clause(c);
  return solver;
}

}  // namespace

SolveOutcome solve(const GroundProblem& problem, SolveOptions options) {
  const auto start = std::chrono::steady_clock::now();
  sat::Solver solver = make_solver(problem, options.seed, options.time_limit);
  SolveOutcome out;
  switch (solver.solve()) {
    case sat::Result::kSat:
      out.status = SolveStatus::kSat;
      out.model = extract_structure(problem, solver.model());
      require_sound(*out.model, problem.scheme);
      break;
    case sat::Result::kUnsat:
      out.status = SolveStatus::kUnsat;
      break;
    case sat::Result::kUnknown:
      out.status = SolveStatus::kUnknown;
      break;
  }
  out.stats = solver.stats();
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

namespace {

// Assignment to relation atoms after renaming element i to perm[i].
std::vector<bool> permuted_atoms(const GroundProblem& p, const std::vector<bool>& atoms,
                                 const std::vector<std::size_t>& perm) {
  std::vector<bool> out(p.num_atoms, false);
  for (std::size_t v = 0; v < p.num_atoms; ++v) {
    if (!atoms[v]) continue;
    auto a = p.atom(static_cast<int>(v + 1));
    for (auto& x : a.args) x = perm[x];
    out[static_cast<std::size_t>(p.atom_variable(a.predicate, a.args) - 1)] = true;
  }
  return out;
}

sat::Clause blocking_clause(const std::vector<bool>& atoms) {
  sat::Clause c;
  c.reserve(atoms.size());
  for (std::size_t v = 0; v < atoms.size(); ++v) {
    const int var = static_cast<int>(v + 1);
    c.push_back(atoms[v] ? -var : var);
  }
  return c;
}

}  // namespace

FiniteStructure canonical_form(const FiniteStructure& s, const std::vector<std::string>& predicates) {
  const std::size_t n = s.size();
  if (n > kMaxDedupSize) throw std::invalid_argument("canonical form is limited to domains of size <= 5");
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});

  std::vector<std::uint8_t> best_key;
  std::vector<std::size_t> best_perm;
  do {
    // Key: membership bits of the image, predicate by predicate.
    std::vector<std::uint8_t> key;
    std::vector<std::size_t> inverse(n);
    for (std::size_t i = 0; i < n; ++i) inverse[perm[i]] = i;
    for (const auto& name : predicates) {
      const Relation& rel = s.table(name);
      Tuple image(rel.arity());
      for (std::uint64_t code = 0; code < rel.universe(); ++code) {
        Tuple t = rel.decode(code);
        for (std::size_t j = 0; j < t.size(); ++j) image[j] = inverse[t[j]];
        key.push_back(rel.contains(image) ? 1 : 0);
      }
    }
    if (best_perm.empty() || key < best_key) {
      best_key = std::move(key);
      best_perm = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  FiniteStructure out(numbered_labels(n));
  for (const auto& [name, rel] : s.tables()) {
    Relation& dst = out.add_table(name, rel.arity());
    for (auto t : rel.tuples()) {
      for (auto& x : t) x = best_perm[x];
      dst.insert(t);
    }
  }
  return out;
}

std::vector<FiniteStructure> find_models(const Scheme& scheme, std::size_t n, std::size_t limit, FindOptions options) {
  if (options.dedup && n > kMaxDedupSize)
    throw std::invalid_argument("isomorphism dedup is limited to domains of size <= 5");
  std::vector<FiniteStructure> out;
  if (limit == 0) return out;

  const GroundProblem problem = ground(scheme, n, {.pin_witness = options.pin_witness});
  sat::Solver solver = make_solver(problem, options.seed, std::nullopt);
  std::vector<std::string> predicate_names;
  for (const auto& [name, arity] : problem.predicates) predicate_names.push_back(name);

  std::vector<std::size_t> identity(n);
  std::iota(identity.begin(), identity.end(), std::size_t{0});

  while (out.size() < limit && solver.solve() == sat::Result::kSat) {
    const auto& model = solver.model();
    std::vector<bool> atoms(model.begin(), model.begin() + static_cast<std::ptrdiff_t>(problem.num_atoms));
    FiniteStructure s = extract_structure(problem, model);
    require_sound(s, problem.scheme);

    if (!options.dedup) {
      solver.add_clause(blocking_clause(atoms));
      out.push_back(std::move(s));
      continue;
    }
    std::set<std::vector<bool>> images;
    std::vector<std::size_t> perm = identity;
    do {
      images.insert(permuted_atoms(problem, atoms, perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (const auto& img : images) solver.add_clause(blocking_clause(img));
    out.push_back(canonical_form(s, predicate_names));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Brute-force oracle

std::size_t relation_bits(const Scheme& scheme, std::size_t n) {
  std::size_t bits = 0;
  for (const auto& [name, arity] : scheme_predicates(scheme)) bits += static_cast<std::size_t>(power(n, arity));
  return bits;
}

std::vector<FiniteStructure> brute_force_models(const Scheme& scheme, std::size_t n) {
  if (n == 0) throw std::invalid_argument("domain size must be at least 1");
  const std::size_t bits = relation_bits(scheme, n);
  if (bits > kBruteForceBitBudget)
    throw std::invalid_argument("brute force needs " + std::to_string(bits) + " relation bits; budget is " +
                                std::to_string(kBruteForceBitBudget));

  FiniteStructure s(numbered_labels(n));
  struct Slot {
    Relation* rel;
    std::uint64_t code;
  };
  std::vector<Slot> slots;
  for (const auto& [name, arity] : scheme_predicates(scheme)) {
    Relation& rel = s.add_table(name, arity);
    for (std::uint64_t code = 0; code < rel.universe(); ++code) slots.push_back({&rel, code});
  }
  std::vector<Evaluator> axioms;
  for (const auto& a : scheme.axioms) axioms.emplace_back(s, a.formula);

  std::vector<FiniteStructure> out;
  std::uint64_t previous = 0;
  const std::uint64_t total = std::uint64_t{1} << bits;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    const std::uint64_t changed = mask ^ previous;
    for (std::size_t b = 0; b < bits; ++b)
      if (changed >> b & 1u) slots[b].rel->set_code(slots[b].code, mask >> b & 1u);
    previous = mask;
    if (!std::all_of(axioms.begin(), axioms.end(), [](const Evaluator& e) { return e(); })) continue;
    FiniteStructure model = s;
    if (scheme.n_is_defined && model.has_table("S") && model.has_table("D")) model = with_derived_n(std::move(model));
    out.push_back(std::move(model));
  }
  return out;
}

}  // namespace dialectic
