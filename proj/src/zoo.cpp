#include "dialectic/zoo.hpp"

#include <algorithm>
#include <memory>
#include <set>
#include <stdexcept>

namespace dialectic {

namespace {

FiniteStructure numbered_domain(std::size_t from, std::size_t to) {
  std::vector<std::string> labels;
  for (std::size_t i = from; i <= to; ++i) labels.push_back(std::to_string(i));
  return FiniteStructure(std::move(labels));
}

void add_rows(FiniteStructure& s, const std::string& name, std::size_t arity,
              const std::vector<std::vector<std::string>>& rows) {
  s.add_table(name, arity);
  for (const auto& r : rows) s.insert(name, r);
}

}  // namespace

FiniteStructure build_model(ModelId id) {
  if (id == ModelId::kA) {
    FiniteStructure s = numbered_domain(1, 3);
    add_rows(s, "T", 1, {{"1"}, {"2"}, {"3"}});
    add_rows(s, kAntithesisTable, 1, {{"1"}, {"2"}, {"3"}});
    add_rows(s, "A", 2, {{"1", "2"}, {"2", "3"}, {"3", "1"}});
    add_rows(s, "S", 3, {{"1", "3", "2"}, {"2", "1", "3"}, {"3", "2", "1"}});
    add_rows(s, "D", 2, {{"1", "3"}, {"1", "2"}, {"2", "1"}, {"2", "3"}, {"3", "2"}, {"3", "1"}});
    add_rows(s, "N", 1, {{"1"}, {"2"}, {"3"}});
    return s;
  }
  FiniteStructure s = numbered_domain(1, 4);
  add_rows(s, "T", 1, {{"1"}, {"2"}});
  add_rows(s, kAntithesisTable, 1, {{"3"}, {"4"}});
  add_rows(s, "A", 2, {{"3", "1"}, {"4", "2"}});
  add_rows(s, "S", 3, {{"2", "1", "3"}, {"1", "2", "4"}});
  add_rows(s, "D", 2, {{"2", "1"}, {"2", "3"}, {"1", "2"}, {"1", "4"}});
  add_rows(s, "N", 1, {{"1"}, {"2"}});
  return s;
}

FiniteStructure model_a_with_alternative_n() {
  FiniteStructure s = build_model(ModelId::kA);
  s.table("N").clear();
  s.insert("N", {"1"});
  s.insert("N", {"2"});
  return s;
}

// ---------------------------------------------------------------------------
// Model C

std::vector<SequenceTriple> model_c_sequence_prefix(std::size_t count) {
  std::vector<SequenceTriple> out;
  out.reserve(count);
  BigInt a = 3, b = 4, c = a + b;
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back({i, a, b, c});
    a = c;
    b = c + 1;
    c = 2 * c + 1;
  }
  return out;
}

SequenceTriple model_c_sequences(std::size_t i) { return model_c_sequence_prefix(i + 1).back(); }

namespace {

// Locates values among the a_i and b_i by binary search over a precomputed
// prefix, extending past it on demand.
class SequenceIndex {
 public:
  enum class Role { kThesis, kAntithesis };
  struct Hit {
    Role role;
    std::size_t index;
  };

  explicit SequenceIndex(std::size_t prefix) : triples_(model_c_sequence_prefix(prefix)) {}

  std::optional<Hit> classify(const BigInt& v) const {
    if (v < 3) return std::nullopt;
    if (v > triples_.back().b) return classify_beyond(v);
    auto by_a = std::lower_bound(triples_.begin(), triples_.end(), v,
                                 [](const SequenceTriple& t, const BigInt& x) { return t.a < x; });
    if (by_a != triples_.end() && by_a->a == v) return Hit{Role::kThesis, by_a->index};
    auto by_b = std::lower_bound(triples_.begin(), triples_.end(), v,
                                 [](const SequenceTriple& t, const BigInt& x) { return t.b < x; });
    if (by_b != triples_.end() && by_b->b == v) return Hit{Role::kAntithesis, by_b->index};
    return std::nullopt;
  }

  SequenceTriple triple(std::size_t i) const {
    if (i < triples_.size()) return triples_[i];
    return model_c_sequences(i);
  }

 private:
  std::optional<Hit> classify_beyond(const BigInt& v) const {
    SequenceTriple t = triples_.back();
    while (t.a <= v) {
      if (t.a == v) return Hit{Role::kThesis, t.index};
      if (t.b == v) return Hit{Role::kAntithesis, t.index};
      t = {t.index + 1, t.c, t.c + 1, 2 * t.c + 1};
    }
    return std::nullopt;
  }

  std::vector<SequenceTriple> triples_;
};

// Index i with v == c_i (equivalently v == a_{i+1}).
std::optional<std::size_t> synthesis_index(const SequenceIndex& seq, const BigInt& v) {
  auto hit = seq.classify(v);
  if (!hit || hit->role != SequenceIndex::Role::kThesis || hit->index == 0) return std::nullopt;
  return hit->index - 1;
}

}  // namespace

ComputableStructure build_model_c() {
  auto seq = std::make_shared<const SequenceIndex>(256);
  using Role = SequenceIndex::Role;
  auto is_role = [seq](const BigInt& v, Role role) -> std::optional<std::size_t> {
    auto hit = seq->classify(v);
    if (hit && hit->role == role) return hit->index;
    return std::nullopt;
  };

  ComputableStructure cs;
  cs.name = "Model C";
  cs.element_test = [seq](const BigInt& v) { return seq->classify(v).has_value(); };
  cs.window = [seq](std::size_t m) {
    std::vector<BigInt> out;
    out.reserve(2 * m);
    for (const auto& t : model_c_sequence_prefix(m)) {
      out.push_back(t.a);
      out.push_back(t.b);
    }
    return out;
  };

  cs.membership["T"] = {1, [is_role](std::span<const BigInt> v) { return is_role(v[0], Role::kThesis).has_value(); }};
  cs.membership[kAntithesisTable] = {
      1, [is_role](std::span<const BigInt> v) { return is_role(v[0], Role::kAntithesis).has_value(); }};
  // A(b_i, a_i)
  cs.membership["A"] = {2, [is_role](std::span<const BigInt> v) {
                          auto y = is_role(v[0], Role::kAntithesis);
                          auto x = is_role(v[1], Role::kThesis);
                          return x && y && *x == *y;
                        }};
  // S(c_i, a_i, b_i) and S(c_i, b_i, a_i)
  cs.membership["S"] = {3, [seq, is_role](std::span<const BigInt> v) {
                          auto i = synthesis_index(*seq, v[0]);
                          if (!i) return false;
                          const auto t = seq->triple(*i);
                          return (v[1] == t.a && v[2] == t.b) || (v[1] == t.b && v[2] == t.a);
                        }};
  // D(c_i, a_i) and D(c_i, b_i)
  cs.membership["D"] = {2, [seq](std::span<const BigInt> v) {
                          auto i = synthesis_index(*seq, v[0]);
                          if (!i) return false;
                          const auto t = seq->triple(*i);
                          return v[1] == t.a || v[1] == t.b;
                        }};
  cs.membership["N"] = {1, [seq](std::span<const BigInt> v) { return synthesis_index(*seq, v[0]).has_value(); }};
  cs.membership["P"] = {2, [seq](std::span<const BigInt> v) {
                          return v[0] < v[1] && seq->classify(v[0]) && seq->classify(v[1]);
                        }};

  // Witnesses. Variable names follow the expanded axioms: N(t) becomes
  // exists x_k. exists y_k. S(t, x_k, y_k) & ..., with fresh suffixes.
  auto from = [](const BigAssignment& env, const char* var) -> const BigInt* {
    auto it = env.find(var);
    return it == env.end() ? nullptr : &it->second;
  };
  auto synthesis_parts = [seq, from](const char* subject, bool first) {
    return [seq, from, subject, first](const BigAssignment& env) -> std::optional<BigInt> {
      const BigInt* z = from(env, subject);
      if (!z) return std::nullopt;
      auto i = synthesis_index(*seq, *z);
      if (!i) return std::nullopt;
      const auto t = seq->triple(*i);
      return first ? t.a : t.b;
    };
  };
  auto next_synthesis = [seq, from](const BigAssignment& env) -> std::optional<BigInt> {
    const BigInt* x = from(env, "x");
    if (!x) return std::nullopt;
    auto i = synthesis_index(*seq, *x);
    if (!i) return std::nullopt;
    return seq->triple(*i + 1).c;
  };

  cs.witnesses[{"E1", "x"}] = [](const BigAssignment&) -> std::optional<BigInt> { return BigInt(3); };
  cs.witnesses[{"E2", "y"}] = [is_role, seq, from](const BigAssignment& env) -> std::optional<BigInt> {
    const BigInt* x = from(env, "x");
    if (!x) return std::nullopt;
    auto i = is_role(*x, Role::kThesis);
    if (!i) return std::nullopt;
    return seq->triple(*i).b;
  };
  cs.witnesses[{"E3", "z"}] = [is_role, seq, from](const BigAssignment& env) -> std::optional<BigInt> {
    const BigInt* x = from(env, "x");
    const BigInt* y = from(env, "y");
    if (!x || !y) return std::nullopt;
    auto hx = seq->classify(*x);
    auto hy = seq->classify(*y);
    if (!hx || !hy || hx->index != hy->index || hx->role == hy->role) return std::nullopt;
    return seq->triple(hx->index).c;
  };
  cs.witnesses[{"E4", "x"}] = [](const BigAssignment&) -> std::optional<BigInt> { return BigInt(7); };
  cs.witnesses[{"E4", "x1"}] = synthesis_parts("x", true);
  cs.witnesses[{"E4", "y"}] = synthesis_parts("x", false);
  for (const char* label : {"E5", "E5.1"}) {
    cs.witnesses[{label, "y"}] = next_synthesis;
    cs.witnesses[{label, "x2"}] = synthesis_parts("y", true);
    cs.witnesses[{label, "y2"}] = synthesis_parts("y", false);
  }
  cs.witnesses[{"E6.1", "y"}] = [seq, from](const BigAssignment& env) -> std::optional<BigInt> {
    const BigInt* x = from(env, "x");
    if (!x) return std::nullopt;
    auto hit = seq->classify(*x);
    if (!hit) return std::nullopt;
    const auto t = seq->triple(hit->index);
    return hit->role == Role::kThesis ? t.b : t.c;
  };
  return cs;
}

// ---------------------------------------------------------------------------
// Model D

namespace {

void require_k(const BigInt& k) {
  if (k < 2) throw std::invalid_argument("Model D requires k >= 2");
}

}  // namespace

FiniteStructure build_model_d_finite(const BigInt& big_k) {
  require_k(big_k);
  if (big_k > kModelDExtensionalLimit)
    throw std::invalid_argument("k = " + big_k.str() + " exceeds the extensional limit; use the computable form");
  const auto k = static_cast<std::size_t>(big_k);
  FiniteStructure s = numbered_domain(0, k + 1);
  const std::size_t anti = k + 1;
  Relation& T = s.add_table("T", 1);
  Relation& Anti = s.add_table(kAntithesisTable, 1);
  Relation& A = s.add_table("A", 2);
  Relation& S = s.add_table("S", 3);
  Relation& D = s.add_table("D", 2);
  Relation& N = s.add_table("N", 1);
  for (std::size_t i = 0; i <= k; ++i) {
    const std::size_t t[] = {i};
    T.insert(t);
    const std::size_t a[] = {anti, i};
    A.insert(a);
  }
  const std::size_t anti_row[] = {anti};
  Anti.insert(anti_row);
  for (std::size_t i = 0; i + 1 <= k; ++i) {
    const std::size_t row[] = {i + 1, i, anti};
    S.insert(row);
  }
  const std::size_t wrap[] = {0, k, anti};
  S.insert(wrap);
  for (auto [x, y] : {std::pair<std::size_t, std::size_t>{1, 0}, {1, anti}, {2, 1}, {2, anti}}) {
    const std::size_t row[] = {x, y};
    D.insert(row);
  }
  for (std::size_t z : {1, 2}) {
    const std::size_t row[] = {z};
    N.insert(row);
  }
  return s;
}

ComputableStructure build_model_d_computable(const BigInt& k) {
  require_k(k);
  const BigInt anti = k + 1;
  auto in_theses = [k](const BigInt& v) { return v >= 0 && v <= k; };

  ComputableStructure cs;
  cs.name = "Model D(k=" + k.str() + ")";
  cs.element_test = [anti](const BigInt& v) { return v >= 0 && v <= anti; };
  cs.window = [anti](std::size_t m) {
    std::vector<BigInt> out;
    BigInt lo = 0, hi = anti;
    while (out.size() < m && lo <= hi) {
      out.push_back(lo);
      ++lo;
      if (out.size() < m && lo <= hi) {
        out.push_back(hi);
        --hi;
      }
    }
    return out;
  };

  cs.membership["T"] = {1, [in_theses](std::span<const BigInt> v) { return in_theses(v[0]); }};
  cs.membership[kAntithesisTable] = {1, [anti](std::span<const BigInt> v) { return v[0] == anti; }};
  cs.membership["A"] = {2, [anti, in_theses](std::span<const BigInt> v) { return v[0] == anti && in_theses(v[1]); }};
  // S' = {(i+1, i, k+1) | 0 <= i <= k-1}, S'' = {(0, k, k+1)}
  cs.membership["S"] = {3, [k, anti](std::span<const BigInt> v) {
                          if (v[2] != anti) return false;
                          if (v[1] >= 0 && v[1] <= k - 1) return v[0] == v[1] + 1;
                          return v[1] == k && v[0] == 0;
                        }};
  cs.membership["D"] = {2, [anti](std::span<const BigInt> v) {
                          return (v[0] == 1 && (v[1] == 0 || v[1] == anti)) || (v[0] == 2 && (v[1] == 1 || v[1] == anti));
                        }};
  cs.membership["N"] = {1, [](std::span<const BigInt> v) { return v[0] == 1 || v[0] == 2; }};

  auto lookup = [](const BigAssignment& env, const char* var) -> std::optional<BigInt> {
    auto it = env.find(var);
    if (it == env.end()) return std::nullopt;
    return it->second;
  };
  // For a nodal point z in {1, 2}: S(z, z-1, k+1), D(z, z-1), D(z, k+1).
  auto nodal_part = [lookup, anti](const char* subject, bool first) {
    return [lookup, anti, subject, first](const BigAssignment& env) -> std::optional<BigInt> {
      auto z = lookup(env, subject);
      if (!z || (*z != 1 && *z != 2)) return std::nullopt;
      return first ? BigInt(*z - 1) : anti;
    };
  };

  cs.witnesses[{"E1", "x"}] = [](const BigAssignment&) -> std::optional<BigInt> { return BigInt(0); };
  cs.witnesses[{"E2", "y"}] = [lookup, in_theses, anti](const BigAssignment& env) -> std::optional<BigInt> {
    auto x = lookup(env, "x");
    if (!x || !in_theses(*x)) return std::nullopt;
    return anti;
  };
  cs.witnesses[{"E3", "z"}] = [lookup, k, anti](const BigAssignment& env) -> std::optional<BigInt> {
    auto x = lookup(env, "x");
    auto y = lookup(env, "y");
    if (!x || !y || *y != anti || *x < 0 || *x > k) return std::nullopt;
    return *x == k ? BigInt(0) : BigInt(*x + 1);
  };
  cs.witnesses[{"E4", "x"}] = [](const BigAssignment&) -> std::optional<BigInt> { return BigInt(1); };
  cs.witnesses[{"E4", "x1"}] = nodal_part("x", true);
  cs.witnesses[{"E4", "y"}] = nodal_part("x", false);
  cs.witnesses[{"E5", "y"}] = [lookup](const BigAssignment& env) -> std::optional<BigInt> {
    auto x = lookup(env, "x");
    if (!x) return std::nullopt;
    return *x == 1 ? BigInt(2) : BigInt(1);
  };
  cs.witnesses[{"E5", "x2"}] = nodal_part("y", true);
  cs.witnesses[{"E5", "y2"}] = nodal_part("y", false);
  return cs;
}

std::variant<FiniteStructure, ComputableStructure> build_model_d(const BigInt& k) {
  require_k(k);
  if (k <= kModelDExtensionalLimit) return build_model_d_finite(k);
  return build_model_d_computable(k);
}

FiniteStructure relabel(const FiniteStructure& s, const Relabeling& f) {
  std::vector<std::string> labels;
  std::set<std::string> seen;
  labels.reserve(s.size());
  for (const auto& old : s.domain()) {
    auto it = f.find(old);
    if (it == f.end()) throw StructureError("relabeling does not map element '" + old + "'");
    if (!seen.insert(it->second).second)
      throw StructureError("relabeling is not injective: '" + it->second + "' is used twice");
    labels.push_back(it->second);
  }
  return s.with_labels(std::move(labels));
}

}  // namespace dialectic
