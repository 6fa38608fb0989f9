#include "dialectic/structure.hpp"

#include <algorithm>
#include <limits>

namespace dialectic {

namespace {

constexpr std::uint64_t kDenseLimit = 1u << 16;

std::uint64_t checked_power(std::size_t base, std::size_t exponent) {
  std::uint64_t result = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    if (base != 0 && result > std::numeric_limits<std::uint64_t>::max() / base)
      throw StructureError("relation too large to index: " + std::to_string(base) + "^" + std::to_string(exponent));
    result *= base;
  }
  return result;
}

}  // namespace

Relation::Relation(std::size_t arity, std::size_t domain_size)
    : arity_(arity), n_(domain_size), universe_(checked_power(domain_size, arity)), dense_(universe_ <= kDenseLimit) {
  if (arity == 0) throw StructureError("relation arity must be >= 1");
  if (dense_) bits_.assign(universe_, 0);
}

std::uint64_t Relation::encode(std::span<const std::size_t> tuple) const {
  if (tuple.size() != arity_)
    throw StructureError("tuple of length " + std::to_string(tuple.size()) + " for relation of arity " +
                         std::to_string(arity_));
  std::uint64_t code = 0;
  for (std::size_t v : tuple) {
    if (v >= n_) throw StructureError("tuple component outside domain");
    code = code * n_ + v;
  }
  return code;
}

Tuple Relation::decode(std::uint64_t code) const {
  Tuple t(arity_);
  for (std::size_t i = arity_; i-- > 0;) {
    t[i] = static_cast<std::size_t>(code % n_);
    code /= n_;
  }
  return t;
}

bool Relation::contains_code(std::uint64_t code) const {
  if (dense_) return bits_[code] != 0;
  return sparse_.count(code) != 0;
}

void Relation::set_code(std::uint64_t code, bool value) {
  const bool had = contains_code(code);
  if (had == value) return;
  if (dense_) {
    bits_[code] = value ? 1 : 0;
  } else if (value) {
    sparse_.insert(code);
  } else {
    sparse_.erase(code);
  }
  count_ += value ? 1 : static_cast<std::size_t>(-1);
}

bool Relation::insert(std::span<const std::size_t> tuple) {
  const std::uint64_t code = encode(tuple);
  if (contains_code(code)) return false;
  set_code(code, true);
  return true;
}

bool Relation::erase(std::span<const std::size_t> tuple) {
  const std::uint64_t code = encode(tuple);
  if (!contains_code(code)) return false;
  set_code(code, false);
  return true;
}

void Relation::clear() {
  if (dense_) std::fill(bits_.begin(), bits_.end(), 0);
  sparse_.clear();
  count_ = 0;
}

std::vector<Tuple> Relation::tuples() const {
  std::vector<std::uint64_t> codes;
  codes.reserve(count_);
  if (dense_) {
    for (std::uint64_t c = 0; c < universe_; ++c)
      if (bits_[c]) codes.push_back(c);
  } else {
    codes.assign(sparse_.begin(), sparse_.end());
    std::sort(codes.begin(), codes.end());
  }
  std::vector<Tuple> out;
  out.reserve(codes.size());
  for (auto c : codes) out.push_back(decode(c));
  return out;
}

bool operator==(const Relation& a, const Relation& b) {
  if (a.arity_ != b.arity_ || a.n_ != b.n_ || a.count_ != b.count_) return false;
  if (a.dense_) return a.bits_ == b.bits_;
  return a.sparse_ == b.sparse_;
}

// ---------------------------------------------------------------------------

FiniteStructure::FiniteStructure(std::vector<std::string> domain) : domain_(std::move(domain)) {
  if (domain_.empty()) throw StructureError("domain must be non-empty");
  index_.reserve(domain_.size());
  for (std::size_t i = 0; i < domain_.size(); ++i) {
    if (domain_[i].empty()) throw StructureError("empty element label");
    if (!index_.emplace(domain_[i], i).second) throw StructureError("duplicate element '" + domain_[i] + "'");
  }
}

std::size_t FiniteStructure::index_of(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) throw StructureError("element '" + std::string(label) + "' is not in the domain");
  return it->second;
}

bool FiniteStructure::has_element(std::string_view label) const { return index_.count(std::string(label)) != 0; }

Relation& FiniteStructure::add_table(const std::string& name, std::size_t arity) {
  auto it = tables_.find(name);
  if (it != tables_.end()) {
    if (it->second.arity() != arity)
      throw StructureError("table '" + name + "' redeclared with a different arity");
    return it->second;
  }
  return tables_.emplace(name, Relation(arity, domain_.size())).first->second;
}

bool FiniteStructure::has_table(std::string_view name) const { return tables_.find(name) != tables_.end(); }

const Relation* FiniteStructure::find_table(std::string_view name) const {
  auto it = tables_.find(name);
  return it == tables_.end() ? nullptr : &it->second;
}

Relation* FiniteStructure::find_table(std::string_view name) {
  auto it = tables_.find(name);
  return it == tables_.end() ? nullptr : &it->second;
}

const Relation& FiniteStructure::table(std::string_view name) const {
  if (const Relation* r = find_table(name)) return *r;
  throw StructureError("missing table '" + std::string(name) + "'");
}

Relation& FiniteStructure::table(std::string_view name) {
  if (Relation* r = find_table(name)) return *r;
  throw StructureError("missing table '" + std::string(name) + "'");
}

void FiniteStructure::remove_table(std::string_view name) {
  auto it = tables_.find(name);
  if (it != tables_.end()) tables_.erase(it);
}

bool FiniteStructure::insert(std::string_view name, const std::vector<std::string>& labels) {
  Tuple t;
  t.reserve(labels.size());
  for (const auto& l : labels) t.push_back(index_of(l));
  return table(name).insert(t);
}

bool FiniteStructure::contains(std::string_view name, const std::vector<std::string>& labels) const {
  Tuple t;
  t.reserve(labels.size());
  for (const auto& l : labels) {
    if (!has_element(l)) return false;
    t.push_back(index_of(l));
  }
  return table(name).contains(t);
}

std::vector<std::vector<std::string>> FiniteStructure::labelled_tuples(std::string_view name) const {
  std::vector<std::vector<std::string>> out;
  for (const auto& t : table(name).tuples()) {
    std::vector<std::string> row;
    row.reserve(t.size());
    for (auto i : t) row.push_back(domain_[i]);
    out.push_back(std::move(row));
  }
  return out;
}

FiniteStructure FiniteStructure::with_labels(std::vector<std::string> labels) const {
  if (labels.size() != domain_.size()) throw StructureError("relabeling must preserve the domain size");
  FiniteStructure out(std::move(labels));
  out.tables_ = tables_;
  return out;
}

bool operator==(const FiniteStructure& a, const FiniteStructure& b) {
  return a.domain_ == b.domain_ && a.tables_ == b.tables_;
}

}  // namespace dialectic
