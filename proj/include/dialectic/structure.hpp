// Finite relational structures.
//
// Elements are opaque labels compared as symbols. Internally every tuple is
// stored as a mixed-radix code over domain positions, so relation lookups
// never allocate.

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace dialectic {

using Tuple = std::vector<std::size_t>;

/// Malformed structure: bad arity, unknown element, duplicate label, ...
class StructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Relation {
 public:
  Relation(std::size_t arity, std::size_t domain_size);

  std::size_t arity() const { return arity_; }
  std::size_t domain_size() const { return n_; }
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }

  bool contains(std::span<const std::size_t> tuple) const { return contains_code(encode(tuple)); }
  bool contains_code(std::uint64_t code) const;

  /// Returns false when the tuple was already present.
  bool insert(std::span<const std::size_t> tuple);
  bool erase(std::span<const std::size_t> tuple);
  void set_code(std::uint64_t code, bool value);
  void clear();

  std::uint64_t encode(std::span<const std::size_t> tuple) const;
  Tuple decode(std::uint64_t code) const;
  /// n^arity, the number of possible tuples.
  std::uint64_t universe() const { return universe_; }

  /// All tuples in lexicographic order of domain positions.
  std::vector<Tuple> tuples() const;

  friend bool operator==(const Relation& a, const Relation& b);

 private:
  std::size_t arity_;
  std::size_t n_;
  std::uint64_t universe_;
  std::size_t count_ = 0;
  bool dense_;
  std::vector<std::uint8_t> bits_;
  std::unordered_set<std::uint64_t> sparse_;
};

class FiniteStructure {
 public:
  explicit FiniteStructure(std::vector<std::string> domain);

  const std::vector<std::string>& domain() const { return domain_; }
  std::size_t size() const { return domain_.size(); }
  std::size_t index_of(std::string_view label) const;  // throws StructureError
  bool has_element(std::string_view label) const;
  const std::string& label(std::size_t index) const { return domain_.at(index); }

  /// Adds an empty table; replaces nothing if already present with the same arity.
  Relation& add_table(const std::string& name, std::size_t arity);
  bool has_table(std::string_view name) const;
  const Relation* find_table(std::string_view name) const;
  Relation* find_table(std::string_view name);
  const Relation& table(std::string_view name) const;  // throws StructureError
  Relation& table(std::string_view name);
  void remove_table(std::string_view name);
  const std::map<std::string, Relation, std::less<>>& tables() const { return tables_; }

  /// Inserts a tuple given by labels. Returns false for a duplicate.
  bool insert(std::string_view name, const std::vector<std::string>& labels);
  bool contains(std::string_view name, const std::vector<std::string>& labels) const;

  /// Tuples of a table rendered as labels, in domain order.
  std::vector<std::vector<std::string>> labelled_tuples(std::string_view name) const;

  /// Same domain with labels replaced; tables are carried over unchanged.
  FiniteStructure with_labels(std::vector<std::string> labels) const;

  friend bool operator==(const FiniteStructure& a, const FiniteStructure& b);

 private:
  std::vector<std::string> domain_;
  std::unordered_map<std::string, std::size_t> index_;
  std::map<std::string, Relation, std::less<>> tables_;
};

}  // namespace dialectic
