// Concrete models of the dialectical schemes.
//
//   Model A    three mutually antithetical theses, all of them nodal.
//   Model B    two theses with two distinct antitheses.
//   Model C    infinite; theses a_i, antitheses b_i, syntheses c_i = a_{i+1}.
//   Model D_k  theses 0..k, a single antithesis k+1.
//
// D_k for huge k (the hyperfinite case) is only available intensionally.

#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "dialectic/semantics.hpp"
#include "dialectic/structure.hpp"

namespace dialectic {

enum class ModelId { kA, kB };

/// Table holding the antitheses. Structures may carry it; no scheme reads it.
inline constexpr const char* kAntithesisTable = "Anti";

FiniteStructure build_model(ModelId id);

/// Model A with the listed alternative N = {1, 2}; it disagrees with the
/// derived N and only checks clean with the N cross-check disabled.
FiniteStructure model_a_with_alternative_n();

struct SequenceTriple {
  std::size_t index = 0;
  BigInt a;
  BigInt b;
  BigInt c;
};

/// a_0 = 3, b_0 = 4, c_0 = 7; a_{i+1} = c_i, b_{i+1} = c_i + 1, c_{i+1} = 2 c_i + 1.
SequenceTriple model_c_sequences(std::size_t i);

/// Triples 0..count-1, computed in one pass.
std::vector<SequenceTriple> model_c_sequence_prefix(std::size_t count);

/// window(m) enumerates a_0, b_0, ..., a_{m-1}, b_{m-1}.
ComputableStructure build_model_c();

/// Largest k for which build_model_d materializes tables.
inline constexpr unsigned kModelDExtensionalLimit = 1'000'000;

/// Throws std::invalid_argument for k < 2 or k above the extensional limit.
FiniteStructure build_model_d_finite(const BigInt& k);

/// Any k >= 2. window(m) alternates from both ends: 0, k+1, 1, k, 2, k-1, ...
ComputableStructure build_model_d_computable(const BigInt& k);

/// Extensional when k <= kModelDExtensionalLimit, intensional otherwise.
std::variant<FiniteStructure, ComputableStructure> build_model_d(const BigInt& k);

/// Old label -> new label.
using Relabeling = std::map<std::string, std::string, std::less<>>;

/// Image of s under an injection on its domain. Throws StructureError when
/// the map is not injective or misses a domain element.
FiniteStructure relabel(const FiniteStructure& s, const Relabeling& f);

}  // namespace dialectic
