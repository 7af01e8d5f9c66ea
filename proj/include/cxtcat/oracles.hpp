#pragma once

// Brute-force reference computations. They share no code paths with the
// routines they check beyond the context/lattice primitives, and are only
// meant for desk-scale inputs.

#include <vector>

#include "cxtcat/disco.hpp"
#include "cxtcat/lattice.hpp"
#include "cxtcat/morphism.hpp"

namespace cxtcat {

/// Close every subset of G and deduplicate; sorted lectically.
std::vector<Bitset> oracle_extents(const FormalContext& k, const Limits& limits = Limits::global());

/// Every G1 x M2 matrix with closed rows and columns, filtered from all
/// 2^(|G1||M2|) candidates; sorted by lectic flattening.
std::vector<BitMatrix> oracle_bonds(const FormalContext& k1, const FormalContext& k2,
                                    const Limits& limits = Limits::global());

/// Every function V -> W that preserves all joins, by exhaustive search.
std::vector<SupMap> oracle_sup_maps(const LatticePtr& v, const LatticePtr& w, std::size_t max_functions = 1u << 22);

/// Evaluation B(K)* [x] B(K) -> 2 on every concept of K* [x] K, computed as
/// the join of beta(u, v) = [v not below u] over nonzero pure tensors u (x) v
/// below the concept.
std::vector<bool> oracle_cup(const ContextPtr& k);

/// Sentence meaning computed on the lattice side: join, over tuples of
/// nonzero factor concepts whose pure tensor lies below every word state and
/// whose contracted pairs all evaluate to 1, of the target concept. Only for
/// single-factor targets; returns the extent.
Bitset oracle_interpretation(const Lexicon& lex, const std::vector<std::string>& sentence,
                             const ReductionWitness& witness, const std::vector<Bitset>& states,
                             std::size_t max_tuples = 1u << 22);

}  // namespace cxtcat
