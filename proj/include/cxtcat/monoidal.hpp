#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cxtcat/context.hpp"
#include "cxtcat/limits.hpp"
#include "cxtcat/morphism.hpp"

namespace cxtcat {

/// Concept tensor (direct product) or lattice tensor. Both share the unit I
/// and the object carrier G1 x G2.
enum class TensorKind { Concept, Lattice };

const char* tensor_kind_name(TensorKind kind);

/// Row-major pairing of two index ranges: flat = i * n2 + j.
struct PairIndex {
  std::size_t n1 = 0, n2 = 0;
  std::size_t size() const noexcept { return n1 * n2; }
  std::size_t flat(std::size_t i, std::size_t j) const noexcept { return i * n2 + j; }
  std::pair<std::size_t, std::size_t> unflat(std::size_t f) const noexcept { return {f / n2, f % n2}; }
};

std::string pair_label(const std::string& a, const std::string& b);

/// K1 (x) K2: objects G1 x G2, attributes M1 x M2, (g1,g2) related to (m1,m2)
/// iff g1 I m1 or g2 I m2.
ContextPtr concept_tensor(const ContextPtr& k1, const ContextPtr& k2);

/// K1 [x] K2: objects G1 x G2, one attribute per morphism K1 -> K2* (its
/// bond is a G1 x G2 relation B), with (g1,g2) I B iff (g1,g2) in B.
/// Memoised. Throws SizeCapExceeded when |G1||G2| > limits.box_carrier.
ContextPtr lattice_tensor(const ContextPtr& k1, const ContextPtr& k2, const Limits& limits = Limits::global());

ContextPtr tensor(TensorKind kind, const ContextPtr& k1, const ContextPtr& k2);

/// Closure of A x B inside a tensor context (either kind), given A and B as
/// object subsets of the factors.
Bitset close_product(const FormalContext& tensor_context, const Bitset& a, const Bitset& b);

/// R1 (x) R2 : K1 (x) K2 -> K3 (x) K4, (g1,g2) -> close(R1(g1) x R2(g2)).
ContextMorphism tensor_morphism(TensorKind kind, const ContextMorphism& r1, const ContextMorphism& r2);
/// The intent side of R1 (x) R2 for the concept tensor: (m3,m4) -> close(R1*(m3) x R2*(m4)).
BitMatrix concept_tensor_intent_side(const ContextMorphism& r1, const ContextMorphism& r2);

/// alpha : K1 (x) (K2 (x) K3) -> (K1 (x) K2) (x) K3.
ContextMorphism associator(TensorKind kind, const ContextPtr& k1, const ContextPtr& k2, const ContextPtr& k3);
ContextMorphism associator_inverse(TensorKind kind, const ContextPtr& k1, const ContextPtr& k2, const ContextPtr& k3);
/// sigma : K1 (x) K2 -> K2 (x) K1.
ContextMorphism symmetry(TensorKind kind, const ContextPtr& k1, const ContextPtr& k2);
/// rho : K (x) I -> K.
ContextMorphism unitor_right(TensorKind kind, const ContextPtr& k);
ContextMorphism unitor_right_inverse(TensorKind kind, const ContextPtr& k);
/// lambda = rho o sigma_{I,K} : I (x) K -> K.
ContextMorphism unitor_left(TensorKind kind, const ContextPtr& k);
ContextMorphism unitor_left_inverse(TensorKind kind, const ContextPtr& k);

/// The discarding effect K -> I: its intent relation sends the point to all of M.
ContextMorphism discard(const ContextPtr& k);

/// Embedding of a plain relation R : A -> B as a morphism S_A -> S_B.
ContextMorphism rel_embed(const std::vector<std::string>& a, const std::vector<std::string>& b, const BitMatrix& r);

/// hom(A [x] B, C*) <-> hom(A, (B [x] C)*). Both bonds are ternary relations
/// on G_A x G_B x G_C; the bijection regroups the coordinates.
struct StarAutonomy {
  HomSet left;                        ///< hom(A [x] B, C*)
  HomSet right;                       ///< hom(A, (B [x] C)*)
  std::vector<std::size_t> forward;   ///< left index -> right index
  std::vector<std::size_t> backward;  ///< right index -> left index
};
StarAutonomy star_autonomy_bijection(const ContextPtr& a, const ContextPtr& b, const ContextPtr& c,
                                     const Limits& limits = Limits::global());
/// Regroup a bond of A [x] B -> C* into one of A -> (B [x] C)* and back.
BitMatrix curry_bond(const BitMatrix& bond, std::size_t na, std::size_t nb, std::size_t nc);
BitMatrix uncurry_bond(const BitMatrix& bond, std::size_t na, std::size_t nb, std::size_t nc);
/// Transport a morphism through the bijection.
ContextMorphism curry(const ContextMorphism& f, const ContextPtr& a, const ContextPtr& b, const ContextPtr& c);
ContextMorphism uncurry(const ContextMorphism& f, const ContextPtr& a, const ContextPtr& b, const ContextPtr& c);

/// dual(K1 (x) K2) == K1* (x) K2*, compared bit-exactly.
bool dual_of_concept_tensor(const ContextPtr& k1, const ContextPtr& k2);

/// Outcome of searching small contexts for B(K1* [x] K2*) not isomorphic to
/// B((K1 [x] K2)*).
struct CompactClosureSearch {
  bool found = false;
  ContextPtr k1, k2;
  std::size_t left_size = 0, right_size = 0;  ///< concept counts of the two sides
  std::size_t lattice_classes = 0;            ///< distinct B(K) up to isomorphism examined
  std::size_t pairs_checked = 0;
};
CompactClosureSearch search_compact_closure_counterexample(std::size_t max_objects = 3, std::size_t max_attributes = 3,
                                                           const Limits& limits = Limits::global());

}  // namespace cxtcat
