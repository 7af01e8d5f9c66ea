#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cxtcat/concept_lattice.hpp"
#include "cxtcat/lattice.hpp"
#include "cxtcat/morphism.hpp"

namespace cxtcat {

// ---------------------------------------------------------------------------
// The equivalence Cxt ~ SupLat.

/// B(K) as an abstract lattice; element i is concept i of concept_lattice(K).
LatticePtr concept_functor_obj(const ContextPtr& k);
/// B(R)(A, A') = close(R(A)).
SupMap concept_functor_mor(const ContextMorphism& r);

/// F(V) = (V, V, <=).
ContextPtr context_functor_obj(const LatticePtr& v);
/// F(f): extent rows v -> down-set of f(v), paired with intent rows w -> up-set of f*(w).
ContextMorphism context_functor_mor(const SupMap& f);
/// The Chu pair (f, f*) that F(f) is built from.
ChuPair context_functor_chu(const SupMap& f);

/// v -> (down v, up v) : V -> B(F(V)).
SupMap unit_iso(const LatticePtr& v);
/// (A, B) -> join A : B(F(V)) -> V.
SupMap unit_iso_inverse(const LatticePtr& v);
/// K -> F(B(K)), g -> down-set of the object concept of g.
ContextMorphism counit_iso(const ContextPtr& k);
/// F(B(K)) -> K, concept (A, B) -> A.
ContextMorphism counit_iso_inverse(const ContextPtr& k);

/// hom(I, K) <-> B(K): a state's bond row is an intent.
struct StateCorrespondence {
  HomSet hom;
  std::vector<ConceptLattice::Index> concept_of;  ///< morphism index -> concept index
};
StateCorrespondence states_iso(const ContextPtr& k, const Limits& limits = Limits::global());
/// hom(K, I) <-> B(K)*: an effect's bond column is an extent.
StateCorrespondence effects_iso(const ContextPtr& k, const Limits& limits = Limits::global());

// ---------------------------------------------------------------------------
// The lattice tensor on SupLat.

/// V -o W: all sup maps, ordered pointwise. Labels are tables "[f(0),f(1),..]".
LatticePtr hom_lattice(const LatticePtr& v, const LatticePtr& w, const Limits& limits = Limits::global());
/// V [x] W = (V -o W*)*.
LatticePtr suplat_lattice_tensor(const LatticePtr& v, const LatticePtr& w, const Limits& limits = Limits::global());
/// The sup map with the given table inside hom_lattice(v, w).
SupMap hom_element(const LatticePtr& hom, const LatticePtr& v, const LatticePtr& w, std::size_t index);

// ---------------------------------------------------------------------------
// The concept tensor V (x) W = B(F(V) x F(W)).

struct SupLatTensor {
  LatticePtr v, w;
  ContextPtr context;          ///< F(V) x F(W); objects and attributes are V x W row-major
  ConceptLatticePtr concepts;  ///< concepts of `context`
  LatticePtr lattice;          ///< the same concepts as an abstract lattice
  SupMap eps1, eps2;           ///< V -> V (x) W and W -> V (x) W

  /// x wedge y = eps1(x) meet eps2(y).
  FiniteLattice::Index owedge(std::size_t x, std::size_t y) const;
  /// x vee y = eps1(x) join eps2(y).
  FiniteLattice::Index ovee(std::size_t x, std::size_t y) const;
  /// The same element built directly: extent {(w,z) | (w<=x and z<=y) or w=0 or z=0}.
  FiniteLattice::Index owedge_explicit(std::size_t x, std::size_t y) const;
};

/// Memoised on the structure of V and W.
const SupLatTensor& suplat_concept_tensor(const LatticePtr& v, const LatticePtr& w);

struct DistributivityCheck {
  bool ok = true;
  /// Offending family (x_i, y_i) and which of the two equations failed (1 or 2).
  std::vector<std::pair<FiniteLattice::Index, FiniteLattice::Index>> family;
  int equation = 0;
};
/// Tests the two mutual-distributivity equations over every family of
/// (X x Y)-pairs with multiplicity <= 2 and size <= min(6, |X||Y| + 1).
DistributivityCheck is_mutually_distributive(const FiniteLattice& l, std::vector<FiniteLattice::Index> x,
                                             std::vector<FiniteLattice::Index> y);
/// Image of a map as a sorted list of distinct elements.
std::vector<FiniteLattice::Index> image_of(const SupMap& f);

/// h(A, B) = join over (x,y) in A of f(x) meet g(y).
SupMap universal_map_join_form(const SupLatTensor& t, const SupMap& f, const SupMap& g);
/// h(A, B) = meet over (w,z) in B of f(w) join g(z).
SupMap universal_map_meet_form(const SupLatTensor& t, const SupMap& f, const SupMap& g);
/// The unique sup map h with h(x wedge y) = f(x) meet g(y). Throws
/// PreconditionFailed (with the family) when the images are not mutually
/// distributive, and Error if the two forms disagree.
SupMap universal_map(const SupLatTensor& t, const SupMap& f, const SupMap& g, bool check_precondition = true);

/// f (x) g : V1 (x) V2 -> W1 (x) W2 with (f (x) g)(x wedge y) = f(x) wedge g(y).
SupMap tensor_of_maps(const SupMap& f, const SupMap& g);

// Coherence for (SupLat, (x), 2).
/// alpha : (U (x) V) (x) W -> U (x) (V (x) W).
SupMap suplat_associator(const LatticePtr& u, const LatticePtr& v, const LatticePtr& w);
/// sigma : V (x) W -> W (x) V.
SupMap suplat_symmetry(const LatticePtr& v, const LatticePtr& w);
/// rho : V (x) 2 -> V.
SupMap suplat_unitor_right(const LatticePtr& v);
/// lambda : 2 (x) V -> V.
SupMap suplat_unitor_left(const LatticePtr& v);
SupMap suplat_unitor_right_inverse(const LatticePtr& v);
SupMap suplat_unitor_left_inverse(const LatticePtr& v);
/// x -> 1 iff x != 0.
SupMap suplat_discard(const LatticePtr& v);

/// phi : B(K1) (x) B(K2) -> B(K1 (x) K2), C -> close(union of A1 x A2 over the pairs in C).
SupMap phi_iso(const ContextPtr& k1, const ContextPtr& k2);

/// (V (x) W)* -> V* (x) W*, (A, B) -> (B, A), with a flag saying whether it
/// is an isomorphism.
struct DualTensorIso {
  SupMap map;
  bool is_iso = false;
};
DualTensorIso dual_strong_monoidal_check(const LatticePtr& v, const LatticePtr& w);

}  // namespace cxtcat
