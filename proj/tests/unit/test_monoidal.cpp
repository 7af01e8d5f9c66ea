#include "common.hpp"
#include "cxtcat/lawcheck.hpp"
#include "cxtcat/monoidal.hpp"
#include "cxtcat/suplat.hpp"

using namespace cxtcat;

TEST_CASE("tensors of the unit context") {
  auto i = trivial_context();
  auto c = concept_tensor(i, i);
  CHECK(c->num_objects() == 1);
  CHECK(c->num_attributes() == 1);
  CHECK_FALSE(c->incident(0, 0));
  auto l = lattice_tensor(i, i);
  CHECK(l->num_objects() == 1);
  CHECK(l->num_attributes() == 2);  // one attribute per morphism I -> I*
}

TEST_CASE("concept tensor of two 3-chains") {
  auto c3 = chain_context(3);
  // B(F(C3) (x) F(C3)) matches the sup-lattice tensor C3 (x) C3, six elements.
  CHECK(concept_lattice(concept_tensor(c3, c3))->size() == 6);
  CHECK(suplat_concept_tensor(chain_lattice(3), chain_lattice(3)).lattice->size() == 6);
}

TEST_CASE("unit laws hold up to explicit isomorphism") {
  for (auto kind : {TensorKind::Concept, TensorKind::Lattice}) {
    for (const auto& k : box_fixture_contexts()) {
      auto r = concept_functor_mor(unitor_right(kind, k));
      CHECK(is_isomorphism(*r.source, *r.target, r.table));
      auto l = concept_functor_mor(unitor_left(kind, k));
      CHECK(is_isomorphism(*l.source, *l.target, l.table));
    }
  }
  auto k = animals_context();
  auto r = concept_functor_mor(unitor_right(TensorKind::Concept, k));
  CHECK(r.source->size() == 10);
  CHECK(is_isomorphism(*r.source, *r.target, r.table));
}

TEST_CASE("symmetry is an involution on the animals") {
  auto k = animals_context(), c = chain_context(2);
  const auto kind = TensorKind::Concept;
  CHECK(compose(symmetry(kind, c, k), symmetry(kind, k, c)) == identity(concept_tensor(k, c)));
}

TEST_CASE("lattice tensor refuses large carriers") {
  auto big = context_from_set({"a", "b", "c", "d", "e"});
  CHECK_THROWS_AS(lattice_tensor(big, big), SizeCapExceeded);
}

TEST_CASE("star-autonomy counts on the unit") {
  auto i = trivial_context();
  auto s = star_autonomy_bijection(i, i, i);
  CHECK(s.left.size() == 2);
  CHECK(s.right.size() == 2);
}

TEST_CASE("the lattice tensor is not compact closed") {
  auto s = search_compact_closure_counterexample(3, 3);
  REQUIRE(s.found);
  auto lhs = concept_functor_obj(lattice_tensor(dual_context(*s.k1), dual_context(*s.k2)));
  auto rhs = concept_functor_obj(dual_context(*lattice_tensor(s.k1, s.k2)));
  CHECK(lhs->size() == s.left_size);
  CHECK(rhs->size() == s.right_size);
  CHECK_FALSE(find_isomorphism(*lhs, *rhs).has_value());
  // The first witness found: both factors have B(K) = M3.
  CHECK(concept_functor_obj(s.k1)->size() == 5);
  CHECK(lhs->size() == 50);
  CHECK(rhs->size() == 50);
  CHECK(lhs->join_irreducibles().size() != rhs->join_irreducibles().size());
}

TEST_CASE("discard sends exactly the nonzero concepts to the top") {
  auto k = animals_context();
  auto bd = concept_functor_mor(discard(k));
  for (std::size_t x = 0; x < bd.source->size(); ++x) CHECK((bd(x) == bd.target->top()) == (x != bd.source->bottom()));
  CHECK(discard(trivial_context()) == identity(trivial_context()));
}
