#include "common.hpp"
#include "cxtcat/lawcheck.hpp"
#include "cxtcat/oracles.hpp"
#include "cxtcat/suplat.hpp"

using namespace cxtcat;

TEST_CASE("sup maps between small lattices") {
  auto two = two_lattice();
  CHECK(enumerate_sup_maps(two, two).size() == 2);
  auto c3 = chain_lattice(3);
  // Monotone maps of a 2-chain into C3 fixing bottom: one choice for the top.
  CHECK(enumerate_sup_maps(two, c3).size() == 3);
  CHECK(enumerate_sup_maps(n5_lattice(), m3_lattice()).size() == oracle_sup_maps(n5_lattice(), m3_lattice()).size());
  CHECK(is_sup_map(zero_map(c3, two)));
}

TEST_CASE("M3 with X = {a}, Y = {b, c} is not mutually distributive") {
  auto m3 = m3_lattice();
  const auto atoms = m3->join_irreducibles();
  REQUIRE(atoms.size() == 3);
  // a meet (b join c) = a, but (a meet b) join (a meet c) = 0.
  auto md = is_mutually_distributive(*m3, {atoms[0]}, {atoms[1], atoms[2]});
  CHECK_FALSE(md.ok);
  // Singletons on both sides are vacuously fine.
  CHECK(is_mutually_distributive(*m3, {atoms[0]}, {atoms[1]}).ok);
}

TEST_CASE("universal map refuses images that are not mutually distributive") {
  auto m3 = m3_lattice();
  const auto& t = suplat_concept_tensor(m3, m3);
  auto id = identity_map(m3);
  CHECK_FALSE(is_mutually_distributive(*m3, image_of(id), image_of(id)).ok);
  CHECK_THROWS_AS(universal_map(t, id, id), PreconditionFailed);
}

TEST_CASE("injections into the tensor are mutually distributive") {
  for (const auto& v : fixture_lattices())
    for (const auto& w : fixture_lattices()) {
      if (v->size() * w->size() > 20) continue;
      const auto& t = suplat_concept_tensor(v, w);
      CHECK(is_mutually_distributive(*t.lattice, image_of(t.eps1), image_of(t.eps2)).ok);
    }
}

TEST_CASE("2 is the unit") {
  auto two = two_lattice();
  const auto& t = suplat_concept_tensor(two, two);
  CHECK(t.lattice->size() == 2);
  auto r = suplat_unitor_right(two);
  CHECK(is_isomorphism(*r.source, *r.target, r.table));
  for (const auto& v : fixture_lattices()) {
    auto rv = suplat_unitor_right(v);
    CHECK(is_isomorphism(*rv.source, *rv.target, rv.table));
  }
}

TEST_CASE("universal map of two chains") {
  auto c3 = chain_lattice(3);
  const auto& t = suplat_concept_tensor(c3, c3);
  auto id = identity_map(c3);
  auto h = universal_map(t, id, id);
  CHECK(universal_map_join_form(t, id, id).table == universal_map_meet_form(t, id, id).table);
  for (std::size_t x = 0; x < 3; ++x)
    for (std::size_t y = 0; y < 3; ++y) CHECK(h(t.owedge(x, y)) == c3->meet(x, y));
}

TEST_CASE("equivalence round trips") {
  for (const auto& v : fixture_lattices()) {
    auto u = unit_iso(v);
    CHECK(is_isomorphism(*u.source, *u.target, u.table));
  }
  auto k = animals_context();
  CHECK(compose(counit_iso_inverse(k), counit_iso(k)) == identity(k));
  auto s = states_iso(k);
  CHECK(s.hom.size() == 10);
}

TEST_CASE("phi is an isomorphism") {
  auto c2 = chain_context(2), s2 = context_from_set({"a", "b"});
  auto p = phi_iso(c2, s2);
  CHECK(is_isomorphism(*p.source, *p.target, p.table));
}
