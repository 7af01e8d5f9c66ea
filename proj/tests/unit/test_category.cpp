#include "common.hpp"
#include "cxtcat/lawcheck.hpp"
#include "cxtcat/oracles.hpp"

using namespace cxtcat;

TEST_CASE("hom(I, I) has two morphisms") {
  auto i = trivial_context();
  auto hom = enumerate_hom(i, i);
  REQUIRE(hom.size() == 2);
  CHECK(count_hom(i, i) == 2);
  // The identity bond row is the object intent {*}', empty in I.
  CHECK_FALSE(identity(i).bond().at(0, 0));
  const auto leq = hom_order(hom);
  CHECK((leq.at(0, 1) || leq.at(1, 0)));
}

TEST_CASE("hom(S2, S2) counts join-preserving maps of the four-element boolean lattice") {
  // A sup map on 2^{a,b} is fixed by the images of the two atoms: 4 * 4.
  auto s2 = context_from_set({"a", "b"});
  CHECK(count_hom(s2, s2) == 16);
  CHECK(oracle_bonds(*s2, *s2).size() == 16);
}

TEST_CASE("invalid bonds are rejected with a witness") {
  auto chain = chain_context(3);
  std::size_t valid = 0;
  bool rejected = false;
  for (std::uint32_t mask = 0; mask < (1U << 9); ++mask) {
    BitMatrix b(3, 3);
    for (std::size_t c = 0; c < 9; ++c)
      if (mask >> c & 1U) b.set(c / 3, c % 3);
    auto check = is_bond(*chain, *chain, b);
    if (check) {
      ++valid;
    } else if (!rejected) {
      CHECK_FALSE(check.witness.describe().empty());
      CHECK_THROWS_AS(from_bond(chain, chain, b), Error);
      rejected = true;
    }
  }
  CHECK(rejected);
  CHECK(valid == count_hom(chain, chain));
}

TEST_CASE("composition checks the middle context") {
  auto a = context_from_set({"a"});
  auto b = context_from_set({"a", "b"});
  CHECK_THROWS_AS(compose(identity(a), identity(b)), DomainMismatch);
}

TEST_CASE("identities and associativity on the animals") {
  GenConfig cfg;
  Generator gen(cfg);
  auto k = animals_context();
  auto s3 = context_from_set({"a", "b", "c"});
  for (int t = 0; t < 20; ++t) {
    auto f = gen.morphism(k, s3), g = gen.morphism(s3, k), h = gen.morphism(k, k);
    CHECK(compose(f, identity(k)) == f);
    CHECK(compose(identity(s3), f) == f);
    CHECK(compose(h, compose(g, f)) == compose(compose(h, g), f));
  }
}

TEST_CASE("four representations agree") {
  auto k1 = chain_context(3), k2 = context_from_set({"a", "b"});
  for (const auto& f : enumerate_hom(k1, k2).morphisms) {
    CHECK(from_extent_relation(to_extent_relation(f)) == f);
    CHECK(from_intent_relation(to_intent_relation(f)) == f);
    CHECK(from_chu(to_chu(f)) == f);
    CHECK(chu_to_bond(bond_to_chu(to_bond(f))).matrix == f.bond());
  }
}

TEST_CASE("bond composition and compatible relations") {
  for (const auto& k1 : small_contexts(2, 2))
    for (const auto& k2 : small_contexts(2, 2)) {
      for (const auto& f : enumerate_hom(k1, k2).morphisms) {
        auto g = identity(k2);
        CHECK(bond_compose(to_bond(g), to_bond(f)).matrix == compose(g, f).bond());
        CHECK(static_cast<bool>(is_compatible_relation(*k1, *k2, f.bond())));
      }
    }
}

TEST_CASE("dualising morphisms") {
  auto k1 = animals_context(), k2 = chain_context(2);
  for (const auto& f : enumerate_hom(k1, k2).morphisms) {
    auto d = dual_morphism(f);
    CHECK(same_context(d.source(), dual_context(*k2)));
    CHECK(dual_morphism(d) == f);
  }
}
