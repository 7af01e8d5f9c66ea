#include <algorithm>
#include <set>

#include "common.hpp"
#include "cxtcat/lawcheck.hpp"
#include "cxtcat/oracles.hpp"

using namespace cxtcat;

TEST_CASE("animals has the ten expected concepts") {
  auto k = read_cxt(data_path("animals.cxt"));
  auto l = enumerate_concepts(k);
  REQUIRE(l->size() == 10);
  std::set<std::vector<std::string>> extents;
  for (std::size_t i = 0; i < l->size(); ++i) extents.insert(extent_labels(*l, i));
  const std::set<std::vector<std::string>> want{{},
                                                {"Cat"},
                                                {"Dog"},
                                                {"Kitten"},
                                                {"Puppy"},
                                                {"Cat", "Dog"},
                                                {"Cat", "Kitten"},
                                                {"Dog", "Puppy"},
                                                {"Kitten", "Puppy"},
                                                {"Cat", "Dog", "Kitten", "Puppy"}};
  CHECK(extents == want);
  const auto oracle = oracle_extents(*k);
  REQUIRE(oracle.size() == l->size());
  for (std::size_t i = 0; i < l->size(); ++i) CHECK(l->extent(i) == oracle[i]);
}

TEST_CASE("powerset contexts give boolean lattices") {
  const std::vector<std::string> letters{"a", "b", "c", "d"};
  for (std::size_t n = 0; n <= 4; ++n) {
    auto k = context_from_set({letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(n)});
    auto l = enumerate_concepts(k);
    CHECK(l->size() == (std::size_t{1} << n));
    for (std::size_t i = 0; i < l->size(); ++i)
      for (std::size_t j = 0; j < l->size(); ++j) CHECK(l->leq(i, j) == l->extent(i).is_subset_of(l->extent(j)));
  }
  CHECK(concept_lattice(read_cxt(data_path("s3.cxt")))->size() == 8);
  CHECK(concept_lattice(read_cxt(data_path("trivial.cxt")))->size() == 2);
}

TEST_CASE("derivation on animals") {
  auto k = animals_context();
  auto cat = object_set(*k, std::vector<std::string>{"Cat"});
  CHECK(labels_of(k->attributes(), derive_objects(*k, cat).bits()) == std::vector<std::string>{"Mature", "Feline"});
  auto feline = attribute_set(*k, std::vector<std::string>{"Feline"});
  CHECK(labels_of(k->objects(), derive_attributes(*k, feline).bits()) == std::vector<std::string>{"Cat", "Kitten"});
  CHECK(derive_attributes(*k, attribute_set(*k, k->no_attributes())).bits().all());
  CHECK(close_objects(*k, object_set(*k, k->no_objects())).bits().none());
}

TEST_CASE("sets from another context are rejected") {
  auto a = animals_context();
  auto s = context_from_set({"a", "b", "c"});
  CHECK_THROWS_AS(derive_objects(*a, object_set(*s, s->all_objects())), DomainMismatch);
}

TEST_CASE("empty contexts") {
  auto k = make_context("empty", {}, {}, BitMatrix(0, 0));
  CHECK(enumerate_concepts(k)->size() == 1);
  auto g = make_context("no attributes", {"x", "y"}, {}, BitMatrix(2, 0));
  CHECK(enumerate_concepts(g)->size() == 1);
}

TEST_CASE("dual swaps sides and is an involution") {
  auto k = animals_context();
  auto d = dual_context(*k);
  CHECK(d->objects() == k->attributes());
  CHECK(*dual_context(*d) == *k);
  CHECK(concept_lattice(d)->size() == 10);
}

TEST_CASE("cxt round trip is bit exact") {
  const auto text = read_file(data_path("animals.cxt"));
  auto k = parse_cxt(text);
  CHECK(serialize_cxt(*k) == text);
  CHECK(*context_from_json(context_to_json(*k)) == *k);
}

TEST_CASE("cxt parse errors carry a line") {
  CHECK_THROWS_AS(parse_cxt("X\nname\n1\n1\n\na\nm\nX\n"), ParseError);
  CHECK_THROWS_AS(parse_cxt("B\nname\n1\n1\n\na\nm\nQ\n"), ParseError);
  CHECK_THROWS_AS(parse_cxt("B\nname\n2\n1\n\na\nb\nm\nX\n"), ParseError);
  try {
    parse_cxt("B\nname\n1\n1\n\na\nm\nQ\n");
  } catch (const ParseError& e) {
    CHECK(e.line() == 8);
  }
}

TEST_CASE("lattice exports") {
  auto l = concept_lattice(animals_context());
  const auto j = concept_lattice_to_json(*l);
  CHECK(j.at("concepts").size() == 10);
  CHECK(concept_lattice_from_json(j, l->context())->size() == 10);
  const auto dot = concept_lattice_to_dot(*l);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(concept_lattice_to_table(*l).rfind("10 concepts\n", 0) == 0);
}

TEST_CASE("meets and joins of concepts") {
  auto l = concept_lattice(animals_context());
  const auto& k = *l->context();
  for (std::size_t i = 0; i < l->size(); ++i)
    for (std::size_t j = 0; j < l->size(); ++j) {
      CHECK(l->extent(l->meet(i, j)) == (l->extent(i) & l->extent(j)));
      CHECK(l->extent(l->join(i, j)) == k.close_objects(l->extent(i) | l->extent(j)));
    }
}
