#include "common.hpp"
#include "cxtcat/lawcheck.hpp"
#include "cxtcat/mutation.hpp"

using namespace cxtcat;

TEST_CASE("seed 0 gives the frozen 2x2 context") {
  GenConfig cfg;
  cfg.max_objects = 2;
  cfg.max_attributes = 2;
  auto k = gen_context(cfg);
  REQUIRE(k->num_objects() == 2);
  REQUIRE(k->num_attributes() == 2);
  CHECK(k->incident(0, 0));
  CHECK_FALSE(k->incident(0, 1));
  CHECK(k->incident(1, 0));
  CHECK_FALSE(k->incident(1, 1));
  CHECK(*gen_context(cfg) == *k);
}

TEST_CASE("density extremes") {
  GenConfig cfg;
  cfg.density = 0;
  auto empty = gen_context(cfg);
  for (std::size_t g = 0; g < empty->num_objects(); ++g) CHECK(empty->object_intent(g).none());
  cfg.density = 1;
  auto full = gen_context(cfg);
  for (std::size_t g = 0; g < full->num_objects(); ++g) CHECK(full->object_intent(g).all());
}

TEST_CASE("config validation") {
  GenConfig cfg;
  cfg.density = 1.5;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg = GenConfig{};
  cfg.trials = 0;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg = GenConfig{};
  cfg.max_objects = 1000;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  CHECK_THROWS_AS(run_suite("no-such-suite", GenConfig{}), InvalidArgument);
}

TEST_CASE("generated morphisms and lattices are valid") {
  GenConfig cfg;
  cfg.seed = 7;
  Generator gen(cfg);
  for (int t = 0; t < 50; ++t) {
    auto k1 = gen.context(), k2 = gen.context();
    auto f = gen.morphism(k1, k2);
    CHECK(static_cast<bool>(is_bond(*k1, *k2, f.bond())));
    auto v = gen.lattice(), w = gen.lattice();
    CHECK(v->size() <= cfg.max_lattice);
    CHECK(is_sup_map(gen.supmap(v, w)));
  }
}

TEST_CASE("closure-system lattices") {
  const auto ls = closure_system_lattices(3, 6);
  CHECK(ls.size() >= 50);
  for (const auto& l : ls) CHECK(l->size() <= 6);
}

TEST_CASE("reports are deterministic") {
  GenConfig cfg;
  cfg.trials = 10;
  auto a = run_suite("disco", cfg), b = run_suite("disco", cfg);
  CHECK(a.ok());
  CHECK(a.to_json(false) == b.to_json(false));
  CHECK(a.to_table().find("reduction") != std::string::npos);
}

TEST_CASE("instances survive JSON") {
  Instance in;
  in.contexts = {animals_context(), chain_context(2)};
  in.morphisms = {enumerate_hom(in.contexts[0], in.contexts[1]).morphisms.at(1)};
  in.lattices = {m3_lattice()};
  in.maps = {identity_map(in.lattices[0])};
  in.sets = {Bitset::from_indices(3, {0, 2})};
  in.words = {"Alice", "likes", "Bob"};
  auto back = Instance::from_json(in.to_json());
  CHECK(back.to_json() == in.to_json());
  CHECK(back.morphisms.at(0) == in.morphisms.at(0));
}

TEST_CASE("a counterexample replays to failure") {
  GenConfig cfg;
  cfg.trials = 5;
  ScopedMutation m(Mutation::DiscardWrongRow);
  auto r = run_suite("disco", cfg);
  const auto* law = r.find("discarding");
  REQUIRE(law != nullptr);
  REQUIRE(law->failed > 0);
  REQUIRE(law->counterexample.has_value());
  CHECK(replay_counterexample(*law->counterexample).has_value());
}
