#include "common.hpp"
#include "cxtcat/disco.hpp"
#include "cxtcat/lawcheck.hpp"
#include "cxtcat/oracles.hpp"

using namespace cxtcat;

TEST_CASE("protogroup types") {
  CHECK(to_string(parse_type("n^r s n^l")) == "n^r s n^l");
  CHECK(parse_type("").empty());
  CHECK(contracts({"n", 0}, {"n", 1}));
  CHECK(contracts({"n", -1}, {"n", 0}));
  CHECK_FALSE(contracts({"n", 1}, {"n", 0}));
}

TEST_CASE("Alice likes Bob reduces with two contractions") {
  auto lex = builtin_lexicon();
  std::vector<ProtoType> types;
  for (const auto& w : split_sentence("Alice likes Bob")) types.push_back(lex.word(w).type);
  auto w = reduce(types, parse_type("s"));
  REQUIRE(w.has_value());
  CHECK(w->pairs.size() == 2);
  CHECK(replay(concatenate(types), *w) == parse_type("s"));
  CHECK_FALSE(reduce({lex.word("likes").type, lex.word("Bob").type}, parse_type("s")).has_value());
}

TEST_CASE("Alice likes Bob means yes") {
  auto lex = builtin_lexicon();
  const auto words = split_sentence("Alice likes Bob");
  auto res = interpret(lex, words, parse_type("s"));
  REQUIRE(res.meaning.has_value());
  const auto& s = *lex.types().at("s");
  CHECK(labels_of(s.objects(), res.meaning->extent.bits()) == std::vector<std::string>{"yes"});
  std::vector<Bitset> states;
  for (const auto& w : words) states.push_back(lex.word(w).state);
  CHECK(res.meaning->extent.bits() == oracle_interpretation(lex, words, res.witness, states));
  auto other = interpret(lex, split_sentence("Bob likes Alice"), parse_type("s"));
  CHECK(labels_of(s.objects(), other.meaning->extent.bits()) == std::vector<std::string>{"no"});
}

TEST_CASE("a single word keeps its state") {
  auto lex = builtin_lexicon();
  auto res = interpret(lex, {"Alice"}, parse_type("n"));
  CHECK(res.witness.pairs.empty());
  CHECK(res.relation == lex.word("Alice").state);
}

TEST_CASE("a bottom verb gives a bottom sentence") {
  auto lex = builtin_lexicon();
  const std::vector<std::string> words{"Alice", "likes", "Bob"};
  const auto f = lex.factors(lex.word("likes").type);
  std::vector<Bitset> states{lex.word("Alice").state, close_nary(f, Bitset(f.carrier())), lex.word("Bob").state};
  auto w = interpret(lex, words, parse_type("s")).witness;
  auto res = interpret_with(lex, words, parse_type("s"), w, states);
  const auto& s = *lex.types().at("s");
  CHECK(res.meaning->extent.bits() == s.close_objects(s.no_objects()));
}

TEST_CASE("lexicon file matches the built-in lexicon") {
  auto file = load_lexicon(data_path("lexicon.json"));
  auto built = builtin_lexicon();
  for (const auto& [w, e] : built.words()) {
    CHECK(file.word(w).type == e.type);
    CHECK(file.word(w).state == e.state);
  }
}

TEST_CASE("cups are morphisms and entailment is extent order") {
  auto lex = builtin_lexicon();
  auto n = lex.types().at("n");
  auto c = cup(n);
  CHECK(static_cast<bool>(is_bond(*c.source(), *c.target(), c.bond())));
  auto l = concept_lattice(animals_context());
  for (std::size_t i = 0; i < l->size(); ++i) {
    CHECK(entails(l->concept_at(i), l->concept_at(i)));
    CHECK(entails(l->concept_at(l->bottom()), l->concept_at(i)));
  }
}
