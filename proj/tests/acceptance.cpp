// One line per acceptance criterion with its runtime bound. Exit status is
// the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>

#include "cxtcat/disco.hpp"
#include "cxtcat/lawcheck.hpp"
#include "cxtcat/monoidal.hpp"
#include "cxtcat/mutation.hpp"
#include "cxtcat/oracles.hpp"
#include "cxtcat/suplat.hpp"

using namespace cxtcat;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      note = what;
    }
  }
};

/// Every listed law ran at least once and never failed.
void require_laws(Outcome& o, const LawReport& r, std::initializer_list<const char*> laws) {
  for (const char* law : laws) {
    const auto* res = r.find(law);
    o.require(res != nullptr && res->passed > 0 && res->failed == 0, r.suite + "/" + law);
  }
  o.require(r.ok(), r.suite + " has failures");
}

Outcome powerset() {
  Outcome o;
  const std::vector<std::string> letters{"a", "b", "c", "d"};
  for (std::size_t n = 0; n <= 4; ++n) {
    auto l = enumerate_concepts(context_from_set({letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(n)}));
    o.require(l->size() == (std::size_t{1} << n), "count at n=" + std::to_string(n));
    for (std::size_t i = 0; i < l->size(); ++i)
      for (std::size_t j = 0; j < l->size(); ++j)
        o.require(l->leq(i, j) == l->extent(i).is_subset_of(l->extent(j)), "order at n=" + std::to_string(n));
  }
  o.note = "|A| = 0..4";
  return o;
}

Outcome animals() {
  Outcome o;
  auto k = animals_context();
  auto l = enumerate_concepts(k);
  o.require(l->size() == 10, "concept count " + std::to_string(l->size()));
  std::set<std::vector<std::string>> got;
  for (std::size_t i = 0; i < l->size(); ++i) got.insert(labels_of(k->objects(), l->extent(i)));
  const std::set<std::vector<std::string>> want{{}, {"Cat"}, {"Dog"}, {"Kitten"}, {"Puppy"}, {"Cat", "Dog"},
                                                {"Cat", "Kitten"}, {"Dog", "Puppy"}, {"Kitten", "Puppy"},
                                                {"Cat", "Dog", "Kitten", "Puppy"}};
  o.require(got == want, "extent family");
  const auto oracle = oracle_extents(*k);
  o.require(oracle.size() == l->size(), "oracle size");
  for (std::size_t i = 0; i < oracle.size() && i < l->size(); ++i) o.require(oracle[i] == l->extent(i), "oracle order");
  if (o.ok) o.note = "10 concepts, NextClosure = subset oracle";
  return o;
}

Outcome category_laws() {
  GenConfig cfg;
  cfg.seed = 42;
  cfg.trials = 1000;
  auto r = run_suite("category", cfg);
  Outcome o;
  require_laws(o, r, {"associativity", "identity", "representation-counts", "representation-round-trip",
                      "hom-matches-oracle", "composite-closed"});
  if (o.ok) o.note = std::to_string(r.find("associativity")->passed) + " associativity checks";
  return o;
}

Outcome bonds_moshier() {
  Outcome o;
  const auto pool = small_contexts(2, 2);
  std::size_t compositions = 0, matrices = 0;
  for (const auto& k1 : pool)
    for (const auto& k2 : pool) {
      const auto h12 = enumerate_hom(k1, k2);
      for (const auto& k3 : pool)
        for (const auto& g : enumerate_hom(k2, k3).morphisms)
          for (const auto& f : h12.morphisms) {
            o.require(bond_compose(to_bond(g), to_bond(f)).matrix == compose(g, f).bond(), "bond_compose");
            ++compositions;
          }
      const auto cells = k1->num_objects() * k2->num_attributes();
      for (std::uint32_t mask = 0; mask < (1U << cells); ++mask) {
        BitMatrix b(k1->num_objects(), k2->num_attributes());
        for (std::size_t c = 0; c < cells; ++c)
          if (mask >> c & 1U) b.set(c / k2->num_attributes(), c % k2->num_attributes());
        o.require(static_cast<bool>(is_compatible_relation(*k1, *k2, b)) == static_cast<bool>(is_bond(*k1, *k2, b)),
                  "compatibility vs bond");
        ++matrices;
      }
    }
  if (o.ok) o.note = std::to_string(compositions) + " compositions, " + std::to_string(matrices) + " matrices";
  return o;
}

Outcome equivalence() {
  Outcome o;
  const auto pool = fixture_contexts();
  o.require(pool.size() >= 6, "fixture pool");
  for (const auto& a : pool)
    for (const auto& b : pool)
      o.require(count_hom(a, b) == enumerate_sup_maps(concept_functor_obj(a), concept_functor_obj(b)).size(),
                "hom count " + a->name() + " -> " + b->name());
  const auto lattices = closure_system_lattices(3, 6);
  o.require(lattices.size() >= 50, "closure-system lattices");
  for (const auto& v : lattices) {
    auto u = unit_iso(v);
    o.require(is_isomorphism(*u.source, *u.target, u.table), "V -> B(F(V))");
  }
  if (o.ok)
    o.note = std::to_string(pool.size() * pool.size()) + " hom pairs, " + std::to_string(lattices.size()) + " lattices";
  return o;
}

Outcome smc() {
  Outcome o;
  GenConfig cfg;
  for (const char* s : {"monoidal-concept", "monoidal-lattice"})
    require_laws(o, run_suite(s, cfg), {"pentagon", "triangle", "hexagon", "symmetry-involution", "natural-associator",
                                        "natural-symmetry", "natural-unitors"});
  require_laws(o, run_suite("suplat", cfg),
               {"pentagon", "triangle", "hexagon", "symmetry-involution", "natural-associator", "natural-symmetry"});
  if (o.ok) o.note = "concept, lattice and sup-lattice tensors";
  return o;
}

Outcome unit_laws() {
  Outcome o;
  for (const auto& k : fixture_contexts()) {
    for (auto kind : {TensorKind::Concept, TensorKind::Lattice}) {
      if (kind == TensorKind::Lattice && (k->num_objects() > 3 || k->num_attributes() > 3)) continue;
      auto r = concept_functor_mor(unitor_right(kind, k));
      o.require(is_isomorphism(*r.source, *r.target, r.table),
                std::string("B(K x I) for ") + k->name() + " " + tensor_kind_name(kind));
    }
  }
  for (const auto& v : fixture_lattices()) {
    auto r = suplat_unitor_right(v);
    o.require(is_isomorphism(*r.source, *r.target, r.table), "V (x) 2 for " + v->name());
  }
  auto two = two_lattice();
  auto r = suplat_unitor_right(two);
  o.require(r.source->size() == 2 && is_isomorphism(*r.source, *r.target, r.table), "2 (x) 2");
  if (o.ok) o.note = "isomorphisms built from the unitors";
  return o;
}

Outcome universal() {
  Outcome o;
  GenConfig cfg;
  cfg.seed = 8;
  Generator gen(cfg);
  std::vector<LatticePtr> pool;
  for (const auto& l : fixture_lattices())
    if (l->size() <= 4) pool.push_back(l);
  pool.push_back(boolean_lattice(2));
  std::size_t md = 0, refused = 0, tries = 0;
  while (md < 20 && tries++ < 2000) {
    const auto &v = pool[gen.uniform(0, pool.size() - 1)], &w = pool[gen.uniform(0, pool.size() - 1)];
    const auto& u = pool[gen.uniform(0, pool.size() - 1)];
    const auto f = gen.supmap(v, u), g = gen.supmap(w, u);
    const auto& t = suplat_concept_tensor(v, w);
    if (!is_mutually_distributive(*u, image_of(f), image_of(g)).ok) {
      try {
        universal_map(t, f, g);
        o.require(false, "accepted a non-distributive pair");
      } catch (const PreconditionFailed&) {
        ++refused;
      }
      continue;
    }
    ++md;
    const auto h = universal_map(t, f, g);
    o.require(universal_map_join_form(t, f, g).table == universal_map_meet_form(t, f, g).table, "join vs meet form");
    auto solves = [&](const SupMap& k) {
      for (std::size_t x = 0; x < v->size(); ++x)
        for (std::size_t y = 0; y < w->size(); ++y)
          if (k(t.owedge(x, y)) != u->meet(f(x), g(y))) return false;
      return true;
    };
    o.require(solves(h), "h(x wedge y) = f(x) meet g(y)");
    std::size_t solutions = 0;
    for (const auto& k : enumerate_sup_maps(t.lattice, u))
      if (solves(k)) {
        ++solutions;
        o.require(k.table == h.table, "another solution");
      }
    o.require(solutions == 1, "uniqueness");
  }
  o.require(md >= 20, "fewer than 20 distributive pairs");
  for (const auto& v : fixture_lattices())
    for (const auto& w : fixture_lattices()) {
      if (v->size() > 5 || w->size() > 5) continue;
      const auto& t = suplat_concept_tensor(v, w);
      o.require(is_mutually_distributive(*t.lattice, image_of(t.eps1), image_of(t.eps2)).ok, "epsilon images");
    }
  if (o.ok) o.note = std::to_string(md) + " distributive pairs, " + std::to_string(refused) + " refused";
  return o;
}

Outcome phi() {
  Outcome o;
  GenConfig cfg;
  cfg.trials = 100;
  auto r = run_suite("equivalence", cfg);
  const auto* law = r.find("phi-natural");
  o.require(law != nullptr && law->passed == 100 && law->failed == 0, "phi naturality");
  if (o.ok) o.note = "100 seeded pairs";
  return o;
}

Outcome star_autonomy() {
  Outcome o;
  const std::vector<ContextPtr> ks{trivial_context(), context_from_set({"a", "b"}, "S2"), chain_context(2)};
  for (const auto& a : ks)
    for (const auto& b : ks)
      for (const auto& c : ks) {
        auto s = star_autonomy_bijection(a, b, c);
        o.require(s.left.size() == s.right.size() && s.left.size() == count_hom(a, dual_context(*lattice_tensor(b, c))),
                  "hom counts");
      }
  GenConfig cfg;
  cfg.seed = 10;
  Generator gen(cfg);
  for (int t = 0; t < 50; ++t) {
    const auto &a2 = ks[gen.uniform(0, 2)], &a = ks[gen.uniform(0, 2)];
    const auto &b = ks[gen.uniform(0, 2)], &c = ks[gen.uniform(0, 2)];
    auto f = gen.morphism(a2, a);
    auto g = gen.morphism(lattice_tensor(a, b), dual_context(*c));
    auto lhs = curry(compose(g, tensor_morphism(TensorKind::Lattice, f, identity(b))), a2, b, c);
    o.require(lhs == compose(curry(g, a, b, c), f), "naturality");
  }
  auto s = search_compact_closure_counterexample(3, 3);
  if (s.found) {
    auto lhs = concept_functor_obj(lattice_tensor(dual_context(*s.k1), dual_context(*s.k2)));
    auto rhs = concept_functor_obj(dual_context(*lattice_tensor(s.k1, s.k2)));
    o.require(!find_isomorphism(*lhs, *rhs), "witness is isomorphic");
    if (o.ok)
      o.note = "witness " + s.k1->name() + ", " + s.k2->name() + ": " + std::to_string(lhs->size()) + " vs " +
               std::to_string(rhs->size()) + " concepts, not isomorphic";
  } else if (o.ok) {
    o.note = "search exhausted after " + std::to_string(s.pairs_checked) + " pairs";
  }
  return o;
}

Outcome disco() {
  Outcome o;
  auto lex = builtin_lexicon();
  const auto words = split_sentence("Alice likes Bob");
  auto res = interpret(lex, words, parse_type("s"));
  o.require(res.witness.pairs.size() == 2, "contractions");
  std::vector<Bitset> states;
  for (const auto& w : words) states.push_back(lex.word(w).state);
  o.require(res.meaning && res.meaning->extent.bits() == oracle_interpretation(lex, words, res.witness, states),
            "oracle");
  GenConfig cfg;
  require_laws(o, run_suite("disco", cfg), {"discarding", "monotonicity", "interpretation-oracle", "reduction"});
  if (o.ok)
    o.note = "meaning " + res.meaning->extent.bits().to_string() + " over {yes, no}, 2 contractions";
  return o;
}

Outcome mutations() {
  Outcome o;
  GenConfig cfg;
  cfg.trials = 20;
  const std::vector<std::string> order{"disco", "context-core", "equivalence", "monoidal-concept", "category",
                                       "monoidal-lattice", "suplat"};
  std::string caught;
  for (auto m : {Mutation::ComposeWithoutClosure, Mutation::TensorIncidenceConjunction, Mutation::UnitorWithoutClosure,
                 Mutation::TensorMorphismWithoutClosure, Mutation::DiscardWrongRow}) {
    ScopedMutation scoped(m);
    bool detected = false;
    for (const auto& s : order) {
      auto r = run_suite(s, cfg);
      if (r.ok()) continue;
      for (const auto& law : r.laws)
        if (law.failed && law.counterexample) {
          o.require(replay_counterexample(*law.counterexample).has_value(),
                    std::string(mutation_name(m)) + " counterexample does not replay");
          caught += (caught.empty() ? "" : ", ") + std::string(mutation_name(m)) + " by " + s + "/" + law.name;
          detected = true;
          break;
        }
      break;
    }
    o.require(detected, std::string(mutation_name(m)) + " not detected");
  }
  if (o.ok) o.note = caught;
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double bound;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"powerset law", 1, powerset},
      {"animals fixture", 1, animals},
      {"category laws", 30, category_laws},
      {"bonds and compatible relations", 30, bonds_moshier},
      {"equivalence with sup-lattices", 60, equivalence},
      {"symmetric monoidal suites", 120, smc},
      {"unit laws", 10, unit_laws},
      {"universal property", 60, universal},
      {"phi naturality", 60, phi},
      {"star-autonomy", 120, star_autonomy},
      {"disco", 10, disco},
      {"mutation sensitivity", 120, mutations},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.note = std::string("exception: ") + e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = o.ok && s < c.bound;
    if (o.ok && !pass) o.note += " (over time)";
    failed += pass ? 0 : 1;
    std::printf("%s %2zu %-32s %8.3f s < %4.0f s  %s\n", pass ? "PASS" : "FAIL", i + 1, c.name, s, c.bound,
                o.note.c_str());
    std::fflush(stdout);
  }
  return failed;
}
