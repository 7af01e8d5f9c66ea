#include <algorithm>
#include <random>
#include <set>

#include "cxtcat/io.hpp"
#include "cxtcat/lawcheck.hpp"
#include "cxtcat/monoidal.hpp"
#include "cxtcat/oracles.hpp"
#include "cxtcat/suplat.hpp"
#include "law_runner.hpp"

namespace cxtcat::detail {

namespace {

using nlohmann::json;
constexpr auto kConcept = TensorKind::Concept;
constexpr auto kLattice = TensorKind::Lattice;

Outcome fail(std::string s) { return s; }

/// Subsets of an n-set: all of them when n <= cap, otherwise 64 seeded samples.
std::vector<Bitset> subsets_of(std::size_t n, std::size_t cap, std::uint64_t seed) {
  std::vector<Bitset> out;
  if (n <= cap) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      Bitset b(n);
      for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1U) b.set(i);
      out.push_back(std::move(b));
    }
    return out;
  }
  std::mt19937_64 rng(seed);
  for (int t = 0; t < 64; ++t) {
    Bitset b(n);
    for (std::size_t i = 0; i < n; ++i)
      if (rng() & 1U) b.set(i);
    out.push_back(std::move(b));
  }
  return out;
}

/// Every matrix of the given shape; refuses more than 2^16 of them.
std::vector<BitMatrix> all_matrices(std::size_t rows, std::size_t cols) {
  if (rows * cols > 16) throw SizeCapExceeded("more than 2^16 candidate relations");
  std::vector<BitMatrix> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (rows * cols)); ++mask) {
    BitMatrix m(rows, cols);
    for (std::size_t c = 0; c < rows * cols; ++c)
      if (mask >> c & 1U) m.set(c / cols, c % cols);
    out.push_back(std::move(m));
  }
  return out;
}

Bitset product(const Bitset& a, const Bitset& b) {
  Bitset p(a.size() * b.size());
  a.for_each([&](std::size_t i) { b.for_each([&](std::size_t j) { p.set(i * b.size() + j); }); });
  return p;
}

std::string set_text(const Bitset& s) { return s.to_string(); }

/// Representation consistency of a single morphism.
Outcome defect(const ContextMorphism& f) {
  const auto& k1 = *f.source();
  const auto& k2 = *f.target();
  if (auto c = is_bond(k1, k2, f.bond()); !c) return fail("bond invalid: " + c.witness.describe());
  const auto& ext = f.extent_relation();
  for (std::size_t g = 0; g < k1.num_objects(); ++g)
    if (!(ext.row(g) == k2.extent_of(f.bond().row(g))))
      return fail("extent relation row " + std::to_string(g) + " is " + set_text(ext.row(g)) + ", not B(g)'");
  const auto& in = f.intent_relation();
  for (std::size_t m = 0; m < k2.num_attributes(); ++m)
    if (!(in.row(m) == k1.intent_of(f.bond().column(m))))
      return fail("intent relation row " + std::to_string(m) + " is not the derived column");
  return std::nullopt;
}

Outcome same(const ContextMorphism& a, const ContextMorphism& b, const std::string& what) {
  if (auto d = defect(a)) return fail(what + ": left side " + *d);
  if (auto d = defect(b)) return fail(what + ": right side " + *d);
  if (!same_context(a.source(), b.source()) || !same_context(a.target(), b.target()))
    return fail(what + ": endpoints differ");
  if (!(a.bond() == b.bond())) return fail(what + ": bonds " + bond_label(a.bond()) + " vs " + bond_label(b.bond()));
  return std::nullopt;
}

std::string table_text(const std::vector<FiniteLattice::Index>& t) {
  std::string s = "[";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s + "]";
}

Outcome same(const SupMap& a, const SupMap& b, const std::string& what) {
  if (!same_lattice(a.source, b.source) || !same_lattice(a.target, b.target)) return fail(what + ": endpoints differ");
  if (a.table != b.table) return fail(what + ": " + table_text(a.table) + " vs " + table_text(b.table));
  return std::nullopt;
}

Outcome first_of(std::initializer_list<Outcome> outcomes) {
  for (const auto& o : outcomes)
    if (o) return o;
  return std::nullopt;
}

const LatticePtr& tl(const LatticePtr& v, const LatticePtr& w) { return suplat_concept_tensor(v, w).lattice; }

// ---------------------------------------------------------------------------
// context-core

Outcome law_galois(const Instance& in) {
  const auto& k = *in.contexts.at(0);
  const auto as = subsets_of(k.num_objects(), 4, k.fingerprint());
  const auto bs = subsets_of(k.num_attributes(), 4, k.fingerprint() + 1);
  for (const auto& a : as) {
    const auto oa = object_set(k, a);
    const auto ad = derive_objects(k, oa);
    for (const auto& b : bs) {
      const auto ab = attribute_set(k, b);
      const bool lhs = oa.is_subset_of(derive_attributes(k, ab));
      const bool rhs = ab.is_subset_of(ad);
      if (lhs != rhs) return fail("A=" + set_text(a) + " B=" + set_text(b));
    }
  }
  return std::nullopt;
}

Outcome law_closure(const Instance& in) {
  const auto& k = *in.contexts.at(0);
  auto check = [](const std::vector<Bitset>& sets, auto close, const char* side) -> Outcome {
    for (const auto& a : sets) {
      const auto ca = close(a);
      if (!a.is_subset_of(ca)) return fail(std::string(side) + ": not extensive at " + set_text(a));
      if (!(close(ca) == ca)) return fail(std::string(side) + ": not idempotent at " + set_text(a));
      for (const auto& c : sets) {
        const auto cu = close(a | c);
        if (!ca.is_subset_of(cu)) return fail(std::string(side) + ": not monotone at " + set_text(a));
        if (!(cu == close(ca | close(c))))
          return fail(std::string(side) + ": union law fails at " + set_text(a) + ", " + set_text(c));
      }
    }
    return std::nullopt;
  };
  return first_of(
      {check(subsets_of(k.num_objects(), 5, k.fingerprint()),
             [&](const Bitset& a) { return close_objects(k, object_set(k, a)).bits(); }, "objects"),
       check(subsets_of(k.num_attributes(), 5, k.fingerprint() + 7),
             [&](const Bitset& b) { return close_attributes(k, attribute_set(k, b)).bits(); }, "attributes")});
}

Outcome law_concepts_oracle(const Instance& in) {
  const auto& k = in.contexts.at(0);
  auto l = enumerate_concepts(k);
  const auto oracle = oracle_extents(*k);
  if (l->size() != oracle.size())
    return fail(std::to_string(l->size()) + " concepts, oracle has " + std::to_string(oracle.size()));
  for (std::size_t i = 0; i < l->size(); ++i) {
    if (!(l->extent(i) == oracle[i])) return fail("extent " + std::to_string(i) + " differs from the oracle");
    if (!(l->intent(i) == k->intent_of(l->extent(i)))) return fail("intent " + std::to_string(i) + " is not A'");
  }
  return std::nullopt;
}

Outcome law_lattice_operations(const Instance& in) {
  auto l = concept_lattice(in.contexts.at(0));
  const auto& k = *l->context();
  for (std::size_t i = 0; i < l->size(); ++i)
    for (std::size_t j = 0; j < l->size(); ++j) {
      if (l->leq(i, j) != l->extent(i).is_subset_of(l->extent(j))) return fail("leq is not extent inclusion");
      if (!(l->extent(l->meet(i, j)) == (l->extent(i) & l->extent(j)))) return fail("meet is not intersection");
      if (!(l->extent(l->join(i, j)) == k.close_objects(l->extent(i) | l->extent(j))))
        return fail("join is not the closed union");
    }
  if (!(l->extent(l->bottom()) == k.close_objects(k.no_objects())) || !l->extent(l->top()).all())
    return fail("bottom or top misplaced");
  return std::nullopt;
}

Outcome law_anti_isomorphism(const Instance& in) {
  const auto& k = in.contexts.at(0);
  auto l = concept_lattice(k);
  auto d = concept_lattice(dual_context(*k));
  if (l->size() != d->size()) return fail("B(K) and B(K*) differ in size");
  std::vector<std::size_t> to(l->size());
  std::set<std::size_t> hit;
  for (std::size_t i = 0; i < l->size(); ++i) {
    auto j = d->find_extent(l->intent(i));
    if (!j || !(d->intent(*j) == l->extent(i))) return fail("(B, A) is not a concept of K*");
    to[i] = *j;
    hit.insert(*j);
  }
  if (hit.size() != l->size()) return fail("not a bijection");
  for (std::size_t i = 0; i < l->size(); ++i)
    for (std::size_t j = 0; j < l->size(); ++j)
      if (l->leq(i, j) != d->leq(to[j], to[i])) return fail("order is not reversed");
  return std::nullopt;
}

Outcome law_round_trip(const Instance& in) {
  const auto& k = in.contexts.at(0);
  const auto text = serialize_cxt(*k);
  auto back = parse_cxt(text);
  if (!(*back == *k) || back->name() != k->name() || serialize_cxt(*back) != text) return fail(".cxt round trip");
  auto j = context_to_json(*k);
  auto kj = context_from_json(json::parse(j.dump()));
  if (!(*kj == *k) || context_to_json(*kj) != j) return fail("JSON round trip");
  auto l = concept_lattice(k);
  auto lj = concept_lattice_to_json(*l);
  auto l2 = concept_lattice_from_json(json::parse(lj.dump()), k);
  if (l2->size() != l->size() || concept_lattice_to_json(*l2) != lj) return fail("lattice JSON round trip");
  return std::nullopt;
}

Outcome law_powerset(const Instance& in) {
  const auto& k = in.contexts.at(0);
  const auto n = k->num_objects();
  auto l = enumerate_concepts(k);
  if (l->size() != (std::size_t{1} << n))
    return fail(std::to_string(l->size()) + " concepts for a " + std::to_string(n) + "-element set");
  for (std::size_t i = 0; i < l->size(); ++i)
    for (std::size_t j = 0; j < l->size(); ++j)
      if (l->leq(i, j) != l->extent(i).is_subset_of(l->extent(j))) return fail("order is not subset order");
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// category

Outcome law_hom_oracle(const Instance& in) {
  const auto &k1 = in.contexts.at(0), &k2 = in.contexts.at(1);
  auto hom = enumerate_hom(k1, k2);
  auto oracle = oracle_bonds(*k1, *k2);
  if (hom.size() != oracle.size())
    return fail(std::to_string(hom.size()) + " morphisms, oracle has " + std::to_string(oracle.size()));
  for (std::size_t i = 0; i < hom.size(); ++i)
    if (!(hom.morphisms[i].bond() == oracle[i])) return fail("bond " + std::to_string(i) + " differs from the oracle");
  if (count_hom(k1, k2) != hom.size()) return fail("count_hom disagrees with enumerate_hom");
  return std::nullopt;
}

Outcome law_representation_counts(const Instance& in) {
  const auto &k1 = in.contexts.at(0), &k2 = in.contexts.at(1);
  const auto hom = count_hom(k1, k2);
  std::vector<BitMatrix> extent_rels, intent_rels;
  for (auto& r : all_matrices(k1->num_objects(), k2->num_objects())) {
    const bool a = static_cast<bool>(is_closed_relation(*k1, *k2, r));
    const bool b = static_cast<bool>(is_closed_relation_via_closure(*k1, *k2, r));
    if (a != b) return fail("the two closedness criteria disagree on " + bond_label(r));
    if (a) extent_rels.push_back(std::move(r));
  }
  auto d1 = dual_context(*k1), d2 = dual_context(*k2);
  for (auto& s : all_matrices(k2->num_attributes(), k1->num_attributes()))
    if (is_closed_relation(*d2, *d1, s)) intent_rels.push_back(std::move(s));
  std::size_t chu = 0;
  for (const auto& r : extent_rels)
    for (const auto& s : intent_rels)
      if (is_chu_pair(*k1, *k2, r, s)) ++chu;
  std::size_t bonds = 0;
  for (const auto& b : all_matrices(k1->num_objects(), k2->num_attributes()))
    if (is_bond(*k1, *k2, b)) ++bonds;
  if (extent_rels.size() != hom || intent_rels.size() != hom || chu != hom || bonds != hom)
    return fail("counts: hom " + std::to_string(hom) + ", extent " + std::to_string(extent_rels.size()) + ", intent " +
                std::to_string(intent_rels.size()) + ", chu " + std::to_string(chu) + ", bonds " +
                std::to_string(bonds));
  return std::nullopt;
}

Outcome law_representation_round_trip(const Instance& in) {
  const auto& f = in.morphisms.at(0);
  const auto er = to_extent_relation(f);
  const auto ir = to_intent_relation(f);
  const auto chu = to_chu(f);
  const auto b = to_bond(f);
  if (!(extent_to_intent(er).rows == ir.rows)) return fail("extent -> intent disagrees");
  if (!(intent_to_extent(ir).rows == er.rows)) return fail("intent -> extent disagrees");
  if (!(extent_to_bond(er).matrix == b.matrix)) return fail("extent -> bond disagrees");
  if (!(bond_to_extent(b).rows == er.rows)) return fail("bond -> extent disagrees");
  if (!(chu_to_bond(bond_to_chu(b)).matrix == b.matrix)) return fail("bond -> chu -> bond disagrees");
  if (auto c = is_chu_pair(*f.source(), *f.target(), chu.extent.rows, chu.intent.rows); !c)
    return fail("not a Chu pair: " + c.witness.describe());
  return first_of({same(from_extent_relation(er), f, "from extent relation"),
                   same(from_intent_relation(ir), f, "from intent relation"), same(from_chu(chu), f, "from Chu pair"),
                   same(from_bond(b), f, "from bond")});
}

Outcome law_identity(const Instance& in) {
  const auto& f = in.morphisms.at(0);
  const auto i1 = identity(f.source()), i2 = identity(f.target());
  return first_of({defect(i1), same(compose(f, i1), f, "f o id"), same(compose(i2, f), f, "id o f")});
}

Outcome law_composite_closed(const Instance& in) {
  const auto &f = in.morphisms.at(0), &g = in.morphisms.at(1);
  if (auto d = defect(compose(g, f))) return fail("g o f: " + *d);
  return std::nullopt;
}

Outcome law_bond_compose(const Instance& in) {
  const auto &f = in.morphisms.at(0), &g = in.morphisms.at(1);
  const auto gf = compose(g, f);
  if (!(bond_compose(to_bond(g), to_bond(f)).matrix == gf.bond()))
    return fail("bond composition differs from relation composition");
  if (!(compatible_compose(*f.target(), g.bond(), f.bond()) == gf.bond()))
    return fail("compatible-relation composition differs");
  return std::nullopt;
}

Outcome law_associativity(const Instance& in) {
  const auto &f = in.morphisms.at(0), &g = in.morphisms.at(1), &h = in.morphisms.at(2);
  return same(compose(h, compose(g, f)), compose(compose(h, g), f), "h o (g o f) vs (h o g) o f");
}

Outcome law_moshier(const Instance& in) {
  const auto &k1 = *in.contexts.at(0), &k2 = *in.contexts.at(1);
  for (const auto& b : all_matrices(k1.num_objects(), k2.num_attributes()))
    if (static_cast<bool>(is_compatible_relation(k1, k2, b)) != static_cast<bool>(is_bond(k1, k2, b)))
      return fail("compatibility and bond invariants disagree on " + bond_label(b));
  return std::nullopt;
}

Outcome law_duality(const Instance& in) {
  const auto &f = in.morphisms.at(0), &g = in.morphisms.at(1);
  const auto df = dual_morphism(f), dg = dual_morphism(g);
  return first_of({defect(df), same(dual_morphism(df), f, "f** vs f"),
                   same(dual_morphism(compose(g, f)), compose(df, dg), "(g o f)* vs f* o g*"),
                   same(dual_morphism(identity(f.source())), identity(dual_context(*f.source())), "id* vs id")});
}

Outcome law_dual_hom_bijection(const Instance& in) {
  const auto &k1 = in.contexts.at(0), &k2 = in.contexts.at(1);
  auto hom = enumerate_hom(k1, k2);
  auto back = enumerate_hom(dual_context(*k2), dual_context(*k1));
  if (hom.size() != back.size()) return fail("hom(K1,K2) and hom(K2*,K1*) differ in size");
  std::set<std::size_t> hit;
  for (const auto& f : hom.morphisms) {
    auto j = back.find(dual_morphism(f).bond());
    if (!j) return fail("a dual morphism is missing from hom(K2*,K1*)");
    hit.insert(*j);
  }
  if (hit.size() != hom.size()) return fail("dualising is not injective");
  return std::nullopt;
}

Outcome law_hom_lattice(const Instance& in) {
  auto hom = enumerate_hom(in.contexts.at(0), in.contexts.at(1));
  const auto leq = hom_order(hom);
  std::vector<std::string> labels;
  for (const auto& f : hom.morphisms) labels.push_back(bond_label(f.bond()));
  for (std::size_t i = 0; i < hom.size(); ++i)
    for (std::size_t j = 0; j < hom.size(); ++j)
      if (leq.at(i, j) != hom.morphisms[i].extent_relation().is_subset_of(hom.morphisms[j].extent_relation()))
        return fail("hom order is not extent-relation inclusion");
  make_lattice("hom", labels, leq);  // throws when some meet or join is missing
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// monoidal (both kinds)

Outcome law_tens_help_1(const Instance& in) {
  const auto &k1 = in.contexts.at(0), &k2 = in.contexts.at(1);
  auto t = concept_tensor(k1, k2);
  const std::size_t bits = k1->num_objects() + k2->num_objects() + k1->num_attributes() + k2->num_attributes();
  if (bits > 10) throw SizeCapExceeded("subset quadruples above 2^10");
  const PairIndex g{k1->num_objects(), k2->num_objects()}, m{k1->num_attributes(), k2->num_attributes()};
  const auto as = subsets_of(g.n1, 8, 0), bs = subsets_of(g.n2, 8, 0);
  const auto cs = subsets_of(m.n1, 8, 0), ds = subsets_of(m.n2, 8, 0);
  auto all_related = [](const Bitset& x, const Bitset& y, auto rel) {
    bool ok = true;
    x.for_each([&](std::size_t i) { y.for_each([&](std::size_t j) { ok = ok && rel(i, j); }); });
    return ok;
  };
  for (const auto& a : as)
    for (const auto& b : bs)
      for (const auto& c : cs)
        for (const auto& d : ds) {
          const bool lhs = all_related(product(a, b), product(c, d),
                                       [&](std::size_t x, std::size_t y) { return t->incident(x, y); });
          const bool rhs = all_related(a, c, [&](std::size_t x, std::size_t y) { return k1->incident(x, y); }) ||
                           all_related(b, d, [&](std::size_t x, std::size_t y) { return k2->incident(x, y); });
          if (lhs != rhs)
            return fail("A=" + set_text(a) + " B=" + set_text(b) + " C=" + set_text(c) + " D=" + set_text(d));
        }
  return std::nullopt;
}

Outcome law_tens_help_2(TensorKind kind, const Instance& in, bool literal) {
  const auto &k1 = in.contexts.at(0), &k2 = in.contexts.at(1);
  auto t = tensor(kind, k1, k2);
  const Bitset floor = t->extent_of(t->all_attributes());
  for (const auto& a : subsets_of(k1->num_objects(), 6, 1))
    for (const auto& b : subsets_of(k2->num_objects(), 6, 2)) {
      const auto lhs = t->close_objects(product(a, b));
      const auto ca = k1->close_objects(a), cb = k2->close_objects(b);
      if (!(lhs == t->close_objects(product(ca, cb))))
        return fail("close(AxB) != close(A''xB'') at A=" + set_text(a) + " B=" + set_text(b));
      if (literal && !(lhs == (product(ca, cb) | floor)))
        return fail("close(AxB) != A''xB'' u (MxM)' at A=" + set_text(a) + " B=" + set_text(b));
    }
  return std::nullopt;
}

// Layout shared by the binary laws: contexts k1 k2 k3 k4, f: k1 -> k3, g: k2 -> k4.
Outcome law_tens_help_3(TensorKind kind, const Instance& in) {
  const auto &f = in.morphisms.at(0), &g = in.morphisms.at(1);
  const auto fg = tensor_morphism(kind, f, g);
  const auto& tgt = *fg.target();
  const auto& rel = fg.extent_relation();
  for (const auto& a : subsets_of(f.source()->num_objects(), 5, 3))
    for (const auto& b : subsets_of(g.source()->num_objects(), 5, 4)) {
      const auto lhs = tgt.close_objects(r_image(rel, product(a, b)));
      const auto rhs = tgt.close_objects(product(r_image(f.extent_relation(), a), r_image(g.extent_relation(), b)));
      if (!(lhs == rhs)) return fail("A=" + set_text(a) + " B=" + set_text(b));
    }
  return std::nullopt;
}

Outcome law_tensor_morphism_closed(TensorKind kind, const Instance& in) {
  if (auto d = defect(tensor_morphism(kind, in.morphisms.at(0), in.morphisms.at(1)))) return fail("f (x) g: " + *d);
  return std::nullopt;
}

// contexts k1..k6, f1: k1 -> k3, f2: k2 -> k4, g1: k3 -> k5, g2: k4 -> k6.
Outcome law_bifunctor(TensorKind kind, const Instance& in) {
  const auto &f1 = in.morphisms.at(0), &f2 = in.morphisms.at(1), &g1 = in.morphisms.at(2), &g2 = in.morphisms.at(3);
  return first_of({same(tensor_morphism(kind, compose(g1, f1), compose(g2, f2)),
                        compose(tensor_morphism(kind, g1, g2), tensor_morphism(kind, f1, f2)), "interchange"),
                   same(tensor_morphism(kind, identity(f1.source()), identity(f2.source())),
                        identity(tensor(kind, f1.source(), f2.source())), "id (x) id")});
}

Outcome law_chu_intent_side(const Instance& in) {
  const auto &f = in.morphisms.at(0), &g = in.morphisms.at(1);
  const auto fg = tensor_morphism(kConcept, f, g);
  const auto s = concept_tensor_intent_side(f, g);
  if (auto c = is_chu_pair(*fg.source(), *fg.target(), fg.extent_relation(), s); !c)
    return fail("extent and intent sides are not a Chu pair: " + c.witness.describe());
  if (!(s == fg.intent_relation())) return fail("intent side differs from the intent relation");
  return std::nullopt;
}

Outcome law_structure_closed(TensorKind kind, const Instance& in) {
  const auto &a = in.contexts.at(0), &b = in.contexts.at(1), &c = in.contexts.at(2);
  const std::pair<const char*, ContextMorphism> maps[] = {
      {"alpha", associator(kind, a, b, c)},        {"alpha^-1", associator_inverse(kind, a, b, c)},
      {"sigma", symmetry(kind, a, b)},             {"rho", unitor_right(kind, a)},
      {"rho^-1", unitor_right_inverse(kind, a)},   {"lambda", unitor_left(kind, a)},
      {"lambda^-1", unitor_left_inverse(kind, a)}, {"discard", discard(a)}};
  for (const auto& [name, f] : maps)
    if (auto d = defect(f)) return fail(std::string(name) + ": " + *d);
  return std::nullopt;
}

Outcome law_associator_inverse(TensorKind kind, const Instance& in) {
  const auto &a = in.contexts.at(0), &b = in.contexts.at(1), &c = in.contexts.at(2);
  const auto al = associator(kind, a, b, c), inv = associator_inverse(kind, a, b, c);
  return first_of({same(compose(inv, al), identity(al.source()), "alpha^-1 o alpha"),
                   same(compose(al, inv), identity(al.target()), "alpha o alpha^-1")});
}

Outcome law_unitors(TensorKind kind, const Instance& in) {
  const auto& k = in.contexts.at(0);
  const auto r = unitor_right(kind, k), ri = unitor_right_inverse(kind, k);
  const auto l = unitor_left(kind, k), li = unitor_left_inverse(kind, k);
  if (auto o = first_of({same(compose(ri, r), identity(r.source()), "rho^-1 o rho"),
                         same(compose(r, ri), identity(k), "rho o rho^-1"),
                         same(compose(li, l), identity(l.source()), "lambda^-1 o lambda"),
                         same(compose(l, li), identity(k), "lambda o lambda^-1")}))
    return o;
  // The explicit isomorphism B(K (x) I) -> B(K).
  const auto br = concept_functor_mor(r);
  if (!is_isomorphism(*br.source, *br.target, br.table)) return fail("B(rho) is not a lattice isomorphism");
  return std::nullopt;
}

Outcome law_pentagon(TensorKind kind, const Instance& in) {
  const auto &a = in.contexts.at(0), &b = in.contexts.at(1), &c = in.contexts.at(2), &d = in.contexts.at(3);
  auto t = [&](const ContextPtr& x, const ContextPtr& y) { return tensor(kind, x, y); };
  auto tm = [&](const ContextMorphism& x, const ContextMorphism& y) { return tensor_morphism(kind, x, y); };
  const auto lhs = compose(associator(kind, t(a, b), c, d), associator(kind, a, b, t(c, d)));
  const auto rhs = compose(tm(associator(kind, a, b, c), identity(d)),
                           compose(associator(kind, a, t(b, c), d), tm(identity(a), associator(kind, b, c, d))));
  return same(lhs, rhs, "pentagon");
}

Outcome law_triangle(TensorKind kind, const Instance& in) {
  const auto &a = in.contexts.at(0), &b = in.contexts.at(1);
  const auto lhs = compose(tensor_morphism(kind, unitor_right(kind, a), identity(b)),
                           associator(kind, a, trivial_context(), b));
  const auto rhs = tensor_morphism(kind, identity(a), unitor_left(kind, b));
  return same(lhs, rhs, "triangle");
}

Outcome law_hexagon(TensorKind kind, const Instance& in) {
  const auto &a = in.contexts.at(0), &b = in.contexts.at(1), &c = in.contexts.at(2);
  auto t = [&](const ContextPtr& x, const ContextPtr& y) { return tensor(kind, x, y); };
  const auto lhs =
      compose(associator(kind, c, a, b), compose(symmetry(kind, t(a, b), c), associator(kind, a, b, c)));
  const auto rhs = compose(tensor_morphism(kind, symmetry(kind, a, c), identity(b)),
                           compose(associator(kind, a, c, b), tensor_morphism(kind, identity(a), symmetry(kind, b, c))));
  return same(lhs, rhs, "hexagon");
}

Outcome law_symmetry_involution(TensorKind kind, const Instance& in) {
  const auto &a = in.contexts.at(0), &b = in.contexts.at(1);
  return same(compose(symmetry(kind, b, a), symmetry(kind, a, b)), identity(tensor(kind, a, b)), "sigma o sigma");
}

// contexts k1..k6, f1: k1 -> k4, f2: k2 -> k5, f3: k3 -> k6.
Outcome law_natural_associator(TensorKind kind, const Instance& in) {
  const auto &f1 = in.morphisms.at(0), &f2 = in.morphisms.at(1), &f3 = in.morphisms.at(2);
  auto tm = [&](const ContextMorphism& x, const ContextMorphism& y) { return tensor_morphism(kind, x, y); };
  const auto lhs = compose(associator(kind, f1.target(), f2.target(), f3.target()), tm(f1, tm(f2, f3)));
  const auto rhs = compose(tm(tm(f1, f2), f3), associator(kind, f1.source(), f2.source(), f3.source()));
  return same(lhs, rhs, "alpha naturality");
}

Outcome law_natural_symmetry(TensorKind kind, const Instance& in) {
  const auto &f = in.morphisms.at(0), &g = in.morphisms.at(1);
  const auto lhs = compose(symmetry(kind, f.target(), g.target()), tensor_morphism(kind, f, g));
  const auto rhs = compose(tensor_morphism(kind, g, f), symmetry(kind, f.source(), g.source()));
  return same(lhs, rhs, "sigma naturality");
}

Outcome law_natural_unitors(TensorKind kind, const Instance& in) {
  const auto& f = in.morphisms.at(0);
  const auto id = identity(trivial_context());
  return first_of({same(compose(f, unitor_right(kind, f.source())),
                        compose(unitor_right(kind, f.target()), tensor_morphism(kind, f, id)), "rho naturality"),
                   same(compose(f, unitor_left(kind, f.source())),
                        compose(unitor_left(kind, f.target()), tensor_morphism(kind, id, f)), "lambda naturality")});
}

Outcome law_discarding(TensorKind kind, const Instance& in) {
  const auto &a = in.contexts.at(0), &b = in.contexts.at(1);
  const auto i = trivial_context();
  if (auto o = same(discard(i), identity(i), "discard_I vs id_I")) return o;
  if (auto o = same(discard(tensor(kind, a, b)),
                    compose(unitor_right(kind, i), tensor_morphism(kind, discard(a), discard(b))),
                    "discard of a tensor"))
    return o;
  const auto bd = concept_functor_mor(discard(a));
  for (std::size_t x = 0; x < bd.source->size(); ++x)
    if ((bd(x) == bd.target->bottom()) != (x == bd.source->bottom()))
      return fail("B(discard) sends a nonzero concept to 0 or 0 elsewhere");
  return std::nullopt;
}

Outcome law_dual_tensor(const Instance& in) {
  if (!dual_of_concept_tensor(in.contexts.at(0), in.contexts.at(1))) return fail("(K1 x K2)* != K1* x K2*");
  return std::nullopt;
}

Outcome law_star_autonomy(const Instance& in) {
  const auto &a = in.contexts.at(0), &b = in.contexts.at(1), &c = in.contexts.at(2);
  const auto s = star_autonomy_bijection(a, b, c);
  if (s.left.size() != s.right.size())
    return fail(std::to_string(s.left.size()) + " vs " + std::to_string(s.right.size()) + " morphisms");
  for (std::size_t i = 0; i < s.left.size(); ++i) {
    if (s.forward[i] >= s.right.size() || s.backward[s.forward[i]] != i) return fail("not a bijection");
    if (auto o = same(curry(s.left.morphisms[i], a, b, c), s.right.morphisms[s.forward[i]], "curry"))
      return o;
  }
  return std::nullopt;
}

// contexts a2 a b c (a [x] b) c*, f: a2 -> a, g: a [x] b -> c*.
Outcome law_star_autonomy_natural(const Instance& in) {
  const auto &a = in.contexts.at(1), &b = in.contexts.at(2), &c = in.contexts.at(3);
  const auto &f = in.morphisms.at(0), &g = in.morphisms.at(1);
  const auto lhs = curry(compose(g, tensor_morphism(kLattice, f, identity(b))), f.source(), b, c);
  const auto rhs = compose(curry(g, a, b, c), f);
  return same(lhs, rhs, "curry naturality");
}

Outcome law_not_compact_closed(const Instance&) {
  const auto s = search_compact_closure_counterexample(3, 3);
  if (!s.found) return fail("no witness within 3x3 contexts");
  auto lhs = concept_functor_obj(lattice_tensor(dual_context(*s.k1), dual_context(*s.k2)));
  auto rhs = concept_functor_obj(dual_context(*lattice_tensor(s.k1, s.k2)));
  if (find_isomorphism(*lhs, *rhs)) return fail("reported witness is isomorphic after all");
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// suplat

Outcome law_sup_maps_oracle(const Instance& in) {
  const auto &v = in.lattices.at(0), &w = in.lattices.at(1);
  const auto maps = enumerate_sup_maps(v, w);
  const auto oracle = oracle_sup_maps(v, w);
  if (maps.size() != oracle.size())
    return fail(std::to_string(maps.size()) + " sup maps, oracle has " + std::to_string(oracle.size()));
  for (std::size_t i = 0; i < maps.size(); ++i)
    if (maps[i].table != oracle[i].table) return fail("map " + std::to_string(i) + " differs from the oracle");
  return std::nullopt;
}

Outcome law_epsilon(const Instance& in) {
  const auto& t = suplat_concept_tensor(in.lattices.at(0), in.lattices.at(1));
  if (!is_sup_map(t.eps1) || !is_sup_map(t.eps2)) return fail("an injection does not preserve joins");
  auto md = is_mutually_distributive(*t.lattice, image_of(t.eps1), image_of(t.eps2));
  if (!md.ok) return fail("images are not mutually distributive (equation " + std::to_string(md.equation) + ")");
  return std::nullopt;
}

Outcome law_wedge(const Instance& in) {
  const auto& t = suplat_concept_tensor(in.lattices.at(0), in.lattices.at(1));
  const auto nw = t.w->size();
  for (std::size_t x = 0; x < t.v->size(); ++x)
    for (std::size_t y = 0; y < nw; ++y)
      if (t.owedge(x, y) != t.owedge_explicit(x, y)) return fail("x wedge y differs from its explicit form");
  for (std::size_t c = 0; c < t.lattice->size(); ++c) {
    std::vector<FiniteLattice::Index> parts;
    t.concepts->extent(c).for_each([&](std::size_t p) {
      parts.push_back(t.owedge(p / nw, p % nw));
    });
    if (t.lattice->join_of(parts) != c) return fail("concept " + std::to_string(c) + " is not the join of its wedges");
  }
  return std::nullopt;
}

Outcome law_generators(const Instance& in) {
  const auto& t = suplat_concept_tensor(in.lattices.at(0), in.lattices.at(1));
  const auto& l = *t.lattice;
  std::vector<bool> have(l.size(), false);
  std::vector<FiniteLattice::Index> members;
  for (auto x : image_of(t.eps1))
    if (!have[x]) have[x] = true, members.push_back(x);
  for (auto x : image_of(t.eps2))
    if (!have[x]) have[x] = true, members.push_back(x);
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      for (auto z : {l.meet(members[i], members[j]), l.join(members[i], members[j])})
        if (!have[z]) have[z] = true, members.push_back(z);
  for (auto z : {l.bottom(), l.top()})
    if (!have[z]) have[z] = true, members.push_back(z);
  if (members.size() != l.size())
    return fail("generated " + std::to_string(members.size()) + " of " + std::to_string(l.size()) + " elements");
  return std::nullopt;
}

// lattices v w u, maps f: v -> u, g: w -> u.
Outcome law_universal(const Instance& in) {
  const auto &f = in.maps.at(0), &g = in.maps.at(1);
  const auto& t = suplat_concept_tensor(f.source, g.source);
  const auto& u = *f.target;
  const auto md = is_mutually_distributive(u, image_of(f), image_of(g));
  if (!md.ok) {
    try {
      universal_map(t, f, g);
    } catch (const PreconditionFailed&) {
      return std::nullopt;
    }
    return fail("universal_map accepted images that are not mutually distributive");
  }
  const auto h = universal_map(t, f, g);
  if (!is_sup_map(h)) return fail("h does not preserve joins");
  if (auto o = same(universal_map_join_form(t, f, g), universal_map_meet_form(t, f, g), "join form vs meet form"))
    return o;
  for (std::size_t x = 0; x < t.v->size(); ++x)
    for (std::size_t y = 0; y < t.w->size(); ++y)
      if (h(t.owedge(x, y)) != u.meet(f(x), g(y))) return fail("h(x wedge y) != f(x) meet g(y)");
  return std::nullopt;
}

Outcome law_universal_unique(const Instance& in) {
  const auto &f = in.maps.at(0), &g = in.maps.at(1);
  if (f.source->size() > 4 || g.source->size() > 4 || f.target->size() > 4)
    throw SizeCapExceeded("uniqueness search runs on lattices of at most 4 elements");
  const auto& t = suplat_concept_tensor(f.source, g.source);
  const auto& u = *f.target;
  if (!is_mutually_distributive(u, image_of(f), image_of(g)).ok) return std::nullopt;
  std::size_t matches = 0;
  for (const auto& h : enumerate_sup_maps(t.lattice, f.target)) {
    bool ok = true;
    for (std::size_t x = 0; x < t.v->size() && ok; ++x)
      for (std::size_t y = 0; y < t.w->size() && ok; ++y) ok = h(t.owedge(x, y)) == u.meet(f(x), g(y));
    if (!ok) continue;
    ++matches;
    if (auto o = same(h, universal_map(t, f, g), "exhaustive solution vs universal_map")) return o;
  }
  if (matches != 1) return fail(std::to_string(matches) + " sup maps satisfy the universal equation");
  return std::nullopt;
}

Outcome law_suplat_symmetry(const Instance& in) {
  const auto &v = in.lattices.at(0), &w = in.lattices.at(1);
  return same(compose(suplat_symmetry(w, v), suplat_symmetry(v, w)), identity_map(tl(v, w)), "sigma o sigma");
}

Outcome law_suplat_unitors(const Instance& in) {
  const auto& v = in.lattices.at(0);
  const auto r = suplat_unitor_right(v), ri = suplat_unitor_right_inverse(v);
  const auto l = suplat_unitor_left(v), li = suplat_unitor_left_inverse(v);
  if (!is_isomorphism(*r.source, *r.target, r.table)) return fail("rho is not an isomorphism");
  if (!is_isomorphism(*l.source, *l.target, l.table)) return fail("lambda is not an isomorphism");
  return first_of({same(compose(ri, r), identity_map(r.source), "rho^-1 o rho"),
                   same(compose(r, ri), identity_map(v), "rho o rho^-1"),
                   same(compose(li, l), identity_map(l.source), "lambda^-1 o lambda"),
                   same(compose(l, li), identity_map(v), "lambda o lambda^-1")});
}

Outcome law_suplat_triangle(const Instance& in) {
  const auto &v = in.lattices.at(0), &w = in.lattices.at(1);
  const auto two = two_lattice();
  const auto lhs = compose(tensor_of_maps(identity_map(v), suplat_unitor_left(w)), suplat_associator(v, two, w));
  const auto rhs = tensor_of_maps(suplat_unitor_right(v), identity_map(w));
  return same(lhs, rhs, "triangle");
}

Outcome law_suplat_pentagon(const Instance& in) {
  const auto &a = in.lattices.at(0), &b = in.lattices.at(1), &c = in.lattices.at(2), &d = in.lattices.at(3);
  const auto lhs = compose(suplat_associator(a, b, tl(c, d)), suplat_associator(tl(a, b), c, d));
  const auto rhs = compose(tensor_of_maps(identity_map(a), suplat_associator(b, c, d)),
                           compose(suplat_associator(a, tl(b, c), d),
                                   tensor_of_maps(suplat_associator(a, b, c), identity_map(d))));
  return same(lhs, rhs, "pentagon");
}

Outcome law_suplat_hexagon(const Instance& in) {
  const auto &a = in.lattices.at(0), &b = in.lattices.at(1), &c = in.lattices.at(2);
  const auto lhs =
      compose(suplat_associator(b, c, a), compose(suplat_symmetry(a, tl(b, c)), suplat_associator(a, b, c)));
  const auto rhs = compose(tensor_of_maps(identity_map(b), suplat_symmetry(a, c)),
                           compose(suplat_associator(b, a, c), tensor_of_maps(suplat_symmetry(a, b), identity_map(c))));
  return same(lhs, rhs, "hexagon");
}

// lattices v1 v2 w1 w2, f: v1 -> w1, g: v2 -> w2.
Outcome law_suplat_natural_symmetry(const Instance& in) {
  const auto &f = in.maps.at(0), &g = in.maps.at(1);
  const auto lhs = compose(suplat_symmetry(f.target, g.target), tensor_of_maps(f, g));
  const auto rhs = compose(tensor_of_maps(g, f), suplat_symmetry(f.source, g.source));
  return same(lhs, rhs, "sigma naturality");
}

// lattices v1 v2 v3 w1 w2 w3, f_i: v_i -> w_i.
Outcome law_suplat_natural_associator(const Instance& in) {
  const auto &f1 = in.maps.at(0), &f2 = in.maps.at(1), &f3 = in.maps.at(2);
  const auto lhs =
      compose(suplat_associator(f1.target, f2.target, f3.target), tensor_of_maps(tensor_of_maps(f1, f2), f3));
  const auto rhs =
      compose(tensor_of_maps(f1, tensor_of_maps(f2, f3)), suplat_associator(f1.source, f2.source, f3.source));
  return same(lhs, rhs, "alpha naturality");
}

// lattices v1 v2 w1 w2 u1 u2, f_i: v_i -> w_i, g_i: w_i -> u_i.
Outcome law_suplat_bifunctor(const Instance& in) {
  const auto &f1 = in.maps.at(0), &f2 = in.maps.at(1), &g1 = in.maps.at(2), &g2 = in.maps.at(3);
  return first_of({same(tensor_of_maps(compose(g1, f1), compose(g2, f2)),
                        compose(tensor_of_maps(g1, g2), tensor_of_maps(f1, f2)), "interchange"),
                   same(tensor_of_maps(identity_map(f1.source), identity_map(f2.source)),
                        identity_map(tl(f1.source, f2.source)), "id (x) id")});
}

Outcome law_suplat_dual(const Instance& in) {
  const auto d = dual_strong_monoidal_check(in.lattices.at(0), in.lattices.at(1));
  if (!d.is_iso) return fail("(V (x) W)* -> V* (x) W* is not an isomorphism");
  if (!is_isomorphism(*d.map.source, *d.map.target, d.map.table)) return fail("the map is not order-preserving both ways");
  return std::nullopt;
}

Outcome law_suplat_discard(const Instance& in) {
  const auto &v = in.lattices.at(0), &w = in.lattices.at(1);
  const auto dv = suplat_discard(v);
  if (!is_sup_map(dv)) return fail("discard does not preserve joins");
  const auto two = two_lattice();
  const auto lhs = suplat_discard(tl(v, w));
  const auto rhs = compose(suplat_unitor_right(two), tensor_of_maps(dv, suplat_discard(w)));
  return same(lhs, rhs, "discard of a tensor");
}

// ---------------------------------------------------------------------------
// equivalence

Outcome law_hom_count(const Instance& in) {
  const auto &k1 = in.contexts.at(0), &k2 = in.contexts.at(1);
  const auto hom = enumerate_hom(k1, k2);
  const auto maps = enumerate_sup_maps(concept_functor_obj(k1), concept_functor_obj(k2));
  if (hom.size() != maps.size())
    return fail(std::to_string(hom.size()) + " morphisms vs " + std::to_string(maps.size()) + " sup maps");
  std::set<std::vector<FiniteLattice::Index>> tables;
  for (const auto& f : hom.morphisms) {
    const auto bf = concept_functor_mor(f);
    if (!is_sup_map(bf)) return fail("B(f) does not preserve joins");
    tables.insert(bf.table);
  }
  if (tables.size() != hom.size()) return fail("B is not faithful");
  return std::nullopt;
}

Outcome law_functor(const Instance& in) {
  const auto &f = in.morphisms.at(0), &g = in.morphisms.at(1);
  return first_of(
      {same(concept_functor_mor(compose(g, f)), compose(concept_functor_mor(g), concept_functor_mor(f)), "B(g o f)"),
       same(concept_functor_mor(identity(f.source())), identity_map(concept_functor_obj(f.source())), "B(id)")});
}

Outcome law_unit_iso(const Instance& in) {
  const auto& v = in.lattices.at(0);
  const auto u = unit_iso(v), ui = unit_iso_inverse(v);
  if (!is_isomorphism(*u.source, *u.target, u.table)) return fail("V -> B(F(V)) is not an isomorphism");
  return first_of(
      {same(compose(ui, u), identity_map(v), "unit^-1 o unit"), same(compose(u, ui), identity_map(u.target), "unit o unit^-1")});
}

Outcome law_counit_iso(const Instance& in) {
  const auto& k = in.contexts.at(0);
  const auto c = counit_iso(k), ci = counit_iso_inverse(k);
  return first_of({same(compose(ci, c), identity(k), "counit^-1 o counit"),
                   same(compose(c, ci), identity(c.target()), "counit o counit^-1")});
}

// lattices v w, map f: v -> w.
Outcome law_context_functor(const Instance& in) {
  const auto& f = in.maps.at(0);
  const auto ff = context_functor_mor(f);
  if (auto d = defect(ff)) return fail("F(f): " + *d);
  const auto chu = context_functor_chu(f);
  if (auto c = is_chu_pair(*ff.source(), *ff.target(), chu.extent.rows, chu.intent.rows); !c)
    return fail("(f, f*) is not a Chu pair: " + c.witness.describe());
  const auto lhs = compose(concept_functor_mor(ff), unit_iso(f.source));
  const auto rhs = compose(unit_iso(f.target), f);
  return same(lhs, rhs, "unit naturality");
}

Outcome law_states(const Instance& in) {
  const auto& k = in.contexts.at(0);
  auto l = concept_lattice(k);
  const auto s = states_iso(k);
  if (s.hom.size() != l->size()) return fail("|hom(I, K)| != |B(K)|");
  std::set<std::size_t> hit(s.concept_of.begin(), s.concept_of.end());
  if (hit.size() != l->size()) return fail("states do not biject with concepts");
  for (std::size_t i = 0; i < s.hom.size(); ++i)
    if (!(s.hom.morphisms[i].bond().row(0) == l->intent(s.concept_of[i]))) return fail("state bond is not the intent");
  const auto e = effects_iso(k);
  if (e.hom.size() != l->size()) return fail("|hom(K, I)| != |B(K)|");
  std::set<std::size_t> ehit(e.concept_of.begin(), e.concept_of.end());
  if (ehit.size() != l->size()) return fail("effects do not biject with concepts");
  for (std::size_t i = 0; i < e.hom.size(); ++i)
    if (!(e.hom.morphisms[i].bond().column(0) == l->extent(e.concept_of[i])))
      return fail("effect bond column is not the extent");
  return std::nullopt;
}

// contexts k1 k2 k3 k4, f: k1 -> k3, g: k2 -> k4.
Outcome law_phi(const Instance& in) {
  const auto &f = in.morphisms.at(0), &g = in.morphisms.at(1);
  const auto p12 = phi_iso(f.source(), g.source());
  const auto p34 = phi_iso(f.target(), g.target());
  if (!is_isomorphism(*p12.source, *p12.target, p12.table)) return fail("phi is not an isomorphism");
  const auto lhs = compose(concept_functor_mor(tensor_morphism(kConcept, f, g)), p12);
  const auto rhs = compose(p34, tensor_of_maps(concept_functor_mor(f), concept_functor_mor(g)));
  return same(lhs, rhs, "phi naturality");
}

Outcome law_lattice_tensor_agrees(const Instance& in) {
  const auto &k1 = in.contexts.at(0), &k2 = in.contexts.at(1);
  const auto lhs = suplat_lattice_tensor(concept_functor_obj(k1), concept_functor_obj(k2));
  const auto rhs = concept_functor_obj(lattice_tensor(k1, k2));
  if (!find_isomorphism(*lhs, *rhs))
    return fail("B(K1) [x] B(K2) has " + std::to_string(lhs->size()) + " elements, B(K1 [x] K2) has " +
                std::to_string(rhs->size()) + ", not isomorphic");
  return std::nullopt;
}

Outcome law_discard_preserved(const Instance& in) {
  const auto& k = in.contexts.at(0);
  const auto bd = concept_functor_mor(discard(k));
  const auto sd = suplat_discard(concept_functor_obj(k));
  for (std::size_t x = 0; x < bd.source->size(); ++x)
    if ((bd(x) == bd.target->top()) != (sd(x) == sd.target->top())) return fail("B(discard) differs from [x != 0]");
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// disco

const Lexicon& lexicon() {
  static const Lexicon lex = builtin_lexicon();
  return lex;
}

std::vector<ProtoType> types_of(const std::vector<std::string>& sentence) {
  std::vector<ProtoType> types;
  for (const auto& w : sentence) types.push_back(lexicon().word(w).type);
  return types;
}

Outcome law_reduction(const Instance& in) {
  const auto types = types_of(in.words);
  const auto target = parse_type("s");
  const auto all = concatenate(types);
  const auto ws = all_reductions(types, target);
  if (ws.empty()) return fail("sentence does not reduce to s");
  for (const auto& w : ws) {
    if (replay(all, w) != target) return fail("witness replays to " + to_string(replay(all, w)));
    if (w.steps.size() * 2 + target.size() != all.size()) return fail("wrong number of contractions");
  }
  auto first = reduce(types, target);
  if (!first || replay(all, *first) != target) return fail("reduce() disagrees with all_reductions()");
  return std::nullopt;
}

std::vector<Bitset> states_or_lexicon(const Instance& in, std::size_t offset) {
  std::vector<Bitset> states;
  for (std::size_t i = 0; i < in.words.size(); ++i)
    states.push_back(in.sets.size() >= offset + in.words.size() ? in.sets[offset + i] : lexicon().word(in.words[i]).state);
  return states;
}

Outcome law_interpretation_oracle(const Instance& in) {
  const auto target = parse_type("s");
  const auto states = states_or_lexicon(in, 0);
  for (const auto& w : all_reductions(types_of(in.words), target)) {
    const auto got = interpret_with(lexicon(), in.words, target, w, states);
    const auto want = oracle_interpretation(lexicon(), in.words, w, states);
    if (!got.meaning || !(got.meaning->extent.bits() == want))
      return fail("relation side gives " + set_text(got.relation) + ", lattice side " + set_text(want));
  }
  return std::nullopt;
}

// sets: states A for every word, then states B.
Outcome law_monotonicity(const Instance& in) {
  const auto target = parse_type("s");
  const auto a = states_or_lexicon(in, 0), b = states_or_lexicon(in, in.words.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_subset_of(b[i])) return std::nullopt;  // precondition not met; nothing to check
  const auto w = reduce(types_of(in.words), target);
  if (!w) return fail("sentence does not reduce");
  const auto ma = interpret_with(lexicon(), in.words, target, *w, a);
  const auto mb = interpret_with(lexicon(), in.words, target, *w, b);
  if (!ma.relation.is_subset_of(mb.relation)) return fail("smaller states gave a larger meaning");
  return std::nullopt;
}

Outcome law_disco_discarding(const Instance& in) {
  const auto& k = in.contexts.at(0);
  auto l = concept_lattice(k);
  const auto s = states_iso(k);
  const auto d = discard(k);
  const auto id = identity(trivial_context());
  for (std::size_t i = 0; i < s.hom.size(); ++i) {
    const auto e = compose(d, s.hom.morphisms[i]);
    if (auto o = defect(e)) return fail("discard o state: " + *o);
    const bool nonzero = s.concept_of[i] != l->bottom();
    if ((e == id) != nonzero) return fail("discarding a state does not detect whether it is zero");
  }
  return std::nullopt;
}

Outcome law_cup_oracle(const Instance& in) {
  const auto& k = in.contexts.at(0);
  const auto bc = concept_functor_mor(cup(k));
  const auto want = oracle_cup(k);
  for (std::size_t c = 0; c < bc.source->size(); ++c)
    if ((bc(c) == bc.target->top()) != want[c]) return fail("B(cup) differs from the lattice-side evaluation");
  return std::nullopt;
}

// contexts l k, sets: a closed relation X over (L, K*, K).
Outcome law_cup_contraction(const Instance& in) {
  const auto &l = in.contexts.at(0), &k = in.contexts.at(1);
  const auto& x = in.sets.at(0);
  const auto kd = dual_context(*k);
  const Factors f{{l, kd, k}};
  const auto t = lattice_tensor(l, lattice_tensor(kd, k));
  if (!(t->close_objects(x) == close_nary(f, x))) return fail("n-ary closure differs from the nested tensor closure");
  if (!t->is_extent(x)) return std::nullopt;
  BitMatrix row(t->num_attributes(), {t->intent_of(x)});
  const auto state = from_bond(trivial_context(), t, row);
  const auto effect = compose(unitor_right(kLattice, l), tensor_morphism(kLattice, identity(l), cup(k)));
  const auto result = compose(effect, state);
  if (auto d = defect(result)) return fail("composite: " + *d);
  const auto want = contract(f, x, 1);
  if (!(result.extent_relation().row(0) == want))
    return fail("composite gives " + set_text(result.extent_relation().row(0)) + ", contraction " + set_text(want));
  return std::nullopt;
}

std::map<std::string, LawFn> build_registry() {
  std::map<std::string, LawFn> r;
  auto add = [&](const std::string& suite, const std::string& law, LawFn fn) { r[suite + "/" + law] = std::move(fn); };
  add("context-core", "galois-adjunction", law_galois);
  add("context-core", "closure-laws", law_closure);
  add("context-core", "concepts-match-oracle", law_concepts_oracle);
  add("context-core", "lattice-operations", law_lattice_operations);
  add("context-core", "anti-isomorphism", law_anti_isomorphism);
  add("context-core", "round-trip", law_round_trip);
  add("context-core", "powerset", law_powerset);

  add("category", "hom-matches-oracle", law_hom_oracle);
  add("category", "representation-counts", law_representation_counts);
  add("category", "representation-round-trip", law_representation_round_trip);
  add("category", "identity", law_identity);
  add("category", "composite-closed", law_composite_closed);
  add("category", "bond-compose", law_bond_compose);
  add("category", "associativity", law_associativity);
  add("category", "moshier", law_moshier);
  add("category", "duality", law_duality);
  add("category", "dual-hom-bijection", law_dual_hom_bijection);
  add("category", "hom-lattice", law_hom_lattice);

  for (auto kind : {kConcept, kLattice}) {
    const std::string s = kind == kConcept ? "monoidal-concept" : "monoidal-lattice";
    add(s, "tens-help-2", [kind](const Instance& in) { return law_tens_help_2(kind, in, false); });
    add(s, "tens-help-2-literal", [kind](const Instance& in) { return law_tens_help_2(kind, in, true); });
    add(s, "tens-help-3", [kind](const Instance& in) { return law_tens_help_3(kind, in); });
    add(s, "tensor-morphism-closed", [kind](const Instance& in) { return law_tensor_morphism_closed(kind, in); });
    add(s, "bifunctor", [kind](const Instance& in) { return law_bifunctor(kind, in); });
    add(s, "structure-closed", [kind](const Instance& in) { return law_structure_closed(kind, in); });
    add(s, "associator-inverse", [kind](const Instance& in) { return law_associator_inverse(kind, in); });
    add(s, "unitors", [kind](const Instance& in) { return law_unitors(kind, in); });
    add(s, "pentagon", [kind](const Instance& in) { return law_pentagon(kind, in); });
    add(s, "triangle", [kind](const Instance& in) { return law_triangle(kind, in); });
    add(s, "hexagon", [kind](const Instance& in) { return law_hexagon(kind, in); });
    add(s, "symmetry-involution", [kind](const Instance& in) { return law_symmetry_involution(kind, in); });
    add(s, "natural-associator", [kind](const Instance& in) { return law_natural_associator(kind, in); });
    add(s, "natural-symmetry", [kind](const Instance& in) { return law_natural_symmetry(kind, in); });
    add(s, "natural-unitors", [kind](const Instance& in) { return law_natural_unitors(kind, in); });
    add(s, "discarding", [kind](const Instance& in) { return law_discarding(kind, in); });
  }
  add("monoidal-concept", "tens-help-1", law_tens_help_1);
  add("monoidal-concept", "chu-intent-side", law_chu_intent_side);
  add("monoidal-concept", "dual-tensor", law_dual_tensor);
  add("monoidal-lattice", "star-autonomy", law_star_autonomy);
  add("monoidal-lattice", "star-autonomy-natural", law_star_autonomy_natural);
  add("monoidal-lattice", "not-compact-closed", law_not_compact_closed);

  add("suplat", "sup-maps-match-oracle", law_sup_maps_oracle);
  add("suplat", "epsilon-distributive", law_epsilon);
  add("suplat", "concept-as-wedge", law_wedge);
  add("suplat", "generator-density", law_generators);
  add("suplat", "universal-map", law_universal);
  add("suplat", "universal-unique", law_universal_unique);
  add("suplat", "symmetry-involution", law_suplat_symmetry);
  add("suplat", "unitors", law_suplat_unitors);
  add("suplat", "triangle", law_suplat_triangle);
  add("suplat", "pentagon", law_suplat_pentagon);
  add("suplat", "hexagon", law_suplat_hexagon);
  add("suplat", "natural-symmetry", law_suplat_natural_symmetry);
  add("suplat", "natural-associator", law_suplat_natural_associator);
  add("suplat", "bifunctor", law_suplat_bifunctor);
  add("suplat", "dual-tensor", law_suplat_dual);
  add("suplat", "discarding", law_suplat_discard);

  add("equivalence", "hom-count", law_hom_count);
  add("equivalence", "functor", law_functor);
  add("equivalence", "unit-iso", law_unit_iso);
  add("equivalence", "counit-iso", law_counit_iso);
  add("equivalence", "context-functor", law_context_functor);
  add("equivalence", "states", law_states);
  add("equivalence", "phi-natural", law_phi);
  add("equivalence", "lattice-tensor-agrees", law_lattice_tensor_agrees);
  add("equivalence", "discard-preserved", law_discard_preserved);

  add("disco", "reduction", law_reduction);
  add("disco", "interpretation-oracle", law_interpretation_oracle);
  add("disco", "monotonicity", law_monotonicity);
  add("disco", "discarding", law_disco_discarding);
  add("disco", "cup-oracle", law_cup_oracle);
  add("disco", "cup-contraction", law_cup_contraction);
  return r;
}

// ---------------------------------------------------------------------------
// Instance builders.

Instance ctx(std::initializer_list<ContextPtr> ks) {
  Instance in;
  in.contexts = ks;
  return in;
}

Instance with_morphisms(std::vector<ContextPtr> ks, std::vector<ContextMorphism> fs) {
  Instance in;
  in.contexts = std::move(ks);
  in.morphisms = std::move(fs);
  return in;
}

Instance lat(std::vector<LatticePtr> ls, std::vector<SupMap> fs = {}) {
  Instance in;
  in.lattices = std::move(ls);
  in.maps = std::move(fs);
  return in;
}

template <class T>
const T& pick(Generator& gen, const std::vector<T>& pool) {
  return pool[gen.uniform(0, pool.size() - 1)];
}

std::vector<ContextPtr> nonempty(const std::vector<ContextPtr>& pool) {
  std::vector<ContextPtr> out;
  for (const auto& k : pool)
    if (k->num_objects() > 0 && k->num_attributes() > 0) out.push_back(k);
  return out;
}

/// Random context with both sides in [1, n].
ContextPtr small_random(Generator& gen, std::size_t n) { return gen.context(gen.uniform(1, n), gen.uniform(1, n)); }

}  // namespace

const std::map<std::string, LawFn>& law_registry() {
  static const std::map<std::string, LawFn> r = build_registry();
  return r;
}

// ---------------------------------------------------------------------------

void suite_context_core(Runner& r, Generator& gen) {
  auto pool = small_contexts(2, 2);
  for (auto& k : fixture_contexts()) pool.push_back(k);
  for (std::size_t t = 0; t < gen.config().trials; ++t) pool.push_back(gen.context());
  for (const auto& k : pool)
    for (const char* law : {"galois-adjunction", "closure-laws", "concepts-match-oracle", "lattice-operations",
                            "anti-isomorphism", "round-trip"})
      r.run(law, ctx({k}));
  const std::vector<std::string> letters{"a", "b", "c", "d"};
  for (std::size_t n = 0; n <= 4; ++n)
    r.run("powerset", ctx({context_from_set({letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(n)},
                                            "S" + std::to_string(n))}));
}

void suite_category(Runner& r, Generator& gen) {
  const auto pool = small_contexts(2, 2);
  std::vector<std::vector<HomSet>> hom(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = 0; j < pool.size(); ++j) hom[i].push_back(enumerate_hom(pool[i], pool[j]));

  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = 0; j < pool.size(); ++j) {
      const auto &k1 = pool[i], &k2 = pool[j];
      for (const char* law : {"hom-matches-oracle", "representation-counts", "moshier", "dual-hom-bijection",
                              "hom-lattice"})
        r.run(law, ctx({k1, k2}));
      for (const auto& f : hom[i][j].morphisms) {
        r.run("representation-round-trip", with_morphisms({k1, k2}, {f}));
        r.run("identity", with_morphisms({k1, k2}, {f}));
      }
      for (std::size_t l = 0; l < pool.size(); ++l)
        for (const auto& f : hom[i][j].morphisms)
          for (const auto& g : hom[j][l].morphisms) {
            const auto inst = with_morphisms({k1, k2, pool[l]}, {f, g});
            r.run("composite-closed", inst);
            r.run("bond-compose", inst);
            r.run("duality", inst);
          }
    }
  // Associativity over every composable triple of the pool.
  for (std::size_t a = 0; a < pool.size(); ++a)
    for (std::size_t b = 0; b < pool.size(); ++b)
      for (std::size_t c = 0; c < pool.size(); ++c)
        for (std::size_t d = 0; d < pool.size(); ++d)
          for (const auto& f : hom[a][b].morphisms)
            for (const auto& g : hom[b][c].morphisms)
              for (const auto& h : hom[c][d].morphisms)
                r.run("associativity", with_morphisms({pool[a], pool[b], pool[c], pool[d]}, {f, g, h}));

  for (std::size_t t = 0; t < gen.config().trials; ++t) {
    auto k1 = gen.context(), k2 = gen.context(), k3 = gen.context(), k4 = gen.context();
    auto f = gen.morphism(k1, k2), g = gen.morphism(k2, k3), h = gen.morphism(k3, k4);
    r.run("associativity", with_morphisms({k1, k2, k3, k4}, {f, g, h}));
    r.run("identity", with_morphisms({k1, k2}, {f}));
    r.run("representation-round-trip", with_morphisms({k1, k2}, {f}));
    const auto inst = with_morphisms({k1, k2, k3}, {f, g});
    r.run("composite-closed", inst);
    r.run("bond-compose", inst);
    r.run("duality", inst);
  }
}

void suite_monoidal(Runner& r, Generator& gen, bool lattice_kind) {
  const auto small = small_contexts(2, 2);
  // Pairs from the exhaustive pool.
  for (const auto& a : small)
    for (const auto& b : small) {
      if (!lattice_kind) {
        r.run("tens-help-1", ctx({a, b}));
        r.run("dual-tensor", ctx({a, b}));
      }
      r.run("tens-help-2", ctx({a, b}));
      r.run("tens-help-2-literal", ctx({a, b}));
      r.run("symmetry-involution", ctx({a, b}));
      r.run("triangle", ctx({a, b}));
      r.run("discarding", ctx({a, b}));
    }
  for (const auto& a : small) r.run("unitors", ctx({a}));

  // Fixture pool: the coherence diagrams.
  const auto i = trivial_context();
  const auto s2 = context_from_set({"a", "b"}, "S2");
  const auto c2 = chain_context(2);
  std::vector<ContextPtr> pool = lattice_kind ? std::vector<ContextPtr>{i, s2, c2}
                                              : std::vector<ContextPtr>{i, s2, c2, chain_context(3), fixture_contexts()[5]};
  auto carrier = [](std::initializer_list<ContextPtr> ks) {
    std::size_t n = 1;
    for (const auto& k : ks) n *= k->num_objects();
    return n;
  };
  const std::size_t box = Limits::global().box_carrier;
  for (const auto& a : pool)
    for (const auto& b : pool)
      for (const auto& c : pool) {
        if (lattice_kind && carrier({a, b, c}) > box) {
          r.skip("hexagon", "three-factor lattice tensors above the carrier cap");
          continue;
        }
        r.run("hexagon", ctx({a, b, c}));
        r.run("associator-inverse", ctx({a, b, c}));
        r.run("structure-closed", ctx({a, b, c}));
        for (const auto& d : pool) {
          if (lattice_kind && carrier({a, b, c, d}) > box) {
            r.skip("pentagon", "four-factor lattice tensors above the carrier cap");
            continue;
          }
          r.run("pentagon", ctx({a, b, c, d}));
        }
      }
  for (const auto& k : box_fixture_contexts()) r.run("unitors", ctx({k}));

  // Seeded morphisms for the naturality squares.
  const auto box_pool = lattice_kind ? std::vector<ContextPtr>{i, s2, c2, chain_context(3)} : box_fixture_contexts();
  for (std::size_t t = 0; t < gen.config().trials; ++t) {
    auto k = [&]() { return gen.coin(0.5) ? pick(gen, box_pool) : small_random(gen, 2); };
    auto k1 = k(), k2 = k(), k3 = k(), k4 = k();
    if (lattice_kind && (k1->num_objects() * k2->num_objects() > box || k3->num_objects() * k4->num_objects() > box))
      continue;
    auto f = gen.morphism(k1, k3), g = gen.morphism(k2, k4);
    const auto bin = with_morphisms({k1, k2, k3, k4}, {f, g});
    r.run("tens-help-3", bin);
    r.run("tensor-morphism-closed", bin);
    r.run("natural-symmetry", bin);
    if (!lattice_kind) r.run("chu-intent-side", bin);
    r.run("natural-unitors", with_morphisms({k1, k3}, {f}));
    r.run("structure-closed", ctx({k1, k2, k3}));
    r.run("unitors", ctx({k1}));
    auto k5 = k(), k6 = k();
    if (!lattice_kind || k5->num_objects() * k6->num_objects() <= box) {
      auto g1 = gen.morphism(k3, k5), g2 = gen.morphism(k4, k6);
      r.run("bifunctor", with_morphisms({k1, k2, k3, k4, k5, k6}, {f, g, g1, g2}));
    }
    if (!lattice_kind || (carrier({k1, k2, k5}) <= 8 && carrier({k3, k4, k6}) <= 8)) {
      auto h = gen.morphism(k5, k6);
      r.run("natural-associator", with_morphisms({k1, k2, k5, k3, k4, k6}, {f, g, h}));
    }
  }

  if (!lattice_kind) return;
  const std::vector<ContextPtr> star{i, s2, c2};
  for (const auto& a : star)
    for (const auto& b : star)
      for (const auto& c : star) r.run("star-autonomy", ctx({a, b, c}));
  for (std::size_t t = 0; t < gen.config().trials; ++t) {
    auto a2 = pick(gen, star), a = pick(gen, star), b = pick(gen, star), c = pick(gen, star);
    auto ab = lattice_tensor(a, b);
    auto cd = dual_context(*c);
    r.run("star-autonomy-natural",
          with_morphisms({a2, a, b, c, ab, cd}, {gen.morphism(a2, a), gen.morphism(ab, cd)}));
  }
  r.run("not-compact-closed", Instance{});
}

void suite_suplat(Runner& r, Generator& gen) {
  std::vector<LatticePtr> pool;
  for (auto& l : fixture_lattices())
    if (l->size() <= 5) pool.push_back(l);
  for (std::size_t t = 0; t < std::min<std::size_t>(gen.config().trials, 6); ++t) {
    auto l = gen.lattice(5);
    if (std::none_of(pool.begin(), pool.end(), [&](const LatticePtr& p) { return find_isomorphism(*p, *l); }))
      pool.push_back(l);
  }
  const std::vector<LatticePtr> tiny{two_lattice(), chain_lattice(3), diamond_lattice()};

  for (const auto& v : pool) {
    r.run("unitors", lat({v}));
    for (const auto& w : pool) {
      for (const char* law : {"sup-maps-match-oracle", "epsilon-distributive", "concept-as-wedge",
                              "generator-density", "symmetry-involution", "dual-tensor", "discarding"})
        r.run(law, lat({v, w}));
      r.run("triangle", lat({v, w}));
    }
  }
  // Nested tensors grow quickly (D4 (x) D4 (x) C3 (x) C3 has 1296 elements),
  // so the three- and four-fold diagrams run on a bounded product of sizes.
  auto volume = [](std::initializer_list<LatticePtr> ls) {
    std::size_t n = 1;
    for (const auto& l : ls) n *= l->size();
    return n;
  };
  for (const auto& a : pool)
    for (const auto& b : pool)
      for (const auto& c : pool) {
        if (volume({a, b, c}) > 64) {
          r.skip("hexagon", "triples with size product above 64");
          continue;
        }
        r.run("hexagon", lat({a, b, c}));
        for (const auto& d : pool) {
          if (volume({a, b, c, d}) > 36)
            r.skip("pentagon", "quadruples with size product above 36");
          else
            r.run("pentagon", lat({a, b, c, d}));
        }
      }

  std::vector<LatticePtr> small;
  for (const auto& l : pool)
    if (l->size() <= 4) small.push_back(l);
  for (std::size_t t = 0; t < gen.config().trials; ++t) {
    const auto &v = pick(gen, small), &w = pick(gen, small), &u = pick(gen, small);
    const auto f = gen.supmap(v, u), g = gen.supmap(w, u);
    r.run("universal-map", lat({v, w, u}, {f, g}));
    r.run("universal-unique", lat({v, w, u}, {f, g}));
    const auto &w1 = pick(gen, small), &w2 = pick(gen, small);
    const auto f1 = gen.supmap(v, w1), f2 = gen.supmap(w, w2);
    r.run("natural-symmetry", lat({v, w, w1, w2}, {f1, f2}));
    const auto &u1 = pick(gen, tiny), &u2 = pick(gen, tiny);
    r.run("bifunctor", lat({v, w, w1, w2, u1, u2}, {f1, f2, gen.supmap(w1, u1), gen.supmap(w2, u2)}));
    const auto &x = pick(gen, tiny), &y = pick(gen, tiny), &z = pick(gen, tiny);
    const auto &x2 = pick(gen, tiny), &y2 = pick(gen, tiny), &z2 = pick(gen, tiny);
    r.run("natural-associator",
          lat({x, y, z, x2, y2, z2}, {gen.supmap(x, x2), gen.supmap(y, y2), gen.supmap(z, z2)}));
  }
}

void suite_equivalence(Runner& r, Generator& gen) {
  auto pool = fixture_contexts();
  for (const auto& k : small_contexts(2, 2)) pool.push_back(k);
  for (const auto& a : pool) {
    r.run("counit-iso", ctx({a}));
    r.run("states", ctx({a}));
    r.run("discard-preserved", ctx({a}));
    for (const auto& b : pool) r.run("hom-count", ctx({a, b}));
  }
  const auto box = box_fixture_contexts();
  for (const auto& a : box)
    for (const auto& b : box) {
      if (a->num_objects() * b->num_objects() > Limits::global().box_carrier) continue;
      r.run("lattice-tensor-agrees", ctx({a, b}));
    }

  auto lattices = closure_system_lattices(3, 6);
  for (auto& l : fixture_lattices()) lattices.push_back(l);
  for (const auto& v : lattices) r.run("unit-iso", lat({v}));

  const std::vector<ContextPtr> phi_pool{trivial_context(), context_from_set({"a", "b"}, "S2"), chain_context(2),
                                         chain_context(3), fixture_contexts()[5]};
  for (std::size_t t = 0; t < gen.config().trials; ++t) {
    auto k1 = pick(gen, phi_pool), k2 = pick(gen, phi_pool), k3 = pick(gen, phi_pool), k4 = pick(gen, phi_pool);
    auto f = gen.morphism(k1, k3), g = gen.morphism(k2, k4);
    r.run("phi-natural", with_morphisms({k1, k2, k3, k4}, {f, g}));
    auto k5 = pick(gen, pool);
    r.run("functor", with_morphisms({k1, k3, k5}, {f, gen.morphism(k3, k5)}));
    const auto &v = pick(gen, lattices), &w = pick(gen, lattices);
    r.run("context-functor", lat({v, w}, {gen.supmap(v, w)}));
  }
}

void suite_disco(Runner& r, Generator& gen) {
  const auto& lex = lexicon();
  const std::vector<std::vector<std::string>> sentences{
      {"Alice", "likes", "Bob"}, {"Bob", "likes", "Alice"}, {"Alice", "likes", "Alice"}, {"Bob", "likes", "Bob"}};
  for (const auto& s : sentences) {
    Instance in;
    in.words = s;
    r.run("reduction", in);
    r.run("interpretation-oracle", in);
  }
  auto random_state = [&](const std::string& word, const Bitset* above) {
    const auto f = lex.factors(lex.word(word).type);
    Bitset x = gen.subset(f.carrier());
    if (above) x |= *above;
    return close_nary(f, x);
  };
  for (std::size_t t = 0; t < gen.config().trials; ++t) {
    Instance in;
    in.words = pick(gen, sentences);
    for (const auto& w : in.words) in.sets.push_back(random_state(w, nullptr));
    r.run("interpretation-oracle", in);
    for (std::size_t i = 0; i < in.words.size(); ++i) in.sets.push_back(random_state(in.words[i], &in.sets[i]));
    r.run("monotonicity", in);
  }

  std::vector<ContextPtr> pool{lex.types().at("n"), lex.types().at("s")};
  for (const auto& k : nonempty(small_contexts(2, 2))) pool.push_back(k);
  for (const auto& k : box_fixture_contexts()) pool.push_back(k);
  for (const auto& k : pool) {
    r.run("discarding", ctx({k}));
    if (k->num_objects() * k->num_attributes() <= Limits::global().box_carrier) r.run("cup-oracle", ctx({k}));
  }
  const auto small = nonempty(small_contexts(2, 2));
  for (std::size_t t = 0; t < gen.config().trials; ++t) {
    auto l = pick(gen, small), k = pick(gen, small);
    Instance in = ctx({l, k});
    const Factors f{{l, dual_context(*k), k}};
    in.sets.push_back(close_nary(f, gen.subset(f.carrier())));
    r.run("cup-contraction", in);
  }
}

}  // namespace cxtcat::detail
