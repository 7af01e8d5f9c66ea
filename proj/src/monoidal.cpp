#include "cxtcat/monoidal.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <mutex>
#include <tuple>

#include "cxtcat/concept_lattice.hpp"
#include "cxtcat/lattice.hpp"
#include "cxtcat/mutation.hpp"

namespace cxtcat {

const char* tensor_kind_name(TensorKind kind) { return kind == TensorKind::Concept ? "concept" : "lattice"; }

std::string pair_label(const std::string& a, const std::string& b) { return "(" + a + "," + b + ")"; }

namespace {

std::vector<std::string> pair_labels(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) out.push_back(pair_label(x, y));
  return out;
}

Bitset product(const Bitset& a, const Bitset& b) {
  const PairIndex p{a.size(), b.size()};
  Bitset out(p.size());
  a.for_each([&](std::size_t i) { b.for_each([&](std::size_t j) { out.set(p.flat(i, j)); }); });
  return out;
}

}  // namespace

ContextPtr concept_tensor(const ContextPtr& k1, const ContextPtr& k2) {
  const PairIndex g{k1->num_objects(), k2->num_objects()};
  const PairIndex m{k1->num_attributes(), k2->num_attributes()};
  const bool conjunction = active_mutation() == Mutation::TensorIncidenceConjunction;
  BitMatrix inc(g.size(), m.size());
  for (std::size_t g1 = 0; g1 < g.n1; ++g1)
    for (std::size_t g2 = 0; g2 < g.n2; ++g2) {
      auto& row = inc.row(g.flat(g1, g2));
      for (std::size_t m1 = 0; m1 < m.n1; ++m1)
        for (std::size_t m2 = 0; m2 < m.n2; ++m2) {
          const bool a = k1->incident(g1, m1), b = k2->incident(g2, m2);
          if (conjunction ? (a && b) : (a || b)) row.set(m.flat(m1, m2));
        }
    }
  return make_context("(" + k1->name() + " x " + k2->name() + ")", pair_labels(k1->objects(), k2->objects()),
                      pair_labels(k1->attributes(), k2->attributes()), std::move(inc));
}

namespace {

struct BoxCache {
  std::mutex mu;
  std::multimap<std::pair<std::uint64_t, std::uint64_t>, std::tuple<ContextPtr, ContextPtr, ContextPtr>> entries;
};

BoxCache& box_cache() {
  static BoxCache cache;
  return cache;
}

ContextPtr build_lattice_tensor(const ContextPtr& k1, const ContextPtr& k2, const Limits& limits) {
  const PairIndex g{k1->num_objects(), k2->num_objects()};
  if (g.size() > limits.box_carrier)
    throw SizeCapExceeded("lattice tensor carrier " + std::to_string(g.size()) + " exceeds " +
                          std::to_string(limits.box_carrier));
  const auto hom = enumerate_hom(k1, dual_context(*k2), limits);
  std::vector<std::string> attrs;
  std::vector<Bitset> columns;
  for (const auto& f : hom.morphisms) {
    attrs.push_back(bond_label(f.bond()));
    columns.push_back(f.bond().flatten());
  }
  BitMatrix inc = BitMatrix(g.size(), std::move(columns)).transpose();
  if (inc.rows() != g.size()) inc = BitMatrix(g.size(), attrs.size());
  return make_context("(" + k1->name() + " [x] " + k2->name() + ")", pair_labels(k1->objects(), k2->objects()),
                      std::move(attrs), std::move(inc));
}

}  // namespace

ContextPtr lattice_tensor(const ContextPtr& k1, const ContextPtr& k2, const Limits& limits) {
  auto& cache = box_cache();
  const auto key = std::pair{k1->fingerprint(), k2->fingerprint()};
  {
    std::lock_guard lock(cache.mu);
    auto [lo, hi] = cache.entries.equal_range(key);
    for (auto it = lo; it != hi; ++it) {
      const auto& [a, b, t] = it->second;
      if (*a == *k1 && *b == *k2) return t;
    }
  }
  ContextPtr t = build_lattice_tensor(k1, k2, limits);
  std::lock_guard lock(cache.mu);
  cache.entries.emplace(key, std::tuple{k1, k2, t});
  return t;
}

ContextPtr tensor(TensorKind kind, const ContextPtr& k1, const ContextPtr& k2) {
  return kind == TensorKind::Concept ? concept_tensor(k1, k2) : lattice_tensor(k1, k2);
}

Bitset close_product(const FormalContext& t, const Bitset& a, const Bitset& b) {
  if (a.size() * b.size() != t.num_objects()) throw DomainMismatch("factor sets do not match the tensor carrier");
  return t.close_objects(product(a, b));
}

ContextMorphism tensor_morphism(TensorKind kind, const ContextMorphism& r1, const ContextMorphism& r2) {
  auto src = tensor(kind, r1.source(), r2.source());
  auto tgt = tensor(kind, r1.target(), r2.target());
  const auto& e1 = r1.extent_relation();
  const auto& e2 = r2.extent_relation();
  std::vector<Bitset> gens;
  gens.reserve(src->num_objects());
  for (std::size_t g1 = 0; g1 < e1.rows(); ++g1)
    for (std::size_t g2 = 0; g2 < e2.rows(); ++g2) gens.push_back(product(e1.row(g1), e2.row(g2)));
  const bool close = active_mutation() != Mutation::TensorMorphismWithoutClosure;
  return morphism_from_generators(src, tgt, BitMatrix(tgt->num_objects(), std::move(gens)), close);
}

BitMatrix concept_tensor_intent_side(const ContextMorphism& r1, const ContextMorphism& r2) {
  auto src = concept_tensor(r1.source(), r2.source());
  const auto& s1 = r1.intent_relation();
  const auto& s2 = r2.intent_relation();
  std::vector<Bitset> rows;
  for (std::size_t m3 = 0; m3 < s1.rows(); ++m3)
    for (std::size_t m4 = 0; m4 < s2.rows(); ++m4)
      rows.push_back(src->close_attributes(product(s1.row(m3), s2.row(m4))));
  return BitMatrix(src->num_attributes(), std::move(rows));
}

namespace {

/// Morphism whose generator for object i is the single object perm[i].
ContextMorphism from_object_map(const ContextPtr& src, const ContextPtr& tgt, const std::vector<std::size_t>& perm,
                                bool close = true) {
  BitMatrix gens(src->num_objects(), tgt->num_objects());
  for (std::size_t i = 0; i < perm.size(); ++i) gens.set(i, perm[i]);
  return morphism_from_generators(src, tgt, gens, close);
}

std::vector<std::size_t> identity_perm(std::size_t n) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  return p;
}

}  // namespace

// Row-major flattening makes (g1,(g2,g3)) and ((g1,g2),g3) the same index.
ContextMorphism associator(TensorKind kind, const ContextPtr& k1, const ContextPtr& k2, const ContextPtr& k3) {
  auto src = tensor(kind, k1, tensor(kind, k2, k3));
  auto tgt = tensor(kind, tensor(kind, k1, k2), k3);
  return from_object_map(src, tgt, identity_perm(src->num_objects()));
}

ContextMorphism associator_inverse(TensorKind kind, const ContextPtr& k1, const ContextPtr& k2, const ContextPtr& k3) {
  auto src = tensor(kind, tensor(kind, k1, k2), k3);
  auto tgt = tensor(kind, k1, tensor(kind, k2, k3));
  return from_object_map(src, tgt, identity_perm(src->num_objects()));
}

ContextMorphism symmetry(TensorKind kind, const ContextPtr& k1, const ContextPtr& k2) {
  auto src = tensor(kind, k1, k2);
  auto tgt = tensor(kind, k2, k1);
  const PairIndex p{k1->num_objects(), k2->num_objects()};
  const PairIndex q{k2->num_objects(), k1->num_objects()};
  std::vector<std::size_t> perm(p.size());
  for (std::size_t f = 0; f < p.size(); ++f) {
    auto [i, j] = p.unflat(f);
    perm[f] = q.flat(j, i);
  }
  return from_object_map(src, tgt, perm);
}

ContextMorphism unitor_right(TensorKind kind, const ContextPtr& k) {
  auto src = tensor(kind, k, trivial_context());
  const bool close = active_mutation() != Mutation::UnitorWithoutClosure;
  return from_object_map(src, k, identity_perm(k->num_objects()), close);
}

ContextMorphism unitor_right_inverse(TensorKind kind, const ContextPtr& k) {
  auto tgt = tensor(kind, k, trivial_context());
  return from_object_map(k, tgt, identity_perm(k->num_objects()));
}

ContextMorphism unitor_left(TensorKind kind, const ContextPtr& k) {
  return compose(unitor_right(kind, k), symmetry(kind, trivial_context(), k));
}

ContextMorphism unitor_left_inverse(TensorKind kind, const ContextPtr& k) {
  return compose(symmetry(kind, k, trivial_context()), unitor_right_inverse(kind, k));
}

ContextMorphism discard(const ContextPtr& k) {
  // Bond column = (intent row)' ; the correct intent row is all of M.
  const Bitset column = active_mutation() == Mutation::DiscardWrongRow ? k->extent_of(k->no_attributes())
                                                                         : k->extent_of(k->all_attributes());
  BitMatrix bond(k->num_objects(), 1);
  column.for_each([&](std::size_t g) { bond.set(g, 0); });
  return ContextMorphism(k, trivial_context(), std::move(bond));
}

ContextMorphism rel_embed(const std::vector<std::string>& a, const std::vector<std::string>& b, const BitMatrix& r) {
  if (r.rows() != a.size() || r.cols() != b.size()) throw InvalidArgument("relation does not match A x B");
  auto sa = context_from_set(a);
  auto sb = context_from_set(b);
  // In S_B, X' = B \ X, so the bond row B(a) = R(a)' is the complement.
  std::vector<Bitset> rows;
  for (const auto& row : r.row_sets()) rows.push_back(~row);
  return ContextMorphism(sa, sb, BitMatrix(b.size(), std::move(rows)));
}

// ---------------------------------------------------------------------------

BitMatrix curry_bond(const BitMatrix& bond, std::size_t na, std::size_t nb, std::size_t nc) {
  if (bond.rows() != na * nb || bond.cols() != nc) throw InvalidArgument("bond is not (A x B) x C shaped");
  return BitMatrix::unflatten(bond.flatten(), na, nb * nc);
}

BitMatrix uncurry_bond(const BitMatrix& bond, std::size_t na, std::size_t nb, std::size_t nc) {
  if (bond.rows() != na || bond.cols() != nb * nc) throw InvalidArgument("bond is not A x (B x C) shaped");
  return BitMatrix::unflatten(bond.flatten(), na * nb, nc);
}

ContextMorphism curry(const ContextMorphism& f, const ContextPtr& a, const ContextPtr& b, const ContextPtr& c) {
  require_same_context(f.source(), lattice_tensor(a, b), "curry");
  return ContextMorphism(a, dual_context(*lattice_tensor(b, c)),
                         curry_bond(f.bond(), a->num_objects(), b->num_objects(), c->num_objects()));
}

ContextMorphism uncurry(const ContextMorphism& f, const ContextPtr& a, const ContextPtr& b, const ContextPtr& c) {
  require_same_context(f.source(), a, "uncurry");
  return ContextMorphism(lattice_tensor(a, b), dual_context(*c),
                         uncurry_bond(f.bond(), a->num_objects(), b->num_objects(), c->num_objects()));
}

StarAutonomy star_autonomy_bijection(const ContextPtr& a, const ContextPtr& b, const ContextPtr& c,
                                     const Limits& limits) {
  StarAutonomy s{enumerate_hom(lattice_tensor(a, b, limits), dual_context(*c), limits),
                 enumerate_hom(a, dual_context(*lattice_tensor(b, c, limits)), limits),
                 {},
                 {}};
  constexpr auto missing = std::numeric_limits<std::size_t>::max();
  const auto na = a->num_objects(), nb = b->num_objects(), nc = c->num_objects();
  s.forward.assign(s.left.size(), missing);
  s.backward.assign(s.right.size(), missing);
  for (std::size_t i = 0; i < s.left.size(); ++i)
    if (auto j = s.right.find(curry_bond(s.left.morphisms[i].bond(), na, nb, nc))) s.forward[i] = *j;
  for (std::size_t j = 0; j < s.right.size(); ++j)
    if (auto i = s.left.find(uncurry_bond(s.right.morphisms[j].bond(), na, nb, nc))) s.backward[j] = *i;
  return s;
}

bool dual_of_concept_tensor(const ContextPtr& k1, const ContextPtr& k2) {
  return *dual_context(*concept_tensor(k1, k2)) == *concept_tensor(dual_context(*k1), dual_context(*k2));
}

// ---------------------------------------------------------------------------

CompactClosureSearch search_compact_closure_counterexample(std::size_t max_objects, std::size_t max_attributes,
                                                           const Limits& limits) {
  // One representative context (the first met, hence smallest) per
  // isomorphism class of concept lattices; the tensors only see B(K).
  struct Rep {
    ContextPtr k;
    LatticePtr l;
  };
  std::vector<Rep> reps;
  for (std::size_t n = 1; n <= max_objects; ++n)
    for (std::size_t m = 1; m <= max_attributes; ++m) {
      const std::uint64_t total = std::uint64_t{1} << (n * m);
      for (std::uint64_t mask = 0; mask < total; ++mask) {
        BitMatrix inc(n, m);
        for (std::size_t i = 0; i < n * m; ++i)
          if (mask >> i & 1U) inc.set(i / m, i % m);
        std::vector<std::string> objs, attrs;
        for (std::size_t i = 0; i < n; ++i) objs.push_back("g" + std::to_string(i));
        for (std::size_t j = 0; j < m; ++j) attrs.push_back("m" + std::to_string(j));
        auto k = make_context("K" + std::to_string(n) + "x" + std::to_string(m) + "#" + std::to_string(mask), objs,
                              attrs, std::move(inc));
        auto l = lattice_of(*enumerate_concepts(k, limits));
        bool seen = false;
        for (const auto& r : reps)
          if (find_isomorphism(*r.l, *l)) {
            seen = true;
            break;
          }
        if (!seen) reps.push_back({k, l});
      }
    }

  CompactClosureSearch out;
  out.lattice_classes = reps.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = i; j < reps.size(); ++j) pairs.emplace_back(i, j);
  std::stable_sort(pairs.begin(), pairs.end(), [&](auto x, auto y) {
    return reps[x.first].l->size() + reps[x.second].l->size() < reps[y.first].l->size() + reps[y.second].l->size();
  });
  for (auto [i, j] : pairs) {
    const auto& k1 = reps[i].k;
    const auto& k2 = reps[j].k;
    ++out.pairs_checked;
    auto left = enumerate_concepts(lattice_tensor(dual_context(*k1), dual_context(*k2), limits), limits);
    auto right = enumerate_concepts(dual_context(*lattice_tensor(k1, k2, limits)), limits);
    bool iso = left->size() == right->size() && find_isomorphism(*lattice_of(*left), *lattice_of(*right));
    if (!iso) {
      out.found = true;
      out.k1 = k1;
      out.k2 = k2;
      out.left_size = left->size();
      out.right_size = right->size();
      return out;
    }
  }
  return out;
}

}  // namespace cxtcat
