#include "cxtcat/suplat.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <sstream>

#include "cxtcat/monoidal.hpp"

namespace cxtcat {

using Index = FiniteLattice::Index;

namespace {

struct LatticeCache {
  std::mutex mu;
  std::multimap<std::uint64_t, std::pair<ContextPtr, LatticePtr>> entries;
};

}  // namespace

LatticePtr concept_functor_obj(const ContextPtr& k) {
  static LatticeCache cache;
  {
    std::lock_guard lock(cache.mu);
    auto [lo, hi] = cache.entries.equal_range(k->fingerprint());
    for (auto it = lo; it != hi; ++it)
      if (*it->second.first == *k) return it->second.second;
  }
  auto l = lattice_of(*concept_lattice(k));
  std::lock_guard lock(cache.mu);
  cache.entries.emplace(k->fingerprint(), std::pair{k, l});
  return l;
}

SupMap concept_functor_mor(const ContextMorphism& r) {
  auto src = concept_lattice(r.source());
  auto tgt = concept_lattice(r.target());
  SupMap f{concept_functor_obj(r.source()), concept_functor_obj(r.target()), std::vector<Index>(src->size())};
  const auto& rel = r.extent_relation();
  for (std::size_t c = 0; c < src->size(); ++c) f.table[c] = tgt->concept_of_objects(r_image(rel, src->extent(c)));
  return f;
}

ContextPtr context_functor_obj(const LatticePtr& v) {
  return context_from_poset(v->labels(), v->leq_matrix(), "F(" + v->name() + ")");
}

ChuPair context_functor_chu(const SupMap& f) {
  auto src = context_functor_obj(f.source);
  auto tgt = context_functor_obj(f.target);
  const auto star = adjoint(f);
  const auto& v = *f.source;
  const auto& w = *f.target;
  std::vector<Bitset> ext, in;
  for (std::size_t x = 0; x < v.size(); ++x) ext.push_back(w.down_set(f(x)));
  for (std::size_t y = 0; y < w.size(); ++y) in.push_back(v.up_set(star(y)));
  return ChuPair{ExtentRelation{src, tgt, BitMatrix(w.size(), std::move(ext))},
                 IntentRelation{src, tgt, BitMatrix(v.size(), std::move(in))}};
}

ContextMorphism context_functor_mor(const SupMap& f) {
  auto chu = context_functor_chu(f);
  auto check = is_chu_pair(*chu.extent.source, *chu.extent.target, chu.extent.rows, chu.intent.rows);
  if (!check) throw InvalidArgument("F(f) is not a Chu pair: " + check.witness.describe());
  return ContextMorphism(chu.extent.source, chu.extent.target, chu_to_bond(chu).matrix);
}

SupMap unit_iso(const LatticePtr& v) {
  auto fv = context_functor_obj(v);
  auto cl = concept_lattice(fv);
  SupMap f{v, concept_functor_obj(fv), std::vector<Index>(v->size())};
  for (std::size_t x = 0; x < v->size(); ++x) f.table[x] = *cl->find_extent(v->down_set(x));
  return f;
}

SupMap unit_iso_inverse(const LatticePtr& v) {
  auto fv = context_functor_obj(v);
  auto cl = concept_lattice(fv);
  SupMap f{concept_functor_obj(fv), v, std::vector<Index>(cl->size())};
  for (std::size_t c = 0; c < cl->size(); ++c) f.table[c] = v->join_of(cl->extent(c));
  return f;
}

ContextMorphism counit_iso(const ContextPtr& k) {
  auto l = concept_functor_obj(k);
  auto cl = concept_lattice(k);
  auto fbk = context_functor_obj(l);
  std::vector<Bitset> rows;
  for (std::size_t g = 0; g < k->num_objects(); ++g) {
    Bitset single(k->num_objects());
    single.set(g);
    rows.push_back(l->down_set(cl->concept_of_objects(single)));
  }
  return morphism_from_generators(k, fbk, BitMatrix(l->size(), std::move(rows)));
}

ContextMorphism counit_iso_inverse(const ContextPtr& k) {
  auto l = concept_functor_obj(k);
  auto cl = concept_lattice(k);
  std::vector<Bitset> rows;
  for (std::size_t c = 0; c < cl->size(); ++c) rows.push_back(cl->extent(c));
  return morphism_from_generators(context_functor_obj(l), k, BitMatrix(k->num_objects(), std::move(rows)));
}

StateCorrespondence states_iso(const ContextPtr& k, const Limits& limits) {
  StateCorrespondence s{enumerate_hom(trivial_context(), k, limits), {}};
  auto cl = concept_lattice(k);
  for (const auto& f : s.hom.morphisms) s.concept_of.push_back(*cl->find_intent(f.bond().row(0)));
  return s;
}

StateCorrespondence effects_iso(const ContextPtr& k, const Limits& limits) {
  StateCorrespondence s{enumerate_hom(k, trivial_context(), limits), {}};
  auto cl = concept_lattice(k);
  for (const auto& f : s.hom.morphisms) s.concept_of.push_back(*cl->find_extent(f.bond().column(0)));
  return s;
}

// ---------------------------------------------------------------------------

namespace {

std::string table_label(const std::vector<Index>& table) {
  std::string s = "[";
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(table[i]);
  }
  return s + "]";
}

}  // namespace

LatticePtr hom_lattice(const LatticePtr& v, const LatticePtr& w, const Limits& limits) {
  auto maps = enumerate_sup_maps(v, w, limits);
  const auto n = maps.size();
  BitMatrix leq(n, n);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(table_label(maps[i].table));
    for (std::size_t j = 0; j < n; ++j) {
      bool below = true;
      for (std::size_t x = 0; x < v->size() && below; ++x) below = w->leq(maps[i](x), maps[j](x));
      if (below) leq.set(i, j);
    }
  }
  return make_lattice("(" + v->name() + " -o " + w->name() + ")", std::move(labels), std::move(leq));
}

LatticePtr suplat_lattice_tensor(const LatticePtr& v, const LatticePtr& w, const Limits& limits) {
  auto l = dual_lattice(hom_lattice(v, dual_lattice(w), limits));
  return make_lattice("(" + v->name() + " [x] " + w->name() + ")", l->labels(), l->leq_matrix());
}

SupMap hom_element(const LatticePtr& hom, const LatticePtr& v, const LatticePtr& w, std::size_t index) {
  SupMap f{v, w, {}};
  std::string label = hom->label(index);
  for (auto& ch : label)
    if (ch == '[' || ch == ']' || ch == ',') ch = ' ';
  std::istringstream in(label);
  for (Index x; in >> x;) f.table.push_back(x);
  if (f.table.size() != v->size()) throw DomainMismatch("hom element does not match the source lattice");
  return f;
}

// ---------------------------------------------------------------------------

Index SupLatTensor::owedge(std::size_t x, std::size_t y) const { return lattice->meet(eps1(x), eps2(y)); }

Index SupLatTensor::ovee(std::size_t x, std::size_t y) const { return lattice->join(eps1(x), eps2(y)); }

Index SupLatTensor::owedge_explicit(std::size_t x, std::size_t y) const {
  const PairIndex p{v->size(), w->size()};
  Bitset ext(p.size());
  for (std::size_t a = 0; a < p.n1; ++a)
    for (std::size_t b = 0; b < p.n2; ++b)
      if ((v->leq(a, x) && w->leq(b, y)) || a == v->bottom() || b == w->bottom()) ext.set(p.flat(a, b));
  auto i = concepts->find_extent(ext);
  if (!i) throw Error("explicit wedge is not an extent");
  return *i;
}

namespace {

std::unique_ptr<SupLatTensor> build_tensor(const LatticePtr& v, const LatticePtr& w) {
  // F(V) x F(W) written out directly: (x,y) related to (a,b) iff x<=a or y<=b.
  const PairIndex p{v->size(), w->size()};
  if (p.size() > Limits::global().suplat_carrier)
    throw SizeCapExceeded("sup-lattice tensor of " + std::to_string(p.n1) + " and " + std::to_string(p.n2) +
                          " elements exceeds the carrier cap");
  BitMatrix inc(p.size(), p.size());
  for (std::size_t x = 0; x < p.n1; ++x)
    for (std::size_t y = 0; y < p.n2; ++y)
      for (std::size_t a = 0; a < p.n1; ++a)
        for (std::size_t b = 0; b < p.n2; ++b)
          if (v->leq(x, a) || w->leq(y, b)) inc.set(p.flat(x, y), p.flat(a, b));
  std::vector<std::string> labels;
  for (const auto& x : v->labels())
    for (const auto& y : w->labels()) labels.push_back(pair_label(x, y));
  auto t = std::make_unique<SupLatTensor>();
  t->v = v;
  t->w = w;
  t->context = make_context("(" + v->name() + " x " + w->name() + ")", labels, labels, std::move(inc));
  t->concepts = concept_lattice(t->context);
  {
    auto l = lattice_of(*t->concepts);
    t->lattice = make_lattice("(" + v->name() + " (x) " + w->name() + ")", l->labels(), l->leq_matrix());
  }
  t->eps1 = SupMap{v, t->lattice, std::vector<Index>(p.n1)};
  t->eps2 = SupMap{w, t->lattice, std::vector<Index>(p.n2)};
  for (std::size_t x = 0; x < p.n1; ++x) {
    Bitset ext(p.size());
    for (std::size_t a = 0; a < p.n1; ++a)
      for (std::size_t b = 0; b < p.n2; ++b)
        if (v->leq(a, x) || b == w->bottom()) ext.set(p.flat(a, b));
    t->eps1.table[x] = *t->concepts->find_extent(ext);
  }
  for (std::size_t y = 0; y < p.n2; ++y) {
    Bitset ext(p.size());
    for (std::size_t a = 0; a < p.n1; ++a)
      for (std::size_t b = 0; b < p.n2; ++b)
        if (w->leq(b, y) || a == v->bottom()) ext.set(p.flat(a, b));
    t->eps2.table[y] = *t->concepts->find_extent(ext);
  }
  return t;
}

struct TensorCache {
  std::mutex mu;
  std::multimap<std::pair<std::uint64_t, std::uint64_t>, std::unique_ptr<SupLatTensor>> entries;
};

}  // namespace

const SupLatTensor& suplat_concept_tensor(const LatticePtr& v, const LatticePtr& w) {
  static TensorCache cache;
  const auto key = std::pair{v->fingerprint(), w->fingerprint()};
  {
    std::lock_guard lock(cache.mu);
    auto [lo, hi] = cache.entries.equal_range(key);
    for (auto it = lo; it != hi; ++it)
      if (*it->second->v == *v && *it->second->w == *w) return *it->second;
  }
  auto t = build_tensor(v, w);
  std::lock_guard lock(cache.mu);
  // Another thread may have raced us; keep whichever landed first.
  auto [lo, hi] = cache.entries.equal_range(key);
  for (auto it = lo; it != hi; ++it)
    if (*it->second->v == *v && *it->second->w == *w) return *it->second;
  return *cache.entries.emplace(key, std::move(t))->second;
}

std::vector<Index> image_of(const SupMap& f) {
  std::vector<Index> out = f.table;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

DistributivityCheck is_mutually_distributive(const FiniteLattice& l, std::vector<Index> x, std::vector<Index> y) {
  for (auto* s : {&x, &y}) {
    std::sort(s->begin(), s->end());
    s->erase(std::unique(s->begin(), s->end()), s->end());
  }
  std::vector<std::pair<Index, Index>> pairs;
  for (auto a : x)
    for (auto b : y) pairs.emplace_back(a, b);
  const std::size_t max_family = std::min<std::size_t>(6, pairs.size() + 1);

  DistributivityCheck result;
  std::vector<std::pair<Index, Index>> family;
  Index jx[64], jy[64], mx[64], my[64];

  auto check = [&]() -> bool {
    const std::size_t n = family.size();
    const std::size_t full = (std::size_t{1} << n) - 1;
    jx[0] = jy[0] = l.bottom();
    mx[0] = my[0] = l.top();
    for (std::size_t mask = 1; mask <= full; ++mask) {
      const auto low = static_cast<std::size_t>(std::countr_zero(mask));
      const auto rest = mask & (mask - 1);
      jx[mask] = l.join(jx[rest], family[low].first);
      jy[mask] = l.join(jy[rest], family[low].second);
      mx[mask] = l.meet(mx[rest], family[low].first);
      my[mask] = l.meet(my[rest], family[low].second);
    }
    Index lhs1 = l.bottom(), lhs2 = l.top();
    for (const auto& [a, b] : family) {
      lhs1 = l.join(lhs1, l.meet(a, b));
      lhs2 = l.meet(lhs2, l.join(a, b));
    }
    Index rhs1 = l.top(), rhs2 = l.bottom();
    for (std::size_t j = 0; j <= full; ++j) {
      rhs1 = l.meet(rhs1, l.join(jx[j], jy[full & ~j]));
      rhs2 = l.join(rhs2, l.meet(mx[j], my[full & ~j]));
    }
    if (lhs1 != rhs1) result.equation = 1;
    else if (lhs2 != rhs2) result.equation = 2;
    else return true;
    result.ok = false;
    result.family = family;
    return false;
  };

  // Multisets over `pairs` with multiplicity <= 2, listed by increasing index.
  auto search = [&](auto&& self, std::size_t from) -> bool {
    if (!family.empty() && !check()) return false;
    if (family.size() == max_family) return true;
    for (std::size_t k = from; k < pairs.size(); ++k) {
      family.push_back(pairs[k]);
      bool ok = self(self, k + 1);
      if (ok && family.size() < max_family) {
        family.push_back(pairs[k]);
        ok = self(self, k + 1);
        family.pop_back();
      }
      family.pop_back();
      if (!ok) return false;
    }
    return true;
  };
  search(search, 0);
  return result;
}

namespace {

void require_factors(const SupLatTensor& t, const SupMap& f, const SupMap& g) {
  if (!same_lattice(f.source, t.v) || !same_lattice(g.source, t.w))
    throw DomainMismatch("universal map: f and g must start at the tensor factors");
  if (!same_lattice(f.target, g.target)) throw DomainMismatch("universal map: f and g need a common target");
}

std::string describe_family(const FiniteLattice& l, const DistributivityCheck& d) {
  std::string s = "equation " + std::to_string(d.equation) + " fails for the family";
  for (auto [a, b] : d.family) s += " (" + l.label(a) + "," + l.label(b) + ")";
  return s;
}

}  // namespace

SupMap universal_map_join_form(const SupLatTensor& t, const SupMap& f, const SupMap& g) {
  require_factors(t, f, g);
  const auto& m = *f.target;
  const PairIndex p{t.v->size(), t.w->size()};
  SupMap h{t.lattice, f.target, std::vector<Index>(t.lattice->size())};
  for (std::size_t c = 0; c < h.table.size(); ++c) {
    Index r = m.bottom();
    t.concepts->extent(c).for_each([&](std::size_t k) {
      auto [x, y] = p.unflat(k);
      r = m.join(r, m.meet(f(x), g(y)));
    });
    h.table[c] = r;
  }
  return h;
}

SupMap universal_map_meet_form(const SupLatTensor& t, const SupMap& f, const SupMap& g) {
  require_factors(t, f, g);
  const auto& m = *f.target;
  const PairIndex p{t.v->size(), t.w->size()};
  SupMap h{t.lattice, f.target, std::vector<Index>(t.lattice->size())};
  for (std::size_t c = 0; c < h.table.size(); ++c) {
    Index r = m.top();
    t.concepts->intent(c).for_each([&](std::size_t k) {
      auto [w, z] = p.unflat(k);
      r = m.meet(r, m.join(f(w), g(z)));
    });
    h.table[c] = r;
  }
  return h;
}

SupMap universal_map(const SupLatTensor& t, const SupMap& f, const SupMap& g, bool check_precondition) {
  require_factors(t, f, g);
  if (check_precondition) {
    auto d = is_mutually_distributive(*f.target, image_of(f), image_of(g));
    if (!d.ok) throw PreconditionFailed("images are not mutually distributive: " + describe_family(*f.target, d));
  }
  auto h = universal_map_join_form(t, f, g);
  if (h.table != universal_map_meet_form(t, f, g).table)
    throw Error("join form and meet form of the universal map disagree");
  return h;
}

SupMap tensor_of_maps(const SupMap& f, const SupMap& g) {
  const auto& src = suplat_concept_tensor(f.source, g.source);
  const auto& tgt = suplat_concept_tensor(f.target, g.target);
  // Images of eps1 o f and eps2 o g sit inside the mutually distributive eps-images.
  return universal_map(src, compose(tgt.eps1, f), compose(tgt.eps2, g), false);
}

SupMap suplat_associator(const LatticePtr& u, const LatticePtr& v, const LatticePtr& w) {
  const auto& uv = suplat_concept_tensor(u, v);
  const auto& vw = suplat_concept_tensor(v, w);
  const auto& left = suplat_concept_tensor(uv.lattice, w);
  const auto& right = suplat_concept_tensor(u, vw.lattice);
  // f(x wedge y) = x wedge (y wedge 1), then glue in z as 1 wedge (1 wedge z).
  auto f = universal_map(uv, right.eps1, compose(right.eps2, vw.eps1), false);
  auto g = compose(right.eps2, vw.eps2);
  return universal_map(left, f, g, false);
}

SupMap suplat_symmetry(const LatticePtr& v, const LatticePtr& w) {
  const auto& vw = suplat_concept_tensor(v, w);
  const auto& wv = suplat_concept_tensor(w, v);
  return universal_map(vw, wv.eps2, wv.eps1, false);
}

namespace {

SupMap two_into(const LatticePtr& v) { return SupMap{two_lattice(), v, {v->bottom(), v->top()}}; }

}  // namespace

SupMap suplat_unitor_right(const LatticePtr& v) {
  return universal_map(suplat_concept_tensor(v, two_lattice()), identity_map(v), two_into(v), false);
}

SupMap suplat_unitor_left(const LatticePtr& v) {
  return universal_map(suplat_concept_tensor(two_lattice(), v), two_into(v), identity_map(v), false);
}

SupMap suplat_unitor_right_inverse(const LatticePtr& v) { return suplat_concept_tensor(v, two_lattice()).eps1; }

SupMap suplat_unitor_left_inverse(const LatticePtr& v) { return suplat_concept_tensor(two_lattice(), v).eps2; }

SupMap suplat_discard(const LatticePtr& v) {
  SupMap d{v, two_lattice(), std::vector<Index>(v->size(), 1)};
  d.table[v->bottom()] = 0;
  return d;
}

SupMap phi_iso(const ContextPtr& k1, const ContextPtr& k2) {
  auto v = concept_functor_obj(k1);
  auto w = concept_functor_obj(k2);
  const auto& t = suplat_concept_tensor(v, w);
  auto c1 = concept_lattice(k1);
  auto c2 = concept_lattice(k2);
  auto kk = concept_tensor(k1, k2);
  auto target = concept_lattice(kk);
  const PairIndex p{v->size(), w->size()};
  SupMap phi{t.lattice, concept_functor_obj(kk), std::vector<Index>(t.lattice->size())};
  for (std::size_t c = 0; c < phi.table.size(); ++c) {
    Bitset gen(kk->num_objects());
    t.concepts->extent(c).for_each([&](std::size_t k) {
      auto [i, j] = p.unflat(k);
      c1->extent(i).for_each([&](std::size_t g1) {
        c2->extent(j).for_each([&](std::size_t g2) { gen.set(g1 * k2->num_objects() + g2); });
      });
    });
    phi.table[c] = target->concept_of_objects(gen);
  }
  return phi;
}

DualTensorIso dual_strong_monoidal_check(const LatticePtr& v, const LatticePtr& w) {
  const auto& t = suplat_concept_tensor(v, w);
  const auto& td = suplat_concept_tensor(dual_lattice(v), dual_lattice(w));
  DualTensorIso out{SupMap{dual_lattice(t.lattice), td.lattice, std::vector<Index>(t.lattice->size())}, false};
  bool complete = true;
  for (std::size_t c = 0; c < t.concepts->size(); ++c) {
    auto i = td.concepts->find_extent(t.concepts->intent(c));
    if (!i) {
      complete = false;
      break;
    }
    out.map.table[c] = *i;
  }
  out.is_iso = complete && is_isomorphism(*out.map.source, *out.map.target, out.map.table);
  return out;
}

}  // namespace cxtcat
