#include "cxtcat/lattice.hpp"

#include <algorithm>
#include <numeric>

#include "fnv.hpp"

namespace cxtcat {

using Index = FiniteLattice::Index;

FiniteLattice::FiniteLattice(std::string name, std::vector<std::string> labels, BitMatrix leq)
    : name_(std::move(name)), labels_(std::move(labels)), leq_(std::move(leq)) {
  const auto n = labels_.size();
  if (n == 0) throw InvalidArgument("a lattice has at least one element");
  if (leq_.rows() != n || leq_.cols() != n) throw InvalidArgument("order matrix has the wrong shape");
  for (std::size_t i = 0; i < n; ++i) {
    if (!leq_.at(i, i)) throw InvalidArgument("order is not reflexive at " + labels_[i]);
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && leq_.at(i, j) && leq_.at(j, i))
        throw InvalidArgument("order is not antisymmetric: " + labels_[i] + ", " + labels_[j]);
  }
  up_ = leq_.row_sets();
  down_ = leq_.transpose().row_sets();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j : up_[i].indices())
      if (!up_[j].is_subset_of(up_[i])) throw InvalidArgument("order is not transitive");

  std::vector<std::size_t> down_count(n), up_count(n);
  for (std::size_t i = 0; i < n; ++i) {
    down_count[i] = down_[i].count();
    up_count[i] = up_[i].count();
  }
  // The meet of i and j is the largest common lower bound, i.e. the one whose
  // down-set is the whole intersection.
  auto greatest = [&](const Bitset& s, const std::vector<Bitset>& sets,
                      const std::vector<std::size_t>& counts) -> std::optional<Index> {
    std::optional<Index> best;
    s.for_each([&](std::size_t k) {
      if (!best || counts[k] > counts[*best]) best = static_cast<Index>(k);
    });
    if (best && sets[*best] == s) return best;
    return std::nullopt;
  };
  meet_.assign(n * n, 0);
  join_.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      auto m = greatest(down_[i] & down_[j], down_, down_count);
      auto jn = greatest(up_[i] & up_[j], up_, up_count);
      if (!m) throw InvalidArgument("no meet for " + labels_[i] + ", " + labels_[j]);
      if (!jn) throw InvalidArgument("no join for " + labels_[i] + ", " + labels_[j]);
      meet_[i * n + j] = meet_[j * n + i] = *m;
      join_[i * n + j] = join_[j * n + i] = *jn;
    }
  }
  bottom_ = top_ = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (up_count[i] == n) bottom_ = static_cast<Index>(i);
    if (down_count[i] == n) top_ = static_cast<Index>(i);
  }
  if (up_count[bottom_] != n || down_count[top_] != n) throw InvalidArgument("lattice has no bottom or top");

  detail::Fnv1a h;
  h.value(n);
  for (const auto& l : labels_) h.text(l);
  for (const auto& r : leq_.row_sets())
    for (auto w : r.words()) h.value(w);
  fingerprint_ = h.digest();
}

std::optional<Index> FiniteLattice::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<Index>(it - labels_.begin());
}

Index FiniteLattice::join_of(std::span<const Index> xs) const {
  Index r = bottom_;
  for (auto x : xs) r = join(r, x);
  return r;
}

Index FiniteLattice::meet_of(std::span<const Index> xs) const {
  Index r = top_;
  for (auto x : xs) r = meet(r, x);
  return r;
}

Index FiniteLattice::join_of(const Bitset& xs) const {
  Index r = bottom_;
  xs.for_each([&](std::size_t x) { r = join(r, x); });
  return r;
}

Index FiniteLattice::meet_of(const Bitset& xs) const {
  Index r = top_;
  xs.for_each([&](std::size_t x) { r = meet(r, x); });
  return r;
}

std::vector<std::pair<Index, Index>> FiniteLattice::covers() const {
  std::vector<std::pair<Index, Index>> out;
  const auto n = size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !leq(i, j)) continue;
      // Strictly between i and j.
      Bitset between = up_[i] & down_[j];
      if (between.count() == 2) out.emplace_back(static_cast<Index>(i), static_cast<Index>(j));
    }
  return out;
}

std::vector<Index> FiniteLattice::join_irreducibles() const {
  std::vector<std::size_t> lower(size(), 0);
  for (auto [a, b] : covers()) ++lower[b];
  std::vector<Index> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (lower[i] == 1) out.push_back(static_cast<Index>(i));
  return out;
}

std::vector<Index> FiniteLattice::meet_irreducibles() const {
  std::vector<std::size_t> upper(size(), 0);
  for (auto [a, b] : covers()) ++upper[a];
  std::vector<Index> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (upper[i] == 1) out.push_back(static_cast<Index>(i));
  return out;
}

LatticePtr make_lattice(std::string name, std::vector<std::string> labels, BitMatrix leq) {
  return std::make_shared<const FiniteLattice>(std::move(name), std::move(labels), std::move(leq));
}

bool operator==(const FiniteLattice& a, const FiniteLattice& b) {
  return a.fingerprint() == b.fingerprint() && a.labels() == b.labels() && a.leq_matrix() == b.leq_matrix();
}

bool same_lattice(const LatticePtr& a, const LatticePtr& b) { return a == b || (a && b && *a == *b); }

LatticePtr dual_lattice(const FiniteLattice& v) {
  return make_lattice(v.name(), v.labels(), v.leq_matrix().transpose());
}

namespace {

std::string brace_list(const std::vector<std::string>& items) {
  std::string s = "{";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) s += ",";
    s += items[i];
  }
  return s + "}";
}

LatticePtr from_sets(std::string name, const std::vector<Bitset>& sets, std::vector<std::string> labels) {
  const auto n = sets.size();
  BitMatrix leq(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (sets[i].is_subset_of(sets[j])) leq.set(i, j);
  return make_lattice(std::move(name), std::move(labels), std::move(leq));
}

}  // namespace

LatticePtr lattice_of(const ConceptLattice& l) {
  std::vector<Bitset> sets;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < l.size(); ++i) {
    sets.push_back(l.extent(i));
    labels.push_back(brace_list(labels_of(l.context()->objects(), l.extent(i))));
  }
  return from_sets("B(" + l.context()->name() + ")", sets, std::move(labels));
}

LatticePtr lattice_from_closure_system(const std::vector<Bitset>& closed, std::string name) {
  std::vector<Bitset> sets = closed;
  std::sort(sets.begin(), sets.end(), lectic_less);
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  if (sets.empty() || !sets.back().all()) throw InvalidArgument("closure system lacks the full set");
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = i + 1; j < sets.size(); ++j)
      if (!std::binary_search(sets.begin(), sets.end(), sets[i] & sets[j], lectic_less))
        throw InvalidArgument("family is not closed under intersection");
  std::vector<std::string> labels;
  for (const auto& s : sets) {
    std::vector<std::string> items;
    s.for_each([&](std::size_t i) { items.push_back(std::to_string(i)); });
    labels.push_back(brace_list(items));
  }
  return from_sets(std::move(name), sets, std::move(labels));
}

LatticePtr chain_lattice(std::size_t n) {
  if (n == 0) throw InvalidArgument("a chain lattice has at least one element");
  BitMatrix leq(n, n);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(std::to_string(i));
    for (std::size_t j = i; j < n; ++j) leq.set(i, j);
  }
  return make_lattice("C" + std::to_string(n), std::move(labels), std::move(leq));
}

LatticePtr two_lattice() {
  static const LatticePtr two = make_lattice("2", {"0", "1"}, chain_lattice(2)->leq_matrix());
  return two;
}

LatticePtr boolean_lattice(std::size_t n) {
  if (n > 10) throw SizeCapExceeded("boolean lattice over more than 10 atoms");
  const std::size_t size = std::size_t{1} << n;
  std::vector<Bitset> sets;
  std::vector<std::string> labels;
  for (std::size_t mask = 0; mask < size; ++mask) {
    Bitset s(n);
    std::vector<std::string> items;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1U) {
        s.set(i);
        items.push_back(std::to_string(i));
      }
    sets.push_back(s);
    labels.push_back(brace_list(items));
  }
  return from_sets("B" + std::to_string(n), sets, std::move(labels));
}

namespace {

LatticePtr from_covers(std::string name, std::vector<std::string> labels,
                       std::initializer_list<std::pair<std::size_t, std::size_t>> covers) {
  const auto n = labels.size();
  BitMatrix leq(n, n);
  for (std::size_t i = 0; i < n; ++i) leq.set(i, i);
  for (auto [a, b] : covers) leq.set(a, b);
  // Transitive closure.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (leq.at(i, k))
        for (std::size_t j = 0; j < n; ++j)
          if (leq.at(k, j)) leq.set(i, j);
  return make_lattice(std::move(name), std::move(labels), std::move(leq));
}

}  // namespace

LatticePtr diamond_lattice() { return from_covers("D4", {"0", "a", "b", "1"}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}); }

LatticePtr m3_lattice() {
  return from_covers("M3", {"0", "a", "b", "c", "1"}, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}});
}

LatticePtr n5_lattice() {
  // 0 < a < b < 1, 0 < c < 1.
  return from_covers("N5", {"0", "a", "b", "c", "1"}, {{0, 1}, {1, 2}, {2, 4}, {0, 3}, {3, 4}});
}

bool is_isomorphism(const FiniteLattice& v, const FiniteLattice& w, std::span<const Index> f) {
  if (v.size() != w.size() || f.size() != v.size()) return false;
  std::vector<bool> hit(w.size(), false);
  for (auto y : f) {
    if (y >= w.size() || hit[y]) return false;
    hit[y] = true;
  }
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      if (v.leq(i, j) != w.leq(f[i], f[j])) return false;
  return true;
}

std::optional<std::vector<Index>> find_isomorphism(const FiniteLattice& v, const FiniteLattice& w) {
  const auto n = v.size();
  if (w.size() != n) return std::nullopt;
  auto signature = [](const FiniteLattice& l, std::size_t i) {
    return std::pair{l.down_set(i).count(), l.up_set(i).count()};
  };
  {
    std::vector<std::pair<std::size_t, std::size_t>> sv, sw;
    for (std::size_t i = 0; i < n; ++i) {
      sv.push_back(signature(v, i));
      sw.push_back(signature(w, i));
    }
    std::sort(sv.begin(), sv.end());
    std::sort(sw.begin(), sw.end());
    if (sv != sw) return std::nullopt;
  }

  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return v.down_set(a).count() < v.down_set(b).count(); });
  std::vector<std::vector<Index>> lower_covers(n);
  for (auto [a, b] : v.covers()) lower_covers[b].push_back(a);

  std::vector<Index> f(n, 0);
  std::vector<bool> used(n, false);
  auto consistent = [&](std::size_t depth, Index x, Index y) {
    if (used[y] || signature(v, x) != signature(w, y)) return false;
    for (std::size_t k = 0; k < depth; ++k) {
      Index a = order[k];
      if (v.leq(a, x) != w.leq(f[a], y) || v.leq(x, a) != w.leq(y, f[a])) return false;
    }
    return true;
  };
  auto search = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == n) return true;
    const Index x = order[depth];
    auto attempt = [&](Index y) {
      if (!consistent(depth, x, y)) return false;
      f[x] = y;
      used[y] = true;
      if (self(self, depth + 1)) return true;
      used[y] = false;
      return false;
    };
    if (lower_covers[x].size() >= 2) {
      // Join-reducible: the image is forced.
      Index y = w.bottom();
      for (auto c : lower_covers[x]) y = w.join(y, f[c]);
      return attempt(y);
    }
    for (Index y = 0; y < n; ++y)
      if (attempt(y)) return true;
    return false;
  };
  if (!search(search, 0)) return std::nullopt;
  return f;
}

// ---------------------------------------------------------------------------

SupMap identity_map(const LatticePtr& v) {
  SupMap f{v, v, std::vector<Index>(v->size())};
  std::iota(f.table.begin(), f.table.end(), 0);
  return f;
}

SupMap compose(const SupMap& g, const SupMap& f) {
  if (!same_lattice(f.target, g.source)) throw DomainMismatch("compose: target of f is not the source of g");
  SupMap h{f.source, g.target, std::vector<Index>(f.table.size())};
  for (std::size_t x = 0; x < f.table.size(); ++x) h.table[x] = g.table[f.table[x]];
  return h;
}

SupMap zero_map(const LatticePtr& v, const LatticePtr& w) {
  return SupMap{v, w, std::vector<Index>(v->size(), w->bottom())};
}

bool is_monotone(const SupMap& f) {
  const auto& v = *f.source;
  const auto& w = *f.target;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      if (v.leq(i, j) && !w.leq(f(i), f(j))) return false;
  return true;
}

bool is_sup_map(const SupMap& f) {
  const auto& v = *f.source;
  const auto& w = *f.target;
  if (f.table.size() != v.size()) return false;
  if (f(v.bottom()) != w.bottom()) return false;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if (f(v.join(i, j)) != w.join(f(i), f(j))) return false;
  return true;
}

namespace {

template <class Op>
bool preserves_all_subsets(const SupMap& f, const Limits& limits, Op op) {
  const auto n = f.source->size();
  if (n > limits.max_size) throw SizeCapExceeded("exhaustive subset check over " + std::to_string(n) + " elements");
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    Bitset s(n), image(f.target->size());
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1U) {
        s.set(i);
        image.set(f(i));
      }
    if (!op(s, image)) return false;
  }
  return true;
}

}  // namespace

bool is_sup_map_exhaustive(const SupMap& f, const Limits& limits) {
  if (f.table.size() != f.source->size()) return false;
  return preserves_all_subsets(f, limits, [&](const Bitset& s, const Bitset& image) {
    return f(f.source->join_of(s)) == f.target->join_of(image);
  });
}

bool is_complete_hom(const SupMap& f) {
  if (!is_sup_map(f)) return false;
  const auto& v = *f.source;
  const auto& w = *f.target;
  if (f(v.top()) != w.top()) return false;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if (f(v.meet(i, j)) != w.meet(f(i), f(j))) return false;
  return true;
}

bool is_complete_hom_exhaustive(const SupMap& f, const Limits& limits) {
  if (!is_sup_map_exhaustive(f, limits)) return false;
  return preserves_all_subsets(f, limits, [&](const Bitset& s, const Bitset& image) {
    return f(f.source->meet_of(s)) == f.target->meet_of(image);
  });
}

SupMap adjoint(const SupMap& f) {
  const auto& v = *f.source;
  const auto& w = *f.target;
  SupMap g{dual_lattice(w), dual_lattice(v), std::vector<Index>(w.size())};
  for (std::size_t y = 0; y < w.size(); ++y) {
    Index r = v.bottom();
    for (std::size_t x = 0; x < v.size(); ++x)
      if (w.leq(f(x), y)) r = v.join(r, x);
    g.table[y] = r;
  }
  return g;
}

std::vector<SupMap> enumerate_sup_maps(const LatticePtr& v, const LatticePtr& w, const Limits& limits) {
  // A sup map is fixed by its values on join-irreducibles; assign those
  // monotonically, extend by joins and keep the extensions that preserve joins.
  auto jis = v->join_irreducibles();
  std::stable_sort(jis.begin(), jis.end(),
                   [&](Index a, Index b) { return v->down_set(a).count() < v->down_set(b).count(); });
  std::vector<Index> value(v->size(), w->bottom());
  std::vector<SupMap> out;
  auto extend = [&] {
    SupMap f{v, w, std::vector<Index>(v->size(), w->bottom())};
    for (std::size_t x = 0; x < v->size(); ++x) {
      Index r = w->bottom();
      for (auto j : jis)
        if (v->leq(j, x)) r = w->join(r, value[j]);
      f.table[x] = r;
    }
    if (is_sup_map(f)) {
      if (out.size() >= limits.max_hom) throw SizeCapExceeded("more than max_hom sup maps");
      out.push_back(std::move(f));
    }
  };
  auto search = [&](auto&& self, std::size_t depth) -> void {
    if (depth == jis.size()) {
      extend();
      return;
    }
    const Index j = jis[depth];
    Index floor = w->bottom();
    for (std::size_t k = 0; k < depth; ++k)
      if (v->leq(jis[k], j)) floor = w->join(floor, value[jis[k]]);
    for (Index y = 0; y < w->size(); ++y) {
      if (!w->leq(floor, y)) continue;
      value[j] = y;
      self(self, depth + 1);
    }
  };
  search(search, 0);
  std::sort(out.begin(), out.end(), [](const SupMap& a, const SupMap& b) { return a.table < b.table; });
  return out;
}

}  // namespace cxtcat
