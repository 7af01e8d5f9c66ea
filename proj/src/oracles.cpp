#include "cxtcat/oracles.hpp"

#include <algorithm>

#include "cxtcat/monoidal.hpp"

namespace cxtcat {

std::vector<Bitset> oracle_extents(const FormalContext& k, const Limits& limits) {
  const auto n = k.num_objects();
  if (n > limits.max_size) throw SizeCapExceeded("subset oracle over " + std::to_string(n) + " objects");
  std::vector<Bitset> out;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    Bitset a(n);
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1U) a.set(i);
    out.push_back(k.extent_of(k.intent_of(a)));
  }
  std::sort(out.begin(), out.end(), lectic_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<BitMatrix> oracle_bonds(const FormalContext& k1, const FormalContext& k2, const Limits& limits) {
  const auto n = k1.num_objects(), m = k2.num_attributes();
  if (n * m > limits.max_size) throw SizeCapExceeded("naive bond filter over " + std::to_string(n * m) + " cells");
  std::vector<BitMatrix> out;
  const std::uint64_t total = std::uint64_t{1} << (n * m);
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    BitMatrix b(n, m);
    for (std::size_t c = 0; c < n * m; ++c)
      if (mask >> c & 1U) b.set(c / m, c % m);
    bool ok = true;
    for (std::size_t g = 0; g < n && ok; ++g) ok = k2.intent_of(k2.extent_of(b.row(g))) == b.row(g);
    for (std::size_t a = 0; a < m && ok; ++a) {
      const Bitset col = b.column(a);
      ok = k1.extent_of(k1.intent_of(col)) == col;
    }
    if (ok) out.push_back(std::move(b));
  }
  std::sort(out.begin(), out.end(),
            [](const BitMatrix& a, const BitMatrix& b) { return lectic_less(a.flatten(), b.flatten()); });
  return out;
}

std::vector<SupMap> oracle_sup_maps(const LatticePtr& v, const LatticePtr& w, std::size_t max_functions) {
  const auto n = v->size(), m = w->size();
  double count = 1;
  for (std::size_t i = 0; i < n; ++i) count *= static_cast<double>(m);
  if (count > static_cast<double>(max_functions)) throw SizeCapExceeded("too many functions to scan");
  std::vector<SupMap> out;
  std::vector<FiniteLattice::Index> table(n, 0);
  while (true) {
    bool ok = table[v->bottom()] == w->bottom();
    for (std::size_t a = 0; a < n && ok; ++a)
      for (std::size_t b = 0; b < n && ok; ++b) ok = table[v->join(a, b)] == w->join(table[a], table[b]);
    if (ok) out.push_back(SupMap{v, w, table});
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++table[i] < m) break;
      table[i] = 0;
      if (i == 0) {
        i = n + 1;
        break;
      }
    }
    if (i == n + 1 || n == 0) break;
  }
  std::sort(out.begin(), out.end(), [](const SupMap& a, const SupMap& b) { return a.table < b.table; });
  return out;
}

namespace {

Bitset bottom_extent(const FormalContext& k) { return k.extent_of(k.intent_of(k.no_objects())); }

std::vector<Bitset> nonzero_extents(const FormalContext& k) {
  auto all = oracle_extents(k);
  const Bitset bottom = bottom_extent(k);
  std::erase(all, bottom);
  return all;
}

bool product_within(const Bitset& a, const Bitset& b, const Bitset& rel, std::size_t nb) {
  bool ok = true;
  a.for_each([&](std::size_t i) {
    b.for_each([&](std::size_t j) {
      if (!rel.test(i * nb + j)) ok = false;
    });
  });
  return ok;
}

}  // namespace

std::vector<bool> oracle_cup(const ContextPtr& k) {
  auto kd = dual_context(*k);
  auto t = lattice_tensor(kd, k);
  auto lattice = concept_lattice(t);
  const auto us = nonzero_extents(*kd);
  const auto vs = nonzero_extents(*k);
  std::vector<bool> out(lattice->size(), false);
  for (std::size_t c = 0; c < lattice->size(); ++c) {
    const auto& x = lattice->extent(c);
    for (const auto& u : us)
      for (const auto& v : vs) {
        if (out[c] || !product_within(u, v, x, k->num_objects())) continue;
        // u read as a concept of K has extent u'; beta(u, v) = [v not below it].
        if (!v.is_subset_of(k->extent_of(u))) out[c] = true;
      }
  }
  return out;
}

Bitset oracle_interpretation(const Lexicon& lex, const std::vector<std::string>& sentence,
                             const ReductionWitness& witness, const std::vector<Bitset>& states,
                             std::size_t max_tuples) {
  ProtoType all;
  std::vector<std::size_t> block_start;
  for (const auto& w : sentence) {
    block_start.push_back(all.size());
    const auto& t = lex.word(w).type;
    all.insert(all.end(), t.begin(), t.end());
  }
  block_start.push_back(all.size());
  const auto n = all.size();
  std::vector<ContextPtr> ctx;
  std::vector<std::vector<Bitset>> choices;
  for (const auto& b : all) {
    ctx.push_back(lex.factor(b));
    choices.push_back(nonzero_extents(*ctx.back()));
  }
  std::vector<bool> contracted(n, false);
  for (auto [i, j] : witness.pairs) contracted[i] = contracted[j] = true;
  std::size_t target = n;
  for (std::size_t i = 0; i < n; ++i)
    if (!contracted[i]) {
      if (target != n) throw InvalidArgument("lattice-side oracle handles single-factor targets only");
      target = i;
    }
  if (target == n) throw InvalidArgument("lattice-side oracle handles single-factor targets only");

  // Per word, the tuples of factor extents whose product lies inside the state.
  std::vector<std::vector<std::vector<std::size_t>>> word_tuples(sentence.size());
  for (std::size_t w = 0; w < sentence.size(); ++w) {
    const auto lo = block_start[w], hi = block_start[w + 1];
    Factors f;
    for (std::size_t i = lo; i < hi; ++i) f.contexts.push_back(ctx[i]);
    std::vector<std::size_t> pick(hi - lo, 0);
    std::size_t visited = 0;
    auto rec = [&](auto&& self, std::size_t d) -> void {
      if (++visited > max_tuples) throw SizeCapExceeded("oracle tuple budget exceeded");
      if (d == pick.size()) {
        // Check every cell of the product.
        bool inside = true;
        std::vector<std::size_t> coords(pick.size());
        auto cells = [&](auto&& cself, std::size_t e) -> void {
          if (!inside) return;
          if (e == pick.size()) {
            if (!states[w].test(f.encode(coords))) inside = false;
            return;
          }
          choices[lo + e][pick[e]].for_each([&](std::size_t g) {
            coords[e] = g;
            cself(cself, e + 1);
          });
        };
        cells(cells, 0);
        if (inside) word_tuples[w].push_back(pick);
        return;
      }
      for (std::size_t c = 0; c < choices[lo + d].size(); ++c) {
        pick[d] = c;
        self(self, d + 1);
      }
    };
    rec(rec, 0);
  }

  auto beta = [&](std::size_t i, const Bitset& left, std::size_t j, const Bitset& right) {
    // The factor of even order is K; the other is K*, whose extents are intents of K.
    const bool left_is_k = all[i].order % 2 == 0;
    const auto& k = left_is_k ? *ctx[i] : *ctx[j];
    const Bitset& v = left_is_k ? left : right;
    const Bitset& u = left_is_k ? right : left;
    return !v.is_subset_of(k.extent_of(u));
  };

  const auto& tk = *ctx[target];
  Bitset acc = tk.no_objects();
  std::vector<std::size_t> chosen(n, 0);
  std::size_t visited = 0;
  auto combine = [&](auto&& self, std::size_t w) -> void {
    if (++visited > max_tuples) throw SizeCapExceeded("oracle tuple budget exceeded");
    if (w == sentence.size()) {
      for (auto [i, j] : witness.pairs)
        if (!beta(i, choices[i][chosen[i]], j, choices[j][chosen[j]])) return;
      acc |= choices[target][chosen[target]];
      return;
    }
    for (const auto& t : word_tuples[w]) {
      for (std::size_t e = 0; e < t.size(); ++e) chosen[block_start[w] + e] = t[e];
      self(self, w + 1);
    }
  };
  combine(combine, 0);
  return tk.extent_of(tk.intent_of(acc));
}

}  // namespace cxtcat
