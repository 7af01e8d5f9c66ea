#include "cxtcat/concept_lattice.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace cxtcat {

ConceptLattice::ConceptLattice(ContextPtr context, std::vector<Bitset> extents)
    : context_(std::move(context)), extents_(std::move(extents)), tables_(std::make_shared<Tables>()) {
  std::sort(extents_.begin(), extents_.end(), lectic_less);
  const auto n = extents_.size();
  intents_.reserve(n);
  for (Index i = 0; i < n; ++i) {
    intents_.push_back(context_->intent_of(extents_[i]));
    by_extent_.emplace(extents_[i], i);
    by_intent_.emplace(intents_[i], i);
  }
  leq_ = BitMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (extents_[i].is_subset_of(extents_[j])) leq_.set(i, j);
  // Sorted numerically, the empty-most extent comes first and the full one last.
  bottom_ = 0;
  top_ = static_cast<Index>(n - 1);
}

Concept ConceptLattice::concept_at(std::size_t i) const {
  return Concept{object_set(*context_, extents_[i]), attribute_set(*context_, intents_[i])};
}

void ConceptLattice::build_tables() const {
  std::call_once(tables_->once, [this] {
    const auto n = size();
    tables_->meet.assign(n * n, 0);
    tables_->join.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      tables_->meet[i * n + i] = static_cast<Index>(i);
      tables_->join[i * n + i] = static_cast<Index>(i);
      for (std::size_t j = i + 1; j < n; ++j) {
        Index m;
        if (leq_.at(i, j))
          m = static_cast<Index>(i);
        else if (leq_.at(j, i))
          m = static_cast<Index>(j);
        else
          m = by_extent_.at(extents_[i] & extents_[j]);
        Index jn;
        if (leq_.at(i, j))
          jn = static_cast<Index>(j);
        else if (leq_.at(j, i))
          jn = static_cast<Index>(i);
        else
          jn = by_intent_.at(intents_[i] & intents_[j]);
        tables_->meet[i * n + j] = tables_->meet[j * n + i] = m;
        tables_->join[i * n + j] = tables_->join[j * n + i] = jn;
      }
    }
  });
}

ConceptLattice::Index ConceptLattice::meet(std::size_t i, std::size_t j) const {
  build_tables();
  return tables_->meet[i * size() + j];
}

ConceptLattice::Index ConceptLattice::join(std::size_t i, std::size_t j) const {
  build_tables();
  return tables_->join[i * size() + j];
}

const std::vector<ConceptLattice::Index>& ConceptLattice::meet_table() const {
  build_tables();
  return tables_->meet;
}

const std::vector<ConceptLattice::Index>& ConceptLattice::join_table() const {
  build_tables();
  return tables_->join;
}

std::optional<ConceptLattice::Index> ConceptLattice::find_extent(const Bitset& extent) const {
  auto it = by_extent_.find(extent);
  if (it == by_extent_.end()) return std::nullopt;
  return it->second;
}

std::optional<ConceptLattice::Index> ConceptLattice::find_intent(const Bitset& intent) const {
  auto it = by_intent_.find(intent);
  if (it == by_intent_.end()) return std::nullopt;
  return it->second;
}

ConceptLattice::Index ConceptLattice::concept_of_objects(const Bitset& objects) const {
  return by_intent_.at(context_->intent_of(objects));
}

ConceptLattice::Index ConceptLattice::concept_of_attributes(const Bitset& attributes) const {
  return by_extent_.at(context_->extent_of(attributes));
}

std::vector<std::pair<ConceptLattice::Index, ConceptLattice::Index>> ConceptLattice::covers() const {
  std::vector<std::pair<Index, Index>> out;
  const auto n = size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !leq_.at(i, j)) continue;
      bool covered = true;
      for (std::size_t k = 0; k < n && covered; ++k)
        if (k != i && k != j && leq_.at(i, k) && leq_.at(k, j)) covered = false;
      if (covered) out.emplace_back(static_cast<Index>(i), static_cast<Index>(j));
    }
  }
  return out;
}

namespace {

template <class Close>
std::vector<Bitset> next_closure(std::size_t n, Close close, std::size_t max_count) {
  std::vector<Bitset> out;
  Bitset current = close(Bitset(n));
  out.push_back(current);
  while (true) {
    bool advanced = false;
    for (std::size_t i = n; i-- > 0;) {
      if (current.test(i)) continue;
      Bitset candidate(n);
      for (std::size_t j = 0; j < i; ++j)
        if (current.test(j)) candidate.set(j);
      candidate.set(i);
      candidate = close(candidate);
      bool canonical = true;
      for (std::size_t j = 0; j < i && canonical; ++j)
        if (candidate.test(j) && !current.test(j)) canonical = false;
      if (canonical) {
        current = std::move(candidate);
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
    out.push_back(current);
    if (out.size() > max_count)
      throw SizeCapExceeded("closure enumeration exceeded " + std::to_string(max_count) + " closed sets");
  }
  return out;
}

}  // namespace

std::vector<Bitset> all_extents(const FormalContext& k, std::size_t max_count) {
  return next_closure(k.num_objects(), [&](const Bitset& a) { return k.close_objects(a); }, max_count);
}

std::vector<Bitset> all_intents(const FormalContext& k, std::size_t max_count) {
  return next_closure(k.num_attributes(), [&](const Bitset& b) { return k.close_attributes(b); }, max_count);
}

ConceptLatticePtr enumerate_concepts(const ContextPtr& k, const Limits& limits) {
  return std::make_shared<const ConceptLattice>(k, all_extents(*k, limits.max_concepts));
}

namespace {
struct LatticeMemo {
  std::mutex mutex;
  std::multimap<std::uint64_t, std::pair<ContextPtr, ConceptLatticePtr>> entries;
};
LatticeMemo& lattice_memo() {
  static LatticeMemo memo;
  return memo;
}
}  // namespace

ConceptLatticePtr concept_lattice(const ContextPtr& k) {
  auto& memo = lattice_memo();
  {
    std::lock_guard lock(memo.mutex);
    auto [lo, hi] = memo.entries.equal_range(k->fingerprint());
    for (auto it = lo; it != hi; ++it)
      if (same_context(it->second.first, k)) return it->second.second;
  }
  auto lattice = enumerate_concepts(k);
  std::lock_guard lock(memo.mutex);
  memo.entries.emplace(k->fingerprint(), std::make_pair(k, lattice));
  return lattice;
}

ConceptLattice::Index lattice_meet(const ConceptLattice& l, std::span<const std::size_t> concepts) {
  Bitset extent = l.context()->all_objects();
  for (auto c : concepts) {
    if (c >= l.size()) throw DomainMismatch("concept index out of range");
    extent &= l.extent(c);
  }
  return *l.find_extent(extent);
}

ConceptLattice::Index lattice_join(const ConceptLattice& l, std::span<const std::size_t> concepts) {
  Bitset objects = l.context()->no_objects();
  for (auto c : concepts) {
    if (c >= l.size()) throw DomainMismatch("concept index out of range");
    objects |= l.extent(c);
  }
  return l.concept_of_objects(objects);
}

}  // namespace cxtcat
