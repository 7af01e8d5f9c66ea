#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cxtcat/context.hpp"
#include "cxtcat/limits.hpp"

namespace cxtcat {

struct Concept {
  ObjectSet extent;
  AttributeSet intent;
  friend bool operator==(const Concept&, const Concept&) = default;
};

/// All concepts of a context, sorted by extent read as a binary number
/// (object 0 least significant). The order matrix is built eagerly; the
/// meet/join tables on first use.
class ConceptLattice {
 public:
  using Index = std::uint32_t;

  ConceptLattice(ContextPtr context, std::vector<Bitset> extents);

  const ContextPtr& context() const noexcept { return context_; }
  std::size_t size() const noexcept { return extents_.size(); }
  const Bitset& extent(std::size_t i) const noexcept { return extents_[i]; }
  const Bitset& intent(std::size_t i) const noexcept { return intents_[i]; }
  Concept concept_at(std::size_t i) const;

  bool leq(std::size_t i, std::size_t j) const noexcept { return leq_.at(i, j); }
  const BitMatrix& leq_matrix() const noexcept { return leq_; }
  Index bottom() const noexcept { return bottom_; }
  Index top() const noexcept { return top_; }

  Index meet(std::size_t i, std::size_t j) const;
  Index join(std::size_t i, std::size_t j) const;
  const std::vector<Index>& meet_table() const;
  const std::vector<Index>& join_table() const;

  /// Index of the concept whose extent is exactly `extent`, if any.
  std::optional<Index> find_extent(const Bitset& extent) const;
  std::optional<Index> find_intent(const Bitset& intent) const;
  /// Index of the concept generated by an arbitrary object set (its closure).
  Index concept_of_objects(const Bitset& objects) const;
  /// Index of the concept generated by an arbitrary attribute set.
  Index concept_of_attributes(const Bitset& attributes) const;

  /// Cover pairs (i, j) with i < j and nothing strictly between.
  std::vector<std::pair<Index, Index>> covers() const;

 private:
  struct Tables {
    std::once_flag once;
    std::vector<Index> meet;
    std::vector<Index> join;
  };
  void build_tables() const;

  ContextPtr context_;
  std::vector<Bitset> extents_;
  std::vector<Bitset> intents_;
  BitMatrix leq_;
  Index bottom_ = 0;
  Index top_ = 0;
  std::unordered_map<Bitset, Index> by_extent_;
  std::unordered_map<Bitset, Index> by_intent_;
  std::shared_ptr<Tables> tables_;
};

using ConceptLatticePtr = std::shared_ptr<const ConceptLattice>;

/// Every extent of a context, in NextClosure order.
std::vector<Bitset> all_extents(const FormalContext& k, std::size_t max_count = Limits::global().max_concepts);
/// Every intent of a context (extents of the dual), in NextClosure order.
std::vector<Bitset> all_intents(const FormalContext& k, std::size_t max_count = Limits::global().max_concepts);

/// NextClosure enumeration over object subsets.
ConceptLatticePtr enumerate_concepts(const ContextPtr& k, const Limits& limits = Limits::global());

/// Memoised enumerate_concepts keyed on the context's structure.
ConceptLatticePtr concept_lattice(const ContextPtr& k);

/// Meet of a set of concepts: extent = intersection of extents. Empty set -> top.
ConceptLattice::Index lattice_meet(const ConceptLattice& l, std::span<const std::size_t> concepts);
/// Join of a set of concepts: extent = closure of the union. Empty set -> bottom.
ConceptLattice::Index lattice_join(const ConceptLattice& l, std::span<const std::size_t> concepts);

}  // namespace cxtcat
