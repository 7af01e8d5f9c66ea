#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cxtcat/bitset.hpp"
#include "cxtcat/concept_lattice.hpp"
#include "cxtcat/limits.hpp"

namespace cxtcat {

/// A finite lattice given by its order matrix. Meet and join tables are
/// computed (and the lattice property checked) at construction.
class FiniteLattice {
 public:
  using Index = std::uint32_t;

  /// Throws InvalidArgument if `leq` is not a partial order or some pair
  /// lacks a meet or join.
  FiniteLattice(std::string name, std::vector<std::string> labels, BitMatrix leq);

  const std::string& name() const noexcept { return name_; }
  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  std::optional<Index> index_of(const std::string& label) const;

  bool leq(std::size_t i, std::size_t j) const noexcept { return leq_.at(i, j); }
  const BitMatrix& leq_matrix() const noexcept { return leq_; }
  Index meet(std::size_t i, std::size_t j) const noexcept { return meet_[i * size() + j]; }
  Index join(std::size_t i, std::size_t j) const noexcept { return join_[i * size() + j]; }
  Index bottom() const noexcept { return bottom_; }
  Index top() const noexcept { return top_; }

  Index join_of(std::span<const Index> xs) const;
  Index meet_of(std::span<const Index> xs) const;
  Index join_of(const Bitset& xs) const;
  Index meet_of(const Bitset& xs) const;

  /// {y | y <= x} and {y | x <= y}.
  const Bitset& down_set(std::size_t x) const noexcept { return down_[x]; }
  const Bitset& up_set(std::size_t x) const noexcept { return up_[x]; }

  /// Elements with exactly one lower cover.
  std::vector<Index> join_irreducibles() const;
  /// Elements with exactly one upper cover.
  std::vector<Index> meet_irreducibles() const;
  std::vector<std::pair<Index, Index>> covers() const;

  /// Hash of the order matrix and labels (not the name).
  std::uint64_t fingerprint() const noexcept { return fingerprint_; }

 private:
  std::string name_;
  std::vector<std::string> labels_;
  BitMatrix leq_;
  std::vector<Index> meet_, join_;
  std::vector<Bitset> down_, up_;
  Index bottom_ = 0, top_ = 0;
  std::uint64_t fingerprint_ = 0;
};

using LatticePtr = std::shared_ptr<const FiniteLattice>;

LatticePtr make_lattice(std::string name, std::vector<std::string> labels, BitMatrix leq);
/// Structural equality of labels and order.
bool operator==(const FiniteLattice& a, const FiniteLattice& b);
bool same_lattice(const LatticePtr& a, const LatticePtr& b);

/// V* : same elements, reversed order. The name is kept so dualising twice
/// gives back an equal lattice.
LatticePtr dual_lattice(const FiniteLattice& v);
inline LatticePtr dual_lattice(const LatticePtr& v) { return dual_lattice(*v); }

/// Concept lattice viewed as an abstract lattice; labels are the extents
/// written as "{g1,g2}".
LatticePtr lattice_of(const ConceptLattice& l);

/// Inclusion order on a family of subsets closed under intersection (the
/// full set must be present). Labels are "{i,j}" over 0-based indices.
LatticePtr lattice_from_closure_system(const std::vector<Bitset>& closed, std::string name = "");

LatticePtr chain_lattice(std::size_t n);
/// Power set of an n-element set (2 = powerset of 1, diamond = powerset of 2).
LatticePtr boolean_lattice(std::size_t n);
/// 0 < a, b < 1.
LatticePtr diamond_lattice();
LatticePtr m3_lattice();
LatticePtr n5_lattice();
/// The two-element lattice 2 = {0 < 1}.
LatticePtr two_lattice();

/// Order isomorphism V -> W as a table, if one exists.
std::optional<std::vector<FiniteLattice::Index>> find_isomorphism(const FiniteLattice& v, const FiniteLattice& w);
bool is_isomorphism(const FiniteLattice& v, const FiniteLattice& w, std::span<const FiniteLattice::Index> f);

// ---------------------------------------------------------------------------

/// A function between finite lattices, stored as an element table. Whether it
/// preserves joins is a property, checked by is_sup_map.
struct SupMap {
  LatticePtr source, target;
  std::vector<FiniteLattice::Index> table;

  FiniteLattice::Index operator()(std::size_t x) const { return table[x]; }
  friend bool operator==(const SupMap& a, const SupMap& b) {
    return a.table == b.table && same_lattice(a.source, b.source) && same_lattice(a.target, b.target);
  }
};

SupMap identity_map(const LatticePtr& v);
/// g o f.
SupMap compose(const SupMap& g, const SupMap& f);
/// x -> 0.
SupMap zero_map(const LatticePtr& v, const LatticePtr& w);

/// f(0) = 0 and f(x v y) = f(x) v f(y).
bool is_sup_map(const SupMap& f);
/// f(join S) = join f(S) for every subset S (caps at limits.max_size elements).
bool is_sup_map_exhaustive(const SupMap& f, const Limits& limits = Limits::global());
/// Sup map that also sends 1 to 1 and preserves binary meets.
bool is_complete_hom(const SupMap& f);
bool is_complete_hom_exhaustive(const SupMap& f, const Limits& limits = Limits::global());
bool is_monotone(const SupMap& f);

/// f*: W* -> V*, f*(w) = join{v | f(v) <= w}.
SupMap adjoint(const SupMap& f);

/// Every sup map V -> W, sorted by table.
std::vector<SupMap> enumerate_sup_maps(const LatticePtr& v, const LatticePtr& w,
                                       const Limits& limits = Limits::global());

}  // namespace cxtcat
