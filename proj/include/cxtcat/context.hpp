#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cxtcat/bitset.hpp"
#include "cxtcat/errors.hpp"

namespace cxtcat {

/// A finite formal context (G, M, I). Immutable once constructed; rows
/// (g') and columns (m') are both kept so either derivation is a bitwise AND.
class FormalContext {
 public:
  FormalContext(std::string name, std::vector<std::string> objects, std::vector<std::string> attributes,
                BitMatrix incidence);

  const std::string& name() const noexcept { return name_; }
  const std::vector<std::string>& objects() const noexcept { return objects_; }
  const std::vector<std::string>& attributes() const noexcept { return attributes_; }
  const BitMatrix& incidence() const noexcept { return incidence_; }
  std::size_t num_objects() const noexcept { return objects_.size(); }
  std::size_t num_attributes() const noexcept { return attributes_.size(); }
  bool incident(std::size_t g, std::size_t m) const noexcept { return incidence_.at(g, m); }

  /// g'
  const Bitset& object_intent(std::size_t g) const noexcept { return incidence_.row(g); }
  /// m'
  const Bitset& attribute_extent(std::size_t m) const noexcept { return columns_.row(m); }

  /// Structural fingerprint over labels and incidence (the name is not part
  /// of a context's identity).
  std::uint64_t fingerprint() const noexcept { return fingerprint_; }

  // Raw derivation/closure on bitsets sized to G (resp. M).
  Bitset intent_of(const Bitset& objects) const;
  Bitset extent_of(const Bitset& attributes) const;
  Bitset close_objects(const Bitset& objects) const { return extent_of(intent_of(objects)); }
  Bitset close_attributes(const Bitset& attributes) const { return intent_of(extent_of(attributes)); }
  bool is_extent(const Bitset& objects) const { return close_objects(objects) == objects; }
  bool is_intent(const Bitset& attributes) const { return close_attributes(attributes) == attributes; }

  std::optional<std::size_t> object_index(const std::string& label) const;
  std::optional<std::size_t> attribute_index(const std::string& label) const;

  Bitset no_objects() const { return Bitset(num_objects()); }
  Bitset all_objects() const { return Bitset::full(num_objects()); }
  Bitset no_attributes() const { return Bitset(num_attributes()); }
  Bitset all_attributes() const { return Bitset::full(num_attributes()); }

 private:
  std::string name_;
  std::vector<std::string> objects_;
  std::vector<std::string> attributes_;
  BitMatrix incidence_;
  BitMatrix columns_;
  std::uint64_t fingerprint_ = 0;
};

using ContextPtr = std::shared_ptr<const FormalContext>;

ContextPtr make_context(std::string name, std::vector<std::string> objects, std::vector<std::string> attributes,
                        BitMatrix incidence);

/// Structural equality: labels and incidence, ignoring the name.
bool operator==(const FormalContext& a, const FormalContext& b);
bool same_context(const ContextPtr& a, const ContextPtr& b);
/// Throws DomainMismatch naming `what` unless the two contexts coincide.
void require_same_context(const ContextPtr& a, const ContextPtr& b, const char* what);

/// A subset of G or M that remembers which context it indexes into.
template <class Tag>
class IndexSet {
 public:
  IndexSet(Bitset bits, std::uint64_t owner) : bits_(std::move(bits)), owner_(owner) {}
  const Bitset& bits() const noexcept { return bits_; }
  std::uint64_t owner() const noexcept { return owner_; }
  std::size_t count() const noexcept { return bits_.count(); }
  bool contains(std::size_t i) const noexcept { return bits_.test(i); }
  std::vector<std::size_t> indices() const { return bits_.indices(); }
  bool is_subset_of(const IndexSet& o) const {
    check(o);
    return bits_.is_subset_of(o.bits_);
  }
  friend bool operator==(const IndexSet& a, const IndexSet& b) noexcept {
    return a.owner_ == b.owner_ && a.bits_ == b.bits_;
  }

 private:
  void check(const IndexSet& o) const {
    if (o.owner_ != owner_) throw DomainMismatch("index sets belong to different contexts");
  }
  Bitset bits_;
  std::uint64_t owner_;
};

struct ObjectTag;
struct AttributeTag;
using ObjectSet = IndexSet<ObjectTag>;
using AttributeSet = IndexSet<AttributeTag>;

ObjectSet object_set(const FormalContext& k, std::span<const std::size_t> indices);
ObjectSet object_set(const FormalContext& k, const std::vector<std::string>& labels);
AttributeSet attribute_set(const FormalContext& k, std::span<const std::size_t> indices);
AttributeSet attribute_set(const FormalContext& k, const std::vector<std::string>& labels);
inline ObjectSet object_set(const FormalContext& k, Bitset bits) { return ObjectSet(std::move(bits), k.fingerprint()); }
inline AttributeSet attribute_set(const FormalContext& k, Bitset bits) {
  return AttributeSet(std::move(bits), k.fingerprint());
}

/// A' : attributes shared by every object of A.
AttributeSet derive_objects(const FormalContext& k, const ObjectSet& a);
/// B' : objects having every attribute of B.
ObjectSet derive_attributes(const FormalContext& k, const AttributeSet& b);
ObjectSet close_objects(const FormalContext& k, const ObjectSet& a);
AttributeSet close_attributes(const FormalContext& k, const AttributeSet& b);

std::vector<std::string> labels_of(const std::vector<std::string>& universe, const Bitset& set);

/// K* = (M, G, I^T). The name is kept, so dual_context is an exact involution.
ContextPtr dual_context(const FormalContext& k);
inline ContextPtr dual_context(const ContextPtr& k) { return dual_context(*k); }

/// S_A = (A, A, !=).
ContextPtr context_from_set(const std::vector<std::string>& elements, std::string name = "");
/// The trivial context I = S_{*}.
ContextPtr trivial_context();
/// F(P) = (P, P, <=) for a finite poset given by its order matrix.
ContextPtr context_from_poset(const std::vector<std::string>& elements, const BitMatrix& leq, std::string name = "");

}  // namespace cxtcat
