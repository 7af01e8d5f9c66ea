#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "cxtcat/concept_lattice.hpp"
#include "cxtcat/context.hpp"
#include "cxtcat/limits.hpp"

namespace cxtcat {

// ---------------------------------------------------------------------------
// Relation notation. A relation R: A -> B is a BitMatrix with |A| rows of
// width |B|; row a is R(a).

/// R(X) = union of the rows over X.
Bitset r_image(const BitMatrix& r, const Bitset& x);
/// R^bullet(Y) = {a | R(a) subset of Y}.
Bitset r_bullet(const BitMatrix& r, const Bitset& y);
/// R_bullet(X) = {b | R(x, b) for all x in X}.
Bitset r_lower_bullet(const BitMatrix& r, const Bitset& x);

// ---------------------------------------------------------------------------
// The four morphism representations between K1 = (G1, M1, I) and K2.

/// Closed relation G1 -> G2.
struct ExtentRelation {
  ContextPtr source, target;
  BitMatrix rows;
};
/// Closed relation M2 -> M1.
struct IntentRelation {
  ContextPtr source, target;
  BitMatrix rows;
};
struct ChuPair {
  ExtentRelation extent;
  IntentRelation intent;
};
/// Relation G1 -> M2 with closed rows and columns.
struct Bond {
  ContextPtr source, target;
  BitMatrix matrix;
};

/// Why a relation failed a closedness check.
struct Witness {
  enum class Kind {
    None,
    ShapeMismatch,
    RowNotClosed,       ///< index = offending row
    ColumnNotClosed,    ///< index = offending column
    PreimageNotClosed,  ///< set = closed A in the target with R^bullet(A) not closed
    ClosureMismatch,    ///< set = A with close(R(A)) != close(R(close(A)))
    ChuConditionFails,  ///< index = row, index2 = column
  };
  Kind kind = Kind::None;
  std::size_t index = 0;
  std::size_t index2 = 0;
  Bitset set;
  std::string describe() const;
};

struct CheckResult {
  bool ok = true;
  Witness witness;
  explicit operator bool() const noexcept { return ok; }
  static CheckResult pass() { return {}; }
  static CheckResult fail(Witness w) { return CheckResult{false, std::move(w)}; }
};

/// Definitional check: closed rows, and R^bullet maps every extent of K2 to an extent of K1.
CheckResult is_closed_relation(const FormalContext& k1, const FormalContext& k2, const BitMatrix& r);
/// Alternate criterion: closed rows, and close(R(A)) = close(R(close(A))) for every A subset of G1.
CheckResult is_closed_relation_via_closure(const FormalContext& k1, const FormalContext& k2, const BitMatrix& r,
                                           const Limits& limits = Limits::global());
/// Rows are intents of K2 and columns are extents of K1.
CheckResult is_bond(const FormalContext& k1, const FormalContext& k2, const BitMatrix& b);
/// Chu condition R(g1) I m2 <=> g1 I S(m2) with closed rows on both sides.
CheckResult is_chu_pair(const FormalContext& k1, const FormalContext& k2, const BitMatrix& r, const BitMatrix& s);

// ---------------------------------------------------------------------------

/// A morphism of Cxt, stored as its bond. The extent/intent relations are
/// derived on first access and shared between copies.
class ContextMorphism {
 public:
  /// Unchecked; use from_bond() for validation.
  ContextMorphism(ContextPtr source, ContextPtr target, BitMatrix bond);

  const ContextPtr& source() const noexcept { return source_; }
  const ContextPtr& target() const noexcept { return target_; }
  const BitMatrix& bond() const noexcept { return bond_; }

  /// R: G1 -> G2, R(g) = B(g)'.
  const BitMatrix& extent_relation() const;
  /// R*: M2 -> M1, R*(m) = B^T(m)'.
  const BitMatrix& intent_relation() const;

  friend bool operator==(const ContextMorphism& a, const ContextMorphism& b) {
    return a.bond_ == b.bond_ && same_context(a.source_, b.source_) && same_context(a.target_, b.target_);
  }

 private:
  friend ContextMorphism morphism_with_extent_rows(ContextPtr, ContextPtr, BitMatrix bond, BitMatrix rows);
  struct Cache {
    std::once_flag extent_once, intent_once;
    BitMatrix extent, intent;
  };
  ContextPtr source_, target_;
  BitMatrix bond_;
  std::shared_ptr<Cache> cache_;
};

/// Construct a morphism whose extent-relation cache is seeded with `rows`.
ContextMorphism morphism_with_extent_rows(ContextPtr source, ContextPtr target, BitMatrix bond, BitMatrix rows);

/// Build from extent-relation generators: row g becomes close(rows(g)).
/// Closedness condition 2 is not re-checked; callers pass relations that are
/// closed by construction.
ContextMorphism morphism_from_generators(ContextPtr source, ContextPtr target, const BitMatrix& generators,
                                         bool close_rows = true);

// Conversions between the four representations.
Bond to_bond(const ContextMorphism& f);
ExtentRelation to_extent_relation(const ContextMorphism& f);
IntentRelation to_intent_relation(const ContextMorphism& f);
ChuPair to_chu(const ContextMorphism& f);

/// R*(m2) = R^bullet(m2')'.
IntentRelation extent_to_intent(const ExtentRelation& r);
/// R(g1) = (R*)^bullet(g1')'.
ExtentRelation intent_to_extent(const IntentRelation& s);
/// B(g1) = R(g1)'.
Bond extent_to_bond(const ExtentRelation& r);
/// R(g1) = B(g1)'.
ExtentRelation bond_to_extent(const Bond& b);
ChuPair bond_to_chu(const Bond& b);
Bond chu_to_bond(const ChuPair& c);

/// Validating constructors (throw InvalidArgument carrying the witness).
ContextMorphism from_bond(const Bond& b);
ContextMorphism from_bond(ContextPtr source, ContextPtr target, BitMatrix bond);
ContextMorphism from_extent_relation(const ExtentRelation& r);
ContextMorphism from_intent_relation(const IntentRelation& s);
ContextMorphism from_chu(const ChuPair& c);

ContextMorphism identity(const ContextPtr& k);
/// S o R, extent rows close(S(R(g))).
ContextMorphism compose(const ContextMorphism& s, const ContextMorphism& r);
/// Bonds-style composition (B2 o B1)(g) = (B2)_bullet(B1(g)').
Bond bond_compose(const Bond& b2, const Bond& b1);
/// R* : K2* -> K1*; the bond is transposed.
ContextMorphism dual_morphism(const ContextMorphism& r);

/// Compatibility of B (with C = B^T): close(C_bullet(Y)) = C_bullet(Y) = C_bullet(close(Y)) for all Y subset M2.
CheckResult is_compatible_relation(const FormalContext& k1, const FormalContext& k2, const BitMatrix& b,
                                   const Limits& limits = Limits::global());
/// Composition of compatible relations, (B2 . B1)^T(m) = (C1)_bullet((C2)_bullet({m})'), returned as a G1 x M3 matrix.
BitMatrix compatible_compose(const FormalContext& k2, const BitMatrix& b2, const BitMatrix& b1);

// ---------------------------------------------------------------------------

/// All morphisms K1 -> K2 in canonical (lectic bond) order.
struct HomSet {
  ContextPtr source, target;
  std::vector<ContextMorphism> morphisms;
  std::size_t size() const noexcept { return morphisms.size(); }
  /// Index of a morphism with the given bond.
  std::optional<std::size_t> find(const BitMatrix& bond) const;
};

HomSet enumerate_hom(const ContextPtr& k1, const ContextPtr& k2, const Limits& limits = Limits::global());
std::size_t count_hom(const ContextPtr& k1, const ContextPtr& k2, const Limits& limits = Limits::global());

/// Order matrix of a hom set under inclusion of extent relations (equivalently,
/// reverse inclusion of bonds).
BitMatrix hom_order(const HomSet& hom);

/// Canonical label for a bond: rows as '0'/'1' strings joined by '|'.
std::string bond_label(const BitMatrix& bond);

}  // namespace cxtcat
