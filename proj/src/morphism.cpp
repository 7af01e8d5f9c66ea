#include "cxtcat/morphism.hpp"

#include <algorithm>
#include <unordered_set>

#include "cxtcat/mutation.hpp"

namespace cxtcat {

Bitset r_image(const BitMatrix& r, const Bitset& x) {
  Bitset out(r.cols());
  x.for_each([&](std::size_t a) { out |= r.row(a); });
  return out;
}

Bitset r_bullet(const BitMatrix& r, const Bitset& y) {
  Bitset out(r.rows());
  for (std::size_t a = 0; a < r.rows(); ++a)
    if (r.row(a).is_subset_of(y)) out.set(a);
  return out;
}

Bitset r_lower_bullet(const BitMatrix& r, const Bitset& x) {
  Bitset out = Bitset::full(r.cols());
  x.for_each([&](std::size_t a) { out &= r.row(a); });
  return out;
}

std::string Witness::describe() const {
  switch (kind) {
    case Kind::None: return "ok";
    case Kind::ShapeMismatch: return "relation has the wrong shape";
    case Kind::RowNotClosed: return "row " + std::to_string(index) + " is not closed";
    case Kind::ColumnNotClosed: return "column " + std::to_string(index) + " is not closed";
    case Kind::PreimageNotClosed: return "preimage of closed set " + set.to_string() + " is not closed";
    case Kind::ClosureMismatch: return "close(R(A)) != close(R(close(A))) for A = " + set.to_string();
    case Kind::ChuConditionFails:
      return "Chu condition fails at (" + std::to_string(index) + ", " + std::to_string(index2) + ")";
  }
  return "?";
}

namespace {

CheckResult fail(Witness::Kind kind, std::size_t index = 0, Bitset set = {}, std::size_t index2 = 0) {
  Witness w;
  w.kind = kind;
  w.index = index;
  w.index2 = index2;
  w.set = std::move(set);
  return CheckResult::fail(std::move(w));
}

CheckResult rows_are_extents(const FormalContext& k2, const BitMatrix& r) {
  for (std::size_t g = 0; g < r.rows(); ++g)
    if (!k2.is_extent(r.row(g))) return fail(Witness::Kind::RowNotClosed, g);
  return CheckResult::pass();
}

bool shape_ok(const BitMatrix& r, std::size_t rows, std::size_t cols) {
  if (r.rows() != rows) return false;
  if (r.cols() != cols) return false;
  for (const auto& row : r.row_sets())
    if (row.size() != cols) return false;
  return true;
}

}  // namespace

CheckResult is_closed_relation(const FormalContext& k1, const FormalContext& k2, const BitMatrix& r) {
  if (!shape_ok(r, k1.num_objects(), k2.num_objects())) return fail(Witness::Kind::ShapeMismatch);
  if (auto c = rows_are_extents(k2, r); !c) return c;
  for (const auto& a : all_extents(k2)) {
    Bitset pre = r_bullet(r, a);
    if (!k1.is_extent(pre)) return fail(Witness::Kind::PreimageNotClosed, 0, a);
  }
  return CheckResult::pass();
}

CheckResult is_closed_relation_via_closure(const FormalContext& k1, const FormalContext& k2, const BitMatrix& r,
                                           const Limits& limits) {
  if (!shape_ok(r, k1.num_objects(), k2.num_objects())) return fail(Witness::Kind::ShapeMismatch);
  if (auto c = rows_are_extents(k2, r); !c) return c;
  const auto n = k1.num_objects();
  if (n > limits.max_size) throw SizeCapExceeded("closure criterion needs all subsets of " + std::to_string(n) + " objects");
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t code = 0; code < total; ++code) {
    Bitset a(n);
    for (std::size_t i = 0; i < n; ++i)
      if ((code >> i) & 1U) a.set(i);
    if (k2.close_objects(r_image(r, a)) != k2.close_objects(r_image(r, k1.close_objects(a))))
      return fail(Witness::Kind::ClosureMismatch, 0, a);
  }
  return CheckResult::pass();
}

CheckResult is_bond(const FormalContext& k1, const FormalContext& k2, const BitMatrix& b) {
  if (!shape_ok(b, k1.num_objects(), k2.num_attributes())) return fail(Witness::Kind::ShapeMismatch);
  for (std::size_t g = 0; g < b.rows(); ++g)
    if (!k2.is_intent(b.row(g))) return fail(Witness::Kind::RowNotClosed, g);
  for (std::size_t m = 0; m < b.cols(); ++m)
    if (!k1.is_extent(b.column(m))) return fail(Witness::Kind::ColumnNotClosed, m);
  return CheckResult::pass();
}

CheckResult is_chu_pair(const FormalContext& k1, const FormalContext& k2, const BitMatrix& r, const BitMatrix& s) {
  if (!shape_ok(r, k1.num_objects(), k2.num_objects()) || !shape_ok(s, k2.num_attributes(), k1.num_attributes()))
    return fail(Witness::Kind::ShapeMismatch);
  if (auto c = rows_are_extents(k2, r); !c) return c;
  for (std::size_t m = 0; m < s.rows(); ++m)
    if (!k1.is_intent(s.row(m))) return fail(Witness::Kind::RowNotClosed, m);
  for (std::size_t g = 0; g < r.rows(); ++g)
    for (std::size_t m = 0; m < s.rows(); ++m) {
      const bool lhs = r.row(g).is_subset_of(k2.attribute_extent(m));
      const bool rhs = s.row(m).is_subset_of(k1.object_intent(g));
      if (lhs != rhs) return fail(Witness::Kind::ChuConditionFails, g, {}, m);
    }
  return CheckResult::pass();
}

// ---------------------------------------------------------------------------

ContextMorphism::ContextMorphism(ContextPtr source, ContextPtr target, BitMatrix bond)
    : source_(std::move(source)), target_(std::move(target)), bond_(std::move(bond)), cache_(std::make_shared<Cache>()) {}

const BitMatrix& ContextMorphism::extent_relation() const {
  std::call_once(cache_->extent_once, [this] {
    std::vector<Bitset> rows;
    rows.reserve(bond_.rows());
    for (const auto& b : bond_.row_sets()) rows.push_back(target_->extent_of(b));
    cache_->extent = BitMatrix(target_->num_objects(), std::move(rows));
  });
  return cache_->extent;
}

const BitMatrix& ContextMorphism::intent_relation() const {
  std::call_once(cache_->intent_once, [this] {
    const BitMatrix columns = bond_.transpose();
    std::vector<Bitset> rows;
    rows.reserve(target_->num_attributes());
    for (std::size_t m = 0; m < target_->num_attributes(); ++m)
      rows.push_back(source_->intent_of(m < columns.rows() ? columns.row(m) : Bitset(source_->num_objects())));
    cache_->intent = BitMatrix(source_->num_attributes(), std::move(rows));
  });
  return cache_->intent;
}

ContextMorphism morphism_with_extent_rows(ContextPtr source, ContextPtr target, BitMatrix bond, BitMatrix rows) {
  ContextMorphism f(std::move(source), std::move(target), std::move(bond));
  std::call_once(f.cache_->extent_once, [&] { f.cache_->extent = std::move(rows); });
  return f;
}

ContextMorphism morphism_from_generators(ContextPtr source, ContextPtr target, const BitMatrix& generators,
                                         bool close_rows) {
  const auto& t = *target;
  std::vector<Bitset> bond_rows, ext_rows;
  bond_rows.reserve(generators.rows());
  ext_rows.reserve(generators.rows());
  for (const auto& gen : generators.row_sets()) {
    Bitset intent = t.intent_of(gen);
    ext_rows.push_back(close_rows ? t.extent_of(intent) : gen);
    bond_rows.push_back(std::move(intent));
  }
  BitMatrix bond(t.num_attributes(), std::move(bond_rows));
  BitMatrix rows(t.num_objects(), std::move(ext_rows));
  return morphism_with_extent_rows(std::move(source), std::move(target), std::move(bond), std::move(rows));
}

// ---------------------------------------------------------------------------

Bond to_bond(const ContextMorphism& f) { return Bond{f.source(), f.target(), f.bond()}; }
ExtentRelation to_extent_relation(const ContextMorphism& f) {
  return ExtentRelation{f.source(), f.target(), f.extent_relation()};
}
IntentRelation to_intent_relation(const ContextMorphism& f) {
  return IntentRelation{f.source(), f.target(), f.intent_relation()};
}
ChuPair to_chu(const ContextMorphism& f) { return ChuPair{to_extent_relation(f), to_intent_relation(f)}; }

IntentRelation extent_to_intent(const ExtentRelation& r) {
  const auto& k1 = *r.source;
  const auto& k2 = *r.target;
  std::vector<Bitset> rows;
  for (std::size_t m = 0; m < k2.num_attributes(); ++m)
    rows.push_back(k1.intent_of(r_bullet(r.rows, k2.attribute_extent(m))));
  return IntentRelation{r.source, r.target, BitMatrix(k1.num_attributes(), std::move(rows))};
}

ExtentRelation intent_to_extent(const IntentRelation& s) {
  const auto& k1 = *s.source;
  const auto& k2 = *s.target;
  std::vector<Bitset> rows;
  for (std::size_t g = 0; g < k1.num_objects(); ++g)
    rows.push_back(k2.extent_of(r_bullet(s.rows, k1.object_intent(g))));
  return ExtentRelation{s.source, s.target, BitMatrix(k2.num_objects(), std::move(rows))};
}

Bond extent_to_bond(const ExtentRelation& r) {
  std::vector<Bitset> rows;
  for (const auto& row : r.rows.row_sets()) rows.push_back(r.target->intent_of(row));
  return Bond{r.source, r.target, BitMatrix(r.target->num_attributes(), std::move(rows))};
}

ExtentRelation bond_to_extent(const Bond& b) {
  std::vector<Bitset> rows;
  for (const auto& row : b.matrix.row_sets()) rows.push_back(b.target->extent_of(row));
  return ExtentRelation{b.source, b.target, BitMatrix(b.target->num_objects(), std::move(rows))};
}

ChuPair bond_to_chu(const Bond& b) {
  const BitMatrix columns = b.matrix.transpose();
  std::vector<Bitset> rows;
  for (std::size_t m = 0; m < b.target->num_attributes(); ++m)
    rows.push_back(b.source->intent_of(m < columns.rows() ? columns.row(m) : Bitset(b.source->num_objects())));
  return ChuPair{bond_to_extent(b), IntentRelation{b.source, b.target, BitMatrix(b.source->num_attributes(), std::move(rows))}};
}

Bond chu_to_bond(const ChuPair& c) { return extent_to_bond(c.extent); }

namespace {
[[noreturn]] void invalid(const char* what, const CheckResult& c) {
  throw InvalidArgument(std::string(what) + ": " + c.witness.describe());
}
}  // namespace

ContextMorphism from_bond(const Bond& b) {
  if (auto c = is_bond(*b.source, *b.target, b.matrix); !c) invalid("not a bond", c);
  return ContextMorphism(b.source, b.target, b.matrix);
}

ContextMorphism from_bond(ContextPtr source, ContextPtr target, BitMatrix bond) {
  return from_bond(Bond{std::move(source), std::move(target), std::move(bond)});
}

ContextMorphism from_extent_relation(const ExtentRelation& r) {
  if (auto c = is_closed_relation(*r.source, *r.target, r.rows); !c) invalid("not a closed relation", c);
  auto b = extent_to_bond(r);
  return morphism_with_extent_rows(r.source, r.target, std::move(b.matrix), r.rows);
}

ContextMorphism from_intent_relation(const IntentRelation& s) {
  auto d1 = dual_context(*s.source);
  auto d2 = dual_context(*s.target);
  if (auto c = is_closed_relation(*d2, *d1, s.rows); !c) invalid("not a closed intent relation", c);
  return from_extent_relation(intent_to_extent(s));
}

ContextMorphism from_chu(const ChuPair& c) {
  require_same_context(c.extent.source, c.intent.source, "Chu pair");
  require_same_context(c.extent.target, c.intent.target, "Chu pair");
  if (auto chk = is_chu_pair(*c.extent.source, *c.extent.target, c.extent.rows, c.intent.rows); !chk)
    invalid("not a Chu correspondence", chk);
  auto b = chu_to_bond(c);
  return morphism_with_extent_rows(c.extent.source, c.extent.target, std::move(b.matrix), c.extent.rows);
}

ContextMorphism identity(const ContextPtr& k) {
  std::vector<Bitset> rows;
  for (std::size_t g = 0; g < k->num_objects(); ++g) rows.push_back(k->extent_of(k->object_intent(g)));
  return morphism_with_extent_rows(k, k, k->incidence(), BitMatrix(k->num_objects(), std::move(rows)));
}

ContextMorphism compose(const ContextMorphism& s, const ContextMorphism& r) {
  require_same_context(r.target(), s.source(), "compose");
  const auto& k3 = *s.target();
  const auto& rr = r.extent_relation();
  const auto& sr = s.extent_relation();
  const bool drop_closure = active_mutation() == Mutation::ComposeWithoutClosure;
  std::vector<Bitset> bond_rows, ext_rows;
  for (const auto& row : rr.row_sets()) {
    Bitset image = r_image(sr, row);
    Bitset intent = k3.intent_of(image);
    ext_rows.push_back(drop_closure ? image : k3.extent_of(intent));
    bond_rows.push_back(std::move(intent));
  }
  return morphism_with_extent_rows(r.source(), s.target(), BitMatrix(k3.num_attributes(), std::move(bond_rows)),
                                   BitMatrix(k3.num_objects(), std::move(ext_rows)));
}

Bond bond_compose(const Bond& b2, const Bond& b1) {
  require_same_context(b1.target, b2.source, "bond_compose");
  const auto& k2 = *b1.target;
  std::vector<Bitset> rows;
  for (const auto& row : b1.matrix.row_sets()) rows.push_back(r_lower_bullet(b2.matrix, k2.extent_of(row)));
  return Bond{b1.source, b2.target, BitMatrix(b2.target->num_attributes(), std::move(rows))};
}

ContextMorphism dual_morphism(const ContextMorphism& r) {
  return ContextMorphism(dual_context(*r.target()), dual_context(*r.source()), r.bond().transpose());
}

CheckResult is_compatible_relation(const FormalContext& k1, const FormalContext& k2, const BitMatrix& b,
                                   const Limits& limits) {
  if (!shape_ok(b, k1.num_objects(), k2.num_attributes())) return fail(Witness::Kind::ShapeMismatch);
  const BitMatrix c = b.transpose();
  const auto n = k2.num_attributes();
  if (n > limits.max_size) throw SizeCapExceeded("compatibility check needs all subsets of " + std::to_string(n) + " attributes");
  auto c_lower = [&](const Bitset& y) {
    Bitset out = Bitset::full(k1.num_objects());
    y.for_each([&](std::size_t m) { out &= c.row(m); });
    return out;
  };
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t code = 0; code < total; ++code) {
    Bitset y(n);
    for (std::size_t i = 0; i < n; ++i)
      if ((code >> i) & 1U) y.set(i);
    const Bitset x = c_lower(y);
    if (!k1.is_extent(x)) return fail(Witness::Kind::ColumnNotClosed, 0, y);
    if (x != c_lower(k2.close_attributes(y))) return fail(Witness::Kind::ClosureMismatch, 0, y);
  }
  return CheckResult::pass();
}

BitMatrix compatible_compose(const FormalContext& k2, const BitMatrix& b2, const BitMatrix& b1) {
  const BitMatrix c1 = b1.transpose();
  const BitMatrix c2 = b2.transpose();
  const auto g1 = b1.rows();
  std::vector<Bitset> columns;
  for (std::size_t m = 0; m < b2.cols(); ++m) {
    const Bitset y = k2.intent_of(c2.row(m));
    Bitset x = Bitset::full(g1);
    y.for_each([&](std::size_t a) { x &= c1.row(a); });
    columns.push_back(std::move(x));
  }
  return BitMatrix(g1, std::move(columns)).transpose();
}

// ---------------------------------------------------------------------------

std::optional<std::size_t> HomSet::find(const BitMatrix& bond) const {
  for (std::size_t i = 0; i < morphisms.size(); ++i)
    if (morphisms[i].bond() == bond) return i;
  return std::nullopt;
}

namespace {

/// Backtracking over rows (intents of K2), pruning on column prefixes that no
/// extent of K1 extends.
template <class Visit>
void for_each_bond(const FormalContext& k1, const FormalContext& k2, const Limits& limits, Visit&& visit) {
  const auto n1 = k1.num_objects();
  const auto m2 = k2.num_attributes();
  if (n1 > limits.max_size) throw SizeCapExceeded("hom enumeration over " + std::to_string(n1) + " source objects");
  const auto candidates = all_intents(k2, limits.max_concepts);
  const auto extents = all_extents(k1, limits.max_concepts);

  std::vector<std::unordered_set<Bitset>> prefixes(n1);
  for (std::size_t k = 0; k < n1; ++k) {
    Bitset mask(n1);
    for (std::size_t i = 0; i <= k; ++i) mask.set(i);
    for (const auto& e : extents) prefixes[k].insert(e & mask);
  }

  std::vector<std::size_t> choice(n1, 0);
  std::vector<Bitset> columns(m2, Bitset(n1));
  std::size_t produced = 0;

  auto emit = [&] {
    if (++produced > limits.max_hom)
      throw SizeCapExceeded("hom enumeration exceeded " + std::to_string(limits.max_hom) + " morphisms");
    BitMatrix bond(n1, m2);
    for (std::size_t g = 0; g < n1; ++g) bond.row(g) = candidates[choice[g]];
    visit(std::move(bond));
  };

  if (n1 == 0) {
    emit();
    return;
  }
  auto rec = [&](auto&& self, std::size_t g) -> void {
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      const Bitset& row = candidates[c];
      row.for_each([&](std::size_t m) { columns[m].set(g); });
      bool ok = true;
      for (std::size_t m = 0; m < m2 && ok; ++m)
        if (!prefixes[g].count(columns[m])) ok = false;
      if (ok) {
        choice[g] = c;
        if (g + 1 == n1)
          emit();
        else
          self(self, g + 1);
      }
      row.for_each([&](std::size_t m) { columns[m].reset(g); });
    }
  };
  rec(rec, 0);
}

}  // namespace

HomSet enumerate_hom(const ContextPtr& k1, const ContextPtr& k2, const Limits& limits) {
  std::vector<std::pair<Bitset, BitMatrix>> bonds;
  for_each_bond(*k1, *k2, limits, [&](BitMatrix b) {
    Bitset key = b.flatten();
    bonds.emplace_back(std::move(key), std::move(b));
  });
  std::sort(bonds.begin(), bonds.end(), [](const auto& a, const auto& b) { return lectic_less(a.first, b.first); });
  HomSet out{k1, k2, {}};
  out.morphisms.reserve(bonds.size());
  for (auto& [key, b] : bonds) out.morphisms.emplace_back(k1, k2, std::move(b));
  return out;
}

std::size_t count_hom(const ContextPtr& k1, const ContextPtr& k2, const Limits& limits) {
  std::size_t n = 0;
  for_each_bond(*k1, *k2, limits, [&](BitMatrix) { ++n; });
  return n;
}

BitMatrix hom_order(const HomSet& hom) {
  const auto n = hom.size();
  BitMatrix leq(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (hom.morphisms[j].bond().is_subset_of(hom.morphisms[i].bond())) leq.set(i, j);
  return leq;
}

std::string bond_label(const BitMatrix& bond) { return "[" + bond.to_string() + "]"; }

}  // namespace cxtcat
