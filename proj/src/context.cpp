#include "cxtcat/context.hpp"

#include <unordered_set>

#include "fnv.hpp"

namespace cxtcat {
namespace {

using detail::Fnv1a;

void require_distinct(const std::vector<std::string>& labels, const char* what) {
  std::unordered_set<std::string> seen;
  for (const auto& l : labels)
    if (!seen.insert(l).second) throw InvalidArgument(std::string("duplicate ") + what + " label '" + l + "'");
}

}  // namespace

FormalContext::FormalContext(std::string name, std::vector<std::string> objects, std::vector<std::string> attributes,
                             BitMatrix incidence)
    : name_(std::move(name)),
      objects_(std::move(objects)),
      attributes_(std::move(attributes)),
      incidence_(std::move(incidence)) {
  require_distinct(objects_, "object");
  require_distinct(attributes_, "attribute");
  if (incidence_.rows() != objects_.size() || incidence_.cols() != attributes_.size())
    throw InvalidArgument("incidence is " + std::to_string(incidence_.rows()) + "x" +
                          std::to_string(incidence_.cols()) + ", expected " + std::to_string(objects_.size()) + "x" +
                          std::to_string(attributes_.size()));
  for (std::size_t g = 0; g < incidence_.rows(); ++g)
    if (incidence_.row(g).size() != attributes_.size()) throw InvalidArgument("ragged incidence row");
  columns_ = incidence_.transpose();

  Fnv1a h;
  h.value(objects_.size());
  h.value(attributes_.size());
  for (const auto& o : objects_) h.text(o);
  for (const auto& a : attributes_) h.text(a);
  for (const auto& r : incidence_.row_sets())
    for (auto w : r.words()) h.value(w);
  fingerprint_ = h.digest();
}

Bitset FormalContext::intent_of(const Bitset& objects) const {
  Bitset out = all_attributes();
  objects.for_each([&](std::size_t g) { out &= incidence_.row(g); });
  return out;
}

Bitset FormalContext::extent_of(const Bitset& attributes) const {
  Bitset out = all_objects();
  attributes.for_each([&](std::size_t m) { out &= columns_.row(m); });
  return out;
}

std::optional<std::size_t> FormalContext::object_index(const std::string& label) const {
  for (std::size_t i = 0; i < objects_.size(); ++i)
    if (objects_[i] == label) return i;
  return std::nullopt;
}

std::optional<std::size_t> FormalContext::attribute_index(const std::string& label) const {
  for (std::size_t i = 0; i < attributes_.size(); ++i)
    if (attributes_[i] == label) return i;
  return std::nullopt;
}

ContextPtr make_context(std::string name, std::vector<std::string> objects, std::vector<std::string> attributes,
                        BitMatrix incidence) {
  return std::make_shared<const FormalContext>(std::move(name), std::move(objects), std::move(attributes),
                                               std::move(incidence));
}

bool operator==(const FormalContext& a, const FormalContext& b) {
  return a.fingerprint() == b.fingerprint() && a.objects() == b.objects() && a.attributes() == b.attributes() &&
         a.incidence() == b.incidence();
}

bool same_context(const ContextPtr& a, const ContextPtr& b) { return a == b || (a && b && *a == *b); }

void require_same_context(const ContextPtr& a, const ContextPtr& b, const char* what) {
  if (!same_context(a, b)) throw DomainMismatch(std::string(what) + ": contexts do not match");
}

ObjectSet object_set(const FormalContext& k, std::span<const std::size_t> indices) {
  for (auto i : indices)
    if (i >= k.num_objects()) throw DomainMismatch("object index " + std::to_string(i) + " out of range");
  return ObjectSet(Bitset::from_indices(k.num_objects(), indices), k.fingerprint());
}

ObjectSet object_set(const FormalContext& k, const std::vector<std::string>& labels) {
  Bitset b(k.num_objects());
  for (const auto& l : labels) {
    auto i = k.object_index(l);
    if (!i) throw DomainMismatch("unknown object '" + l + "'");
    b.set(*i);
  }
  return ObjectSet(std::move(b), k.fingerprint());
}

AttributeSet attribute_set(const FormalContext& k, std::span<const std::size_t> indices) {
  for (auto i : indices)
    if (i >= k.num_attributes()) throw DomainMismatch("attribute index " + std::to_string(i) + " out of range");
  return AttributeSet(Bitset::from_indices(k.num_attributes(), indices), k.fingerprint());
}

AttributeSet attribute_set(const FormalContext& k, const std::vector<std::string>& labels) {
  Bitset b(k.num_attributes());
  for (const auto& l : labels) {
    auto i = k.attribute_index(l);
    if (!i) throw DomainMismatch("unknown attribute '" + l + "'");
    b.set(*i);
  }
  return AttributeSet(std::move(b), k.fingerprint());
}

namespace {
template <class Set>
void require_owner(const FormalContext& k, const Set& s) {
  if (s.owner() != k.fingerprint()) throw DomainMismatch("set does not index into this context");
}
}  // namespace

AttributeSet derive_objects(const FormalContext& k, const ObjectSet& a) {
  require_owner(k, a);
  return attribute_set(k, k.intent_of(a.bits()));
}

ObjectSet derive_attributes(const FormalContext& k, const AttributeSet& b) {
  require_owner(k, b);
  return object_set(k, k.extent_of(b.bits()));
}

ObjectSet close_objects(const FormalContext& k, const ObjectSet& a) {
  require_owner(k, a);
  return object_set(k, k.close_objects(a.bits()));
}

AttributeSet close_attributes(const FormalContext& k, const AttributeSet& b) {
  require_owner(k, b);
  return attribute_set(k, k.close_attributes(b.bits()));
}

std::vector<std::string> labels_of(const std::vector<std::string>& universe, const Bitset& set) {
  std::vector<std::string> out;
  set.for_each([&](std::size_t i) { out.push_back(universe[i]); });
  return out;
}

ContextPtr dual_context(const FormalContext& k) {
  return make_context(k.name(), k.attributes(), k.objects(), k.incidence().transpose());
}

ContextPtr context_from_set(const std::vector<std::string>& elements, std::string name) {
  const auto n = elements.size();
  BitMatrix inc(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) inc.set(i, j);
  return make_context(std::move(name), elements, elements, std::move(inc));
}

ContextPtr trivial_context() {
  static const ContextPtr k = context_from_set({"*"}, "I");
  return k;
}

ContextPtr context_from_poset(const std::vector<std::string>& elements, const BitMatrix& leq, std::string name) {
  const auto n = elements.size();
  if (leq.rows() != n || leq.cols() != n) throw InvalidArgument("order matrix does not match element count");
  for (std::size_t i = 0; i < n; ++i) {
    if (!leq.at(i, i)) throw InvalidArgument("order is not reflexive at '" + elements[i] + "'");
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && leq.at(i, j) && leq.at(j, i)) throw InvalidArgument("order is not antisymmetric");
      if (leq.at(i, j) && !leq.row(j).is_subset_of(leq.row(i))) throw InvalidArgument("order is not transitive");
    }
  }
  return make_context(std::move(name), elements, elements, leq);
}

}  // namespace cxtcat
