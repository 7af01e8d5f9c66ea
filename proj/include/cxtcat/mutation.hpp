#pragma once

namespace cxtcat {

/// Seeded bugs used to check that the law suites have teeth. Production code
/// consults active_mutation() at the few sites each mutation corrupts.
enum class Mutation {
  None,
  ComposeWithoutClosure,
  TensorIncidenceConjunction,
  UnitorWithoutClosure,
  TensorMorphismWithoutClosure,
  DiscardWrongRow,
};

Mutation active_mutation() noexcept;
void set_mutation(Mutation m) noexcept;
const char* mutation_name(Mutation m) noexcept;

class ScopedMutation {
 public:
  explicit ScopedMutation(Mutation m) noexcept : previous_(active_mutation()) { set_mutation(m); }
  ~ScopedMutation() { set_mutation(previous_); }
  ScopedMutation(const ScopedMutation&) = delete;
  ScopedMutation& operator=(const ScopedMutation&) = delete;

 private:
  Mutation previous_;
};

}  // namespace cxtcat
