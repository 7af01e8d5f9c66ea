#include "cxtcat/mutation.hpp"

#include <atomic>

namespace cxtcat {
namespace {
std::atomic<Mutation> g_mutation{Mutation::None};
}

Mutation active_mutation() noexcept { return g_mutation.load(std::memory_order_relaxed); }
void set_mutation(Mutation m) noexcept { g_mutation.store(m, std::memory_order_relaxed); }

const char* mutation_name(Mutation m) noexcept {
  switch (m) {
    case Mutation::None: return "none";
    case Mutation::ComposeWithoutClosure: return "compose-without-closure";
    case Mutation::TensorIncidenceConjunction: return "tensor-incidence-conjunction";
    case Mutation::UnitorWithoutClosure: return "unitor-without-closure";
    case Mutation::TensorMorphismWithoutClosure: return "tensor-morphism-without-closure";
    case Mutation::DiscardWrongRow: return "discard-wrong-row";
  }
  return "unknown";
}

}  // namespace cxtcat
