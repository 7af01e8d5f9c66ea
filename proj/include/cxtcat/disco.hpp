#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cxtcat/concept_lattice.hpp"
#include "cxtcat/context.hpp"
#include "cxtcat/morphism.hpp"

namespace cxtcat {

/// A basic type with its adjoint order: 0 = a, -1 = a^l, +1 = a^r
/// (iterated adjoints are allowed, but lexicons only use -1..1).
struct BasicType {
  std::string label;
  int order = 0;
  friend bool operator==(const BasicType&, const BasicType&) = default;
};

/// Element of the free protogroup; the empty sequence is the unit.
using ProtoType = std::vector<BasicType>;

std::string to_string(const ProtoType& t);
/// "n^r s n^l", "n", "" (unit).
ProtoType parse_type(const std::string& s);

/// Contraction-only reduction. Each step contracts positions (p, p+1) of the
/// sequence as it stands before that step; `pairs` records the same steps as
/// positions in the original concatenation.
struct ReductionWitness {
  std::vector<std::size_t> steps;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

/// a^(k) a^(k+1) <= 1, which covers a^l a <= 1 and a a^r <= 1.
bool contracts(const BasicType& left, const BasicType& right);
ProtoType concatenate(const std::vector<ProtoType>& types);
/// Applies the steps; throws InvalidArgument if one is not a contraction.
ProtoType replay(const ProtoType& sequence, const ReductionWitness& w);
/// Depth-first, trying the leftmost available contraction first.
std::optional<ReductionWitness> reduce(const std::vector<ProtoType>& types, const ProtoType& target);
/// Every distinct contraction sequence reaching the target (for small inputs).
std::vector<ReductionWitness> all_reductions(const std::vector<ProtoType>& types, const ProtoType& target,
                                             std::size_t max_count = 1000);

// ---------------------------------------------------------------------------
// Relations on products of factor contexts. A relation on K_1 [x] ... [x] K_n
// is a bitset over G_1 x ... x G_n (row-major). It is an extent of the
// n-fold lattice tensor exactly when every one-dimensional slice is an extent
// of its factor.

struct Factors {
  std::vector<ContextPtr> contexts;
  std::size_t carrier() const;
  std::vector<std::size_t> decode(std::size_t flat) const;
  std::size_t encode(const std::vector<std::size_t>& coords) const;
};

bool is_closed_nary(const Factors& f, const Bitset& rel);
/// Smallest relation containing `rel` with every slice closed.
Bitset close_nary(const Factors& f, const Bitset& rel);
/// Product of relations on consecutive factor blocks, closed.
Bitset tensor_states(const std::vector<Factors>& blocks, const std::vector<Bitset>& states);
/// Applies the cup to factors (i, i+1) (one must be K_a, the other K_a*):
/// keeps tuples with g not-I m there, drops the two coordinates and closes.
Bitset contract(const Factors& f, const Bitset& rel, std::size_t i, Factors* remaining = nullptr);

/// The evaluation effect K* [x] K -> I: bond column (m, g) = [g I m].
ContextMorphism cup(const ContextPtr& k);
/// K [x] K* -> I, the cup precomposed with the symmetry.
ContextMorphism cup_right(const ContextPtr& k);

// ---------------------------------------------------------------------------

struct LexiconEntry {
  ProtoType type;
  Bitset state;  ///< closed relation over the factors of `type`
};

class Lexicon {
 public:
  Lexicon(std::map<std::string, ContextPtr> types, std::map<std::string, LexiconEntry> words);

  const std::map<std::string, ContextPtr>& types() const noexcept { return types_; }
  const std::map<std::string, LexiconEntry>& words() const noexcept { return words_; }
  const LexiconEntry& word(const std::string& w) const;
  /// K_a for even adjoint order, K_a* for odd.
  ContextPtr factor(const BasicType& b) const;
  Factors factors(const ProtoType& t) const;

 private:
  std::map<std::string, ContextPtr> types_;
  std::map<std::string, LexiconEntry> words_;
};

/// Type contexts are .cxt paths relative to `base_dir`.
Lexicon parse_lexicon(const nlohmann::json& j, const std::filesystem::path& base_dir);
Lexicon load_lexicon(const std::filesystem::path& path);

struct Interpretation {
  ReductionWitness witness;
  Factors factors;  ///< factors of the target type
  Bitset relation;  ///< closed relation over `factors`
  /// Set when the target is a single basic type.
  std::optional<Concept> meaning;
};

std::vector<std::string> split_sentence(const std::string& sentence);

/// Throws PreconditionFailed if the sentence does not reduce to the target.
Interpretation interpret(const Lexicon& lex, const std::vector<std::string>& sentence, const ProtoType& target);
/// Same, along a given witness and with explicit word states.
Interpretation interpret_with(const Lexicon& lex, const std::vector<std::string>& sentence, const ProtoType& target,
                              const ReductionWitness& witness, const std::vector<Bitset>& states);

/// Concept order (extent inclusion) between concepts of the same context.
bool entails(const Concept& a, const Concept& b);

}  // namespace cxtcat
