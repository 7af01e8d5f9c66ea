#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "cxtcat/disco.hpp"
#include "cxtcat/lattice.hpp"
#include "cxtcat/morphism.hpp"

namespace cxtcat {

struct GenConfig {
  std::uint64_t seed = 0;
  std::size_t max_objects = 4;
  std::size_t max_attributes = 4;
  std::size_t max_lattice = 6;
  double density = 0.5;
  std::size_t trials = 100;

  /// Throws InvalidArgument when a field is out of range or above the global caps.
  void validate(const Limits& limits = Limits::global()) const;
};

/// Seeded source of random test objects. Everything it returns depends only
/// on the config and the sequence of calls.
class Generator {
 public:
  explicit Generator(const GenConfig& cfg);

  const GenConfig& config() const noexcept { return cfg_; }
  std::mt19937_64& rng() noexcept { return rng_; }
  std::size_t uniform(std::size_t lo, std::size_t hi);  ///< inclusive
  bool coin(double p);

  /// Random size in [1, max] per side.
  ContextPtr context();
  ContextPtr context(std::size_t objects, std::size_t attributes);
  /// Sampled from enumerate_hom when the hom set is small, otherwise a random
  /// relation closed until rows and columns are closed.
  ContextMorphism morphism(const ContextPtr& k1, const ContextPtr& k2);
  /// Closure system of a random family of subsets, at most max_lattice elements.
  LatticePtr lattice();
  LatticePtr lattice(std::size_t max_elements);
  SupMap supmap(const LatticePtr& v, const LatticePtr& w);
  Bitset subset(std::size_t n);

 private:
  GenConfig cfg_;
  std::mt19937_64 rng_;
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::vector<ContextMorphism>> hom_cache_;
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::vector<SupMap>> sup_cache_;
};

ContextPtr gen_context(const GenConfig& cfg);
ContextMorphism gen_morphism(const GenConfig& cfg, const ContextPtr& k1, const ContextPtr& k2);
LatticePtr gen_lattice(const GenConfig& cfg);
SupMap gen_supmap(const GenConfig& cfg, const LatticePtr& v, const LatticePtr& w);

/// Every context with |G| <= n and |M| <= m, one per isomorphism class
/// (row and column permutations), labels g0.. and m0...
std::vector<ContextPtr> small_contexts(std::size_t n, std::size_t m);

/// F(C_n) for the n-element chain.
ContextPtr chain_context(std::size_t n);
/// Cat, Dog, Kitten, Puppy against Mature, Feline, Canine, Juvenile.
ContextPtr animals_context();
/// I, S_2, S_3, F(C_2), F(C_3), a 2x3 context and the animals.
std::vector<ContextPtr> fixture_contexts();
/// The members of fixture_contexts() with at most 3 objects and 3 attributes.
std::vector<ContextPtr> box_fixture_contexts();
/// 2, C_3, the diamond, C_4, M_3, N_5.
std::vector<LatticePtr> fixture_lattices();
/// Every intersection-closed family of subsets of an n-set containing the
/// full set, as lattices with at most max_elements elements.
std::vector<LatticePtr> closure_system_lattices(std::size_t n, std::size_t max_elements);

// ---------------------------------------------------------------------------
// Laws are checks over an Instance; a failing instance serializes to JSON and
// can be replayed on its own.

struct Instance {
  std::vector<ContextPtr> contexts;
  std::vector<ContextMorphism> morphisms;  ///< endpoints must be among `contexts`
  std::vector<LatticePtr> lattices;
  std::vector<SupMap> maps;                ///< endpoints must be among `lattices`
  std::vector<Bitset> sets;
  std::vector<std::string> words;

  nlohmann::json to_json() const;
  static Instance from_json(const nlohmann::json& j);
};

/// nullopt on success, otherwise a description of the failure.
using LawFn = std::function<std::optional<std::string>(const Instance&)>;

struct LawResult {
  std::string name;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;
  /// Smallest failing instance (by serialized length, then text) with its detail.
  std::optional<nlohmann::json> counterexample;
};

struct LawReport {
  std::string suite;
  GenConfig config;
  std::vector<LawResult> laws;
  std::vector<std::string> skips;  ///< notices for checks not run because of a cap
  double seconds = 0;

  bool ok() const;
  std::size_t total_failed() const;
  const LawResult* find(const std::string& law) const;
  nlohmann::json to_json(bool with_duration = true) const;
  std::string to_table() const;
};

const std::vector<std::string>& suite_names();
/// Throws InvalidArgument for an unknown suite.
LawReport run_suite(const std::string& name, const GenConfig& cfg);

/// Re-runs the law named in a counterexample ("suite/law") on its instance.
/// Returns the failure detail, or nullopt if it now passes.
std::optional<std::string> replay_counterexample(const nlohmann::json& counterexample);

/// The Alice/likes/Bob lexicon used by the disco suite, built in memory.
Lexicon builtin_lexicon();

}  // namespace cxtcat
