#pragma once

// Shared plumbing between the suite drivers and the law registry.

#include <map>
#include <optional>
#include <string>

#include "cxtcat/lawcheck.hpp"

namespace cxtcat::detail {

using Outcome = std::optional<std::string>;

/// Laws keyed "suite/law".
const std::map<std::string, LawFn>& law_registry();

class Runner {
 public:
  Runner(LawReport& report, std::string suite) : report_(report), suite_(std::move(suite)) {}

  void run(const std::string& law, const Instance& inst);
  /// A check that cannot be run at all under the current caps.
  void skip(const std::string& law, const std::string& why);

 private:
  LawResult& slot(const std::string& law);

  LawReport& report_;
  std::string suite_;
  std::map<std::string, std::size_t> index_;
};

void suite_context_core(Runner& r, Generator& gen);
void suite_category(Runner& r, Generator& gen);
void suite_monoidal(Runner& r, Generator& gen, bool lattice_kind);
void suite_suplat(Runner& r, Generator& gen);
void suite_equivalence(Runner& r, Generator& gen);
void suite_disco(Runner& r, Generator& gen);

}  // namespace cxtcat::detail
