#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "cxtcat/concept_lattice.hpp"
#include "cxtcat/context.hpp"
#include "cxtcat/lattice.hpp"
#include "cxtcat/morphism.hpp"

namespace cxtcat {

// Burmeister cross-table:
//   B
//   <name>
//   |G|
//   |M|
//   <empty>
//   object names, attribute names, then |G| rows of 'X' / '.'.
ContextPtr parse_cxt(const std::string& text);
std::string serialize_cxt(const FormalContext& k);
ContextPtr read_cxt(const std::filesystem::path& path);
void write_cxt(const std::filesystem::path& path, const FormalContext& k);

/// {"name", "objects", "attributes", "incidence": [[bool]]}
nlohmann::json context_to_json(const FormalContext& k);
ContextPtr context_from_json(const nlohmann::json& j);

/// {"concepts": [{"extent": [..], "intent": [..]}], "leq": [[bool]], "bottom": i, "top": i}
nlohmann::json concept_lattice_to_json(const ConceptLattice& l);
/// Rebuilds the lattice of `k` from its export, checking that it matches.
ConceptLatticePtr concept_lattice_from_json(const nlohmann::json& j, const ContextPtr& k);
/// Hasse diagram with nodes labelled "extent | intent".
std::string concept_lattice_to_dot(const ConceptLattice& l);
/// Plain text table, one concept per line.
std::string concept_lattice_to_table(const ConceptLattice& l);

/// {"elements": [..], "leq": [[bool]], "bottom": i, "top": i}
nlohmann::json lattice_to_json(const FiniteLattice& l);
LatticePtr lattice_from_json(const nlohmann::json& j, std::string name = "");

/// Fingerprints are written as 16-digit hex strings.
std::string hash_string(std::uint64_t h);

/// {"source": hash, "target": hash, "bond": [[bool]]}
nlohmann::json morphism_to_json(const ContextMorphism& f);
/// Validates the hashes and the bond.
ContextMorphism morphism_from_json(const nlohmann::json& j, const ContextPtr& source, const ContextPtr& target);

/// {"source": hash, "target": hash, "table": [indices]}
nlohmann::json supmap_to_json(const SupMap& f);
SupMap supmap_from_json(const nlohmann::json& j, const LatticePtr& source, const LatticePtr& target);

nlohmann::json matrix_to_json(const BitMatrix& m);
BitMatrix matrix_from_json(const nlohmann::json& j, std::size_t cols);

std::string read_file(const std::filesystem::path& path);

}  // namespace cxtcat
