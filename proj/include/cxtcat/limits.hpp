#pragma once

#include <cstddef>

namespace cxtcat {

/// Desk-scale caps. Brute-force routines refuse inputs above these with
/// SizeCapExceeded instead of running for hours.
struct Limits {
  /// Object/attribute count for exhaustive subset scans and hom enumeration.
  std::size_t max_size = 20;
  /// Maximum number of concepts produced by enumerate_concepts.
  std::size_t max_concepts = std::size_t{1} << 16;
  /// Per-factor |G| and |M| accepted by user-facing lattice tensors.
  std::size_t box_factor = 3;
  /// |G1|*|G2| accepted by lattice_tensor (nested tensors included).
  std::size_t box_carrier = 16;
  /// Per-factor |G| and |M| accepted by user-facing concept tensors.
  std::size_t concept_tensor_factor = 6;
  /// Maximum number of morphisms produced by a hom enumeration.
  std::size_t max_hom = std::size_t{1} << 16;
  /// |V|*|W| accepted by the sup-lattice tensor (its context is that square).
  std::size_t suplat_carrier = 1024;

  /// Process-wide defaults; CXTCAT_MAX_SIZE overrides max_size.
  static const Limits& global();
};

}  // namespace cxtcat
