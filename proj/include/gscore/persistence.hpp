#pragma once

#include <limits>
#include <vector>

#include "gscore/witness.hpp"

namespace gscore {

inline constexpr double kInfiniteDeath = std::numeric_limits<double>::infinity();

struct PersistenceInterval {
  int dim = 0;
  double birth = 0.0;
  double death = kInfiniteDeath;  // +inf for classes alive at alpha_max

  bool infinite() const noexcept { return death == kInfiniteDeath; }
  friend bool operator==(const PersistenceInterval&, const PersistenceInterval&) = default;
};

struct Barcode {
  std::vector<PersistenceInterval> intervals;
  double alpha_max = 0.0;

  std::vector<PersistenceInterval> in_dimension(int dim) const;
};

/// Barcode of a witness filtration in dimensions 0..max_hom_dim (max 1).
///
/// Simplices are ordered by (appearance, dimension, vertices) and the
/// boundary matrix is reduced over GF(2), top dimension first, clearing
/// the columns of creators that have already been paired. A pair
/// (creator, killer) becomes [t(creator), t(killer)); unpaired creators
/// become [t, +inf). Zero-length intervals are kept.
///
/// Throws InternalError if `filtration` violates its invariants and
/// ParameterError for max_hom_dim outside {0, 1}.
Barcode compute_persistence(const WitnessFiltration& filtration, int max_hom_dim = 1);

}  // namespace gscore
