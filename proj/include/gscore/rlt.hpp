#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "gscore/persistence.hpp"

namespace gscore {

/// Relative living times of one barcode: values[i] is the fraction of
/// [0, alpha_max] on which the Betti count equals i. Mass where the count
/// reaches i_max or more is kept in overflow_mass, outside `values`.
struct RltVector {
  Eigen::VectorXd values;
  double overflow_mass = 0.0;

  Index i_max() const noexcept { return values.size(); }
};

/// Column mean of a set of RltVectors, read as a distribution over hole counts.
struct MrltDistribution {
  Eigen::VectorXd values;
  double overflow_mass = 0.0;
  Index n_experiments = 0;

  Index i_max() const noexcept { return values.size(); }
};

/// Overflow above this fraction of [0, alpha_max] is worth a warning.
inline constexpr double kOverflowWarnThreshold = 0.01;

/// Number of intervals whose closed span [birth, death] contains alpha.
int betti_count(std::span<const PersistenceInterval> intervals, double alpha);

/// Event sweep over the intervals (deaths clamped to alpha_max).
/// Intervals of every dimension in the span are counted; callers filter.
RltVector rlt_from_intervals(std::span<const PersistenceInterval> intervals, double alpha_max, Index i_max);

/// RLT of the dimension-`dim` intervals of `barcode`.
RltVector rlt_from_barcode(const Barcode& barcode, Index i_max, int dim = 1);

/// Entrywise mean. Throws ParameterError for an empty list or mismatched i_max.
MrltDistribution mean_rlt(std::span<const RltVector> rlts);

/// Mean over the rows of an n x i_max matrix of RLT values.
template <typename Derived>
MrltDistribution mean_rlt(const Eigen::MatrixBase<Derived>& rows, double mean_overflow = 0.0) {
  if (rows.rows() < 1 || rows.cols() < 1) throw ParameterError("RLT matrix must be nonempty");
  MrltDistribution m;
  m.values = rows.colwise().mean().transpose();
  m.overflow_mass = mean_overflow;
  m.n_experiments = rows.rows();
  return m;
}

/// Squared L2 distance between two MRLT vectors. Throws ParameterError on mismatched i_max.
double geometry_score(const MrltDistribution& a, const MrltDistribution& b);

/// Smallest index attaining the maximum mass. Throws ParameterError when empty.
Index map_betti(const MrltDistribution& m);

}  // namespace gscore
