#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stop_token>
#include <string>
#include <vector>

#include "gscore/geometry.hpp"
#include "gscore/rlt.hpp"

namespace gscore {

/// Parameters of the randomized RLT estimate. Defaults follow the
/// recommended values for a dataset of ~5000 samples.
struct ExperimentConfig {
  Index l0 = 64;
  std::optional<double> gamma;  // nullopt = auto: (1/128) * (5000 / N)
  Index i_max = 100;
  Index n = 10000;
  std::uint64_t seed = 0;

  /// Throws ParameterError unless l0 >= 3, n >= 1, i_max >= 1 and gamma (if fixed) > 0.
  void validate() const;

  /// gamma to use for a dataset with `n_samples` rows.
  double resolved_gamma(Index n_samples) const;
};

/// n x i_max matrix of per-experiment RLT rows plus run diagnostics.
struct RltMatrix {
  RowMatrixXd rlt;
  Eigen::VectorXd overflow;  // per-experiment overflow mass
  ExperimentConfig config;
  double gamma = 0.0;        // resolved
  std::string dataset_fingerprint;
  Index degenerate_experiments = 0;   // alpha_max == 0 draws
  Index overflow_warnings = 0;        // rows with overflow > kOverflowWarnThreshold
  double mean_experiment_ms = 0.0;    // wall time, informational only

  Index n() const noexcept { return rlt.rows(); }
  Index i_max() const noexcept { return rlt.cols(); }
  MrltDistribution mean() const;
};

struct RunOptions {
  unsigned threads = 1;
  /// Called with (completed, total) after each experiment, serialized.
  std::function<void(Index, Index)> progress;
  /// Checked between experiments; a stop request throws Cancelled.
  std::stop_token stop;
};

/// Content hash of the cloud's shape and values ("fnv1a64:<hex>").
std::string fingerprint(const PointCloud& cloud);

/// Outcome of one landmark draw.
struct ExperimentResult {
  RltVector rlt;
  bool degenerate = false;
};

/// Experiment `index` of a run: draw landmarks from substream (seed, index),
/// build the witness filtration up to gamma * max landmark distance, take
/// dimension-1 persistence and its RLT. Depends on nothing but its arguments.
ExperimentResult run_experiment(const PointCloud& cloud, const ExperimentConfig& config, double gamma,
                                std::uint64_t index);

/// All n experiments, rows in index order. Bit-identical for any thread count.
RltMatrix run_rlt_experiments(const PointCloud& cloud, const ExperimentConfig& config, const RunOptions& options = {});

struct Comparison {
  double score = 0.0;
  MrltDistribution a;
  MrltDistribution b;
  std::vector<std::string> warnings;
};

/// Runs both datasets with the same config and scores their MRLTs.
/// Unequal sizes are allowed but reported in `warnings`.
Comparison compare_datasets(const PointCloud& a, const PointCloud& b, const ExperimentConfig& config,
                            const RunOptions& options = {});

}  // namespace gscore
