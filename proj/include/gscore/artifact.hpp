#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "gscore/pipeline.hpp"

namespace gscore {

inline constexpr int kArtifactFormatVersion = 1;

/// Persisted result of a run. Serialized as JSON with sorted keys and
/// shortest round-trip numbers, so equal runs give equal bytes.
struct RltArtifact {
  ExperimentConfig config;
  double gamma = 0.0;  // resolved
  std::string dataset_fingerprint;
  RowMatrixXd rlt;
  Eigen::VectorXd mrlt;
  double overflow_mass = 0.0;  // mean over experiments
  Index degenerate_experiments = 0;
  Index overflow_warnings = 0;
  std::optional<double> mean_experiment_ms;  // written only on request; wall time is not reproducible

  MrltDistribution distribution() const;
};

RltArtifact make_artifact(const RltMatrix& m, bool include_timing = false);

std::string serialize_artifact(const RltArtifact& a);

/// Throws FormatError for malformed JSON, missing fields, an unsupported
/// format_version, or an mrlt that is not the column mean of rlt (1e-12).
RltArtifact parse_artifact(std::string_view json_text);

RltArtifact load_artifact(const std::filesystem::path& path);
void save_artifact(const std::filesystem::path& path, const RltArtifact& a);

}  // namespace gscore
