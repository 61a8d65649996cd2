#include "gscore/artifact.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gscore {

using nlohmann::json;

MrltDistribution RltArtifact::distribution() const {
  MrltDistribution m;
  m.values = mrlt;
  m.overflow_mass = overflow_mass;
  m.n_experiments = rlt.rows();
  return m;
}

RltArtifact make_artifact(const RltMatrix& m, bool include_timing) {
  RltArtifact a;
  a.config = m.config;
  a.gamma = m.gamma;
  a.dataset_fingerprint = m.dataset_fingerprint;
  a.rlt = m.rlt;
  const MrltDistribution mean = m.mean();
  a.mrlt = mean.values;
  a.overflow_mass = mean.overflow_mass;
  a.degenerate_experiments = m.degenerate_experiments;
  a.overflow_warnings = m.overflow_warnings;
  if (include_timing) a.mean_experiment_ms = m.mean_experiment_ms;
  return a;
}

std::string serialize_artifact(const RltArtifact& a) {
  json doc;
  doc["format_version"] = kArtifactFormatVersion;
  doc["config"] = {
      {"l0", a.config.l0},
      {"gamma", a.gamma},
      {"gamma_mode", a.config.gamma ? "fixed" : "auto"},
      {"i_max", a.config.i_max},
      {"n", a.config.n},
      {"seed", a.config.seed},
  };
  doc["dataset_fingerprint"] = a.dataset_fingerprint;
  json rows = json::array();
  for (Index i = 0; i < a.rlt.rows(); ++i) {
    rows.push_back(std::vector<double>(a.rlt.row(i).begin(), a.rlt.row(i).end()));
  }
  doc["rlt"] = std::move(rows);
  doc["mrlt"] = std::vector<double>(a.mrlt.begin(), a.mrlt.end());
  doc["overflow_mass"] = a.overflow_mass;
  doc["diagnostics"] = {{"degenerate_experiments", a.degenerate_experiments},
                        {"overflow_warnings", a.overflow_warnings}};
  if (a.mean_experiment_ms) doc["timing"] = {{"mean_experiment_ms", *a.mean_experiment_ms}};
  return doc.dump() + "\n";
}

RltArtifact parse_artifact(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("artifact: ") + e.what());
  }
  try {
    if (!doc.contains("format_version")) throw FormatError("artifact: missing format_version");
    const int version = doc.at("format_version").get<int>();
    if (version != kArtifactFormatVersion) {
      throw FormatError("artifact: unsupported format_version " + std::to_string(version) + " (this build reads " +
                        std::to_string(kArtifactFormatVersion) + ")");
    }
    RltArtifact a;
    const json& cfg = doc.at("config");
    a.config.l0 = cfg.at("l0").get<Index>();
    a.gamma = cfg.at("gamma").get<double>();
    if (cfg.value("gamma_mode", "fixed") == "fixed") a.config.gamma = a.gamma;
    a.config.i_max = cfg.at("i_max").get<Index>();
    a.config.n = cfg.at("n").get<Index>();
    a.config.seed = cfg.at("seed").get<std::uint64_t>();
    a.dataset_fingerprint = doc.at("dataset_fingerprint").get<std::string>();

    const json& rows = doc.at("rlt");
    const auto n = static_cast<Index>(rows.size());
    if (n != a.config.n) throw FormatError("artifact: rlt has " + std::to_string(n) + " rows, config says n = " +
                                           std::to_string(a.config.n));
    a.rlt.resize(n, a.config.i_max);
    for (Index i = 0; i < n; ++i) {
      const auto row = rows.at(static_cast<std::size_t>(i)).get<std::vector<double>>();
      if (static_cast<Index>(row.size()) != a.config.i_max) {
        throw FormatError("artifact: rlt row " + std::to_string(i) + " has length " + std::to_string(row.size()));
      }
      for (Index j = 0; j < a.config.i_max; ++j) a.rlt(i, j) = row[static_cast<std::size_t>(j)];
    }
    const auto mrlt = doc.at("mrlt").get<std::vector<double>>();
    if (static_cast<Index>(mrlt.size()) != a.config.i_max) throw FormatError("artifact: mrlt length != i_max");
    a.mrlt = Eigen::Map<const Eigen::VectorXd>(mrlt.data(), a.config.i_max);
    if (n > 0) {
      const Eigen::VectorXd recomputed = a.rlt.colwise().mean().transpose();
      if ((recomputed - a.mrlt).cwiseAbs().maxCoeff() > 1e-12) {
        throw FormatError("artifact: mrlt is not the column mean of rlt");
      }
    }
    a.overflow_mass = doc.at("overflow_mass").get<double>();
    if (doc.contains("diagnostics")) {
      a.degenerate_experiments = doc["diagnostics"].value("degenerate_experiments", Index{0});
      a.overflow_warnings = doc["diagnostics"].value("overflow_warnings", Index{0});
    }
    if (doc.contains("timing")) a.mean_experiment_ms = doc["timing"].at("mean_experiment_ms").get<double>();
    return a;
  } catch (const json::exception& e) {
    throw FormatError(std::string("artifact: ") + e.what());
  }
}

RltArtifact load_artifact(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_artifact(ss.str());
}

void save_artifact(const std::filesystem::path& path, const RltArtifact& a) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot write " + path.string());
  out << serialize_artifact(a);
  if (!out) throw FormatError("write failed for " + path.string());
}

}  // namespace gscore
