#include "gscore/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <exception>
#include <mutex>
#include <thread>

#include "gscore/witness.hpp"

namespace gscore {

void ExperimentConfig::validate() const {
  if (l0 < 3) throw ParameterError("number of landmarks must be at least 3");
  if (n < 1) throw ParameterError("number of experiments must be at least 1");
  if (i_max < 1) throw ParameterError("i_max must be at least 1");
  if (gamma && !(*gamma > 0.0 && std::isfinite(*gamma))) throw ParameterError("gamma must be positive");
}

double ExperimentConfig::resolved_gamma(Index n_samples) const {
  if (gamma) return *gamma;
  return (1.0 / 128.0) * (5000.0 / static_cast<double>(n_samples));
}

MrltDistribution RltMatrix::mean() const { return mean_rlt(rlt, overflow.size() ? overflow.mean() : 0.0); }

std::string fingerprint(const PointCloud& cloud) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](const void* p, std::size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= bytes[i];
      h *= 0x100000001b3ULL;
    }
  };
  const std::int64_t shape[2] = {cloud.n_samples(), cloud.dim()};
  feed(shape, sizeof(shape));
  const auto& x = cloud.data();
  feed(x.data(), static_cast<std::size_t>(x.size()) * sizeof(double));
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

ExperimentResult run_experiment(const PointCloud& cloud, const ExperimentConfig& config, double gamma,
                                std::uint64_t index) {
  Rng rng = Rng::substream(config.seed, index);
  const LandmarkSet landmarks = sample_landmarks(cloud, config.l0, rng);
  const DistanceMatrix d = pairwise_distances(landmarks, cloud);
  const double alpha_max = gamma * max_pairwise_distance(landmarks, cloud);

  ExperimentResult result;
  if (!(alpha_max > 0.0)) {
    // Every landmark is the same point: no 1-cycles at any alpha.
    result.rlt.values = Eigen::VectorXd::Zero(config.i_max);
    result.rlt.values[0] = 1.0;
    result.degenerate = true;
    return result;
  }
  const WitnessFiltration filtration = build_witness_filtration(d, alpha_max, 2);
  const Barcode barcode = compute_persistence(filtration, 1);
  result.rlt = rlt_from_barcode(barcode, config.i_max, 1);
  return result;
}

RltMatrix run_rlt_experiments(const PointCloud& cloud, const ExperimentConfig& config, const RunOptions& options) {
  config.validate();
  if (cloud.n_samples() < config.l0) {
    throw ParameterError("dataset has " + std::to_string(cloud.n_samples()) + " samples, fewer than the " +
                         std::to_string(config.l0) + " requested landmarks");
  }

  RltMatrix out;
  out.config = config;
  out.gamma = config.resolved_gamma(cloud.n_samples());
  out.dataset_fingerprint = fingerprint(cloud);
  out.rlt = RowMatrixXd::Zero(config.n, config.i_max);
  out.overflow = Eigen::VectorXd::Zero(config.n);

  std::vector<char> degenerate(static_cast<std::size_t>(config.n), 0);
  std::atomic<Index> next{0};
  std::atomic<bool> failed{false};
  std::mutex report_mutex;
  Index completed = 0;
  std::exception_ptr error;

  const auto start = std::chrono::steady_clock::now();
  auto worker = [&] {
    for (;;) {
      if (failed.load()) return;
      if (options.stop.stop_requested()) {
        std::lock_guard lock(report_mutex);
        if (!error) error = std::make_exception_ptr(Cancelled());
        failed = true;
        return;
      }
      const Index i = next.fetch_add(1);
      if (i >= config.n) return;
      try {
        ExperimentResult r = run_experiment(cloud, config, out.gamma, static_cast<std::uint64_t>(i));
        // Each worker writes a distinct row.
        out.rlt.row(i) = r.rlt.values.transpose();
        out.overflow[i] = r.rlt.overflow_mass;
        degenerate[static_cast<std::size_t>(i)] = r.degenerate ? 1 : 0;
        std::lock_guard lock(report_mutex);
        ++completed;
        if (options.progress) options.progress(completed, config.n);
      } catch (...) {
        std::lock_guard lock(report_mutex);
        if (!error) error = std::current_exception();
        failed = true;
        return;
      }
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(config.n)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);

  const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
  out.mean_experiment_ms = elapsed.count() * threads / static_cast<double>(config.n);
  for (Index i = 0; i < config.n; ++i) {
    out.degenerate_experiments += degenerate[static_cast<std::size_t>(i)];
    if (out.overflow[i] > kOverflowWarnThreshold) ++out.overflow_warnings;
  }
  return out;
}

Comparison compare_datasets(const PointCloud& a, const PointCloud& b, const ExperimentConfig& config,
                            const RunOptions& options) {
  Comparison c;
  if (a.n_samples() != b.n_samples()) {
    c.warnings.push_back("datasets differ in size (" + std::to_string(a.n_samples()) + " vs " +
                         std::to_string(b.n_samples()) + "); comparisons are most reliable at equal size");
    if (!config.gamma) c.warnings.push_back("gamma is resolved separately for each dataset");
  }
  const RltMatrix ra = run_rlt_experiments(a, config, options);
  const RltMatrix rb = run_rlt_experiments(b, config, options);
  for (const RltMatrix* r : {&ra, &rb}) {
    if (r->overflow_warnings > 0) {
      c.warnings.push_back(std::to_string(r->overflow_warnings) +
                           " experiments had more than 1% of their range at or above i_max holes");
    }
  }
  c.a = ra.mean();
  c.b = rb.mean();
  c.score = geometry_score(c.a, c.b);
  return c;
}

}  // namespace gscore
