#include "gscore/cli.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "gscore/artifact.hpp"
#include "gscore/data_io.hpp"
#include "gscore/pipeline.hpp"
#include "gscore/svg_plot.hpp"

namespace gscore::cli {
namespace {

namespace fs = std::filesystem;

// Failure with a chosen exit code; message goes to stderr.
struct Exit {
  int code;
  std::string message;
};

FileFormat resolve_format(const std::string& flag, const fs::path& path) {
  if (!flag.empty()) return parse_format(flag);
  const auto ext = path.extension().string();
  if (ext == ".csv") return FileFormat::csv;
  if (ext == ".npy") return FileFormat::npy;
  throw Exit{kUsage, "cannot infer format of " + path.string() + "; pass --format csv|npy"};
}

PointCloud load_dataset(const fs::path& path, FileFormat format) {
  try {
    return load_pointcloud(path, format);
  } catch (const FormatError& e) {
    throw Exit{kInput, e.what()};
  } catch (const InputError& e) {
    throw Exit{kInput, path.string() + ": " + e.what()};
  }
}

std::optional<double> parse_gamma(const std::string& text) {
  if (text == "auto") return std::nullopt;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !(v > 0.0)) {
    throw Exit{kUsage, "--gamma must be 'auto' or a positive number, got '" + text + "'"};
  }
  return v;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Exit{kInput, "cannot write " + path.string()};
  f << text;
}

struct RunFlags {
  Index landmarks = 64;
  std::string gamma = "auto";
  Index imax = 100;
  Index experiments = 10000;
  std::uint64_t seed = 0;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  bool quiet = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--landmarks", landmarks, "Landmarks per experiment (L0)")->capture_default_str();
    cmd->add_option("--gamma", gamma, "alpha_max coefficient, or 'auto' for (1/128)*(5000/N)")->capture_default_str();
    cmd->add_option("--imax", imax, "Upper bound on the hole count")->capture_default_str();
    cmd->add_option("--experiments", experiments, "Number of landmark draws (n)")->capture_default_str();
    cmd->add_option("--seed", seed, "Master seed")->capture_default_str();
    cmd->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
    cmd->add_flag("--quiet", quiet, "No progress output");
  }

  ExperimentConfig config() const {
    ExperimentConfig c;
    c.l0 = landmarks;
    c.gamma = parse_gamma(gamma);
    c.i_max = imax;
    c.n = experiments;
    c.seed = seed;
    try {
      c.validate();
    } catch (const ParameterError& e) {
      throw Exit{kUsage, e.what()};
    }
    return c;
  }

  RunOptions options(std::ostream& err, const std::string& tag) const {
    RunOptions o;
    o.threads = threads;
    if (!quiet) {
      o.progress = [&err, tag, last = Index{-1}](Index done, Index total) mutable {
        const Index pct = done * 100 / total;
        if (pct != last || done == total) {
          err << "\r" << tag << " " << done << "/" << total << std::flush;
          last = pct;
        }
        if (done == total) err << "\n";
      };
    }
    return o;
  }
};

RltMatrix run_pipeline(const PointCloud& cloud, const ExperimentConfig& config, const RunOptions& options) {
  if (cloud.n_samples() < config.l0) {
    throw Exit{kUsage, "--landmarks " + std::to_string(config.l0) + " exceeds the dataset size (" +
                           std::to_string(cloud.n_samples()) + " samples)"};
  }
  try {
    return run_rlt_experiments(cloud, config, options);
  } catch (const std::exception& e) {
    throw Exit{kPipeline, std::string("pipeline failed: ") + e.what()};
  }
}

void report_diagnostics(const RltMatrix& m, std::ostream& err, const std::string& tag) {
  if (m.overflow_warnings > 0) {
    err << "warning: " << tag << ": " << m.overflow_warnings
        << " experiments spent more than 1% of the range at or above i_max holes; consider a larger --imax\n";
  }
  if (m.degenerate_experiments > 0) {
    err << "note: " << tag << ": " << m.degenerate_experiments
        << " experiments drew coincident landmarks and were recorded as zero holes\n";
  }
}

bool is_artifact_path(const fs::path& p) { return p.extension() == ".json"; }

}  // namespace

std::string format_score(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::scientific);
  std::string s(buf, ptr);
  const auto e = s.find('e');
  std::string mantissa = s.substr(0, e);
  std::string exponent = s.substr(e + 1);
  if (mantissa.find('.') == std::string::npos) mantissa += ".0";
  bool negative = false;
  if (!exponent.empty() && (exponent[0] == '+' || exponent[0] == '-')) {
    negative = exponent[0] == '-';
    exponent.erase(0, 1);
  }
  const auto nz = exponent.find_first_not_of('0');
  exponent = nz == std::string::npos ? "0" : exponent.substr(nz);
  return mantissa + "e" + (negative ? "-" : "") + exponent;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Topological comparison of point-cloud datasets via mean relative living times"};
  app.require_subcommand(1);

  // rlt
  auto* rlt = app.add_subcommand("rlt", "Estimate the MRLT of a dataset and write an RLT artifact");
  std::string rlt_input, rlt_format, rlt_out;
  bool rlt_timing = false;
  RunFlags rlt_flags;
  rlt->add_option("--input", rlt_input, "Dataset path")->required();
  rlt->add_option("--format", rlt_format, "csv or npy (default: from extension)")
      ->check(CLI::IsMember({"csv", "npy"}));
  rlt->add_option("--out", rlt_out, "Artifact path (JSON)")->required();
  rlt->add_flag("--record-timing", rlt_timing, "Store mean wall time per experiment in the artifact");
  rlt_flags.attach(rlt);

  // score
  auto* score = app.add_subcommand("score", "Geometry score between two datasets or two RLT artifacts");
  std::vector<std::string> score_inputs;
  std::string score_format, score_out;
  RunFlags score_flags;
  score->add_option("inputs", score_inputs, "Two dataset paths or two artifact (.json) paths")
      ->required()
      ->expected(2);
  score->add_option("--format", score_format, "Dataset format (default: from extension)")
      ->check(CLI::IsMember({"csv", "npy"}));
  score->add_option("--out", score_out, "Write a JSON report");
  score_flags.attach(score);

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset");
  std::string synth_shape, synth_out, synth_format;
  SyntheticSpec spec;
  std::optional<double> synth_noise;
  synth->add_option("--shape", synth_shape, "circle, filled_disk, two_circles, noisy_circle or hyperplane")
      ->required()
      ->check(CLI::IsMember({"circle", "filled_disk", "two_circles", "noisy_circle", "hyperplane"}));
  synth->add_option("--n", spec.n_points, "Number of points")->required()->check(CLI::PositiveNumber);
  synth->add_option("--noise", synth_noise, "Gaussian noise sigma per coordinate");
  synth->add_option("--ambient-dim", spec.ambient_dim, "Hyperplane ambient dimension")->capture_default_str();
  synth->add_option("--intrinsic-dim", spec.intrinsic_dim, "Hyperplane intrinsic dimension")->capture_default_str();
  synth->add_option("--seed", spec.seed, "Seed")->required();
  synth->add_option("--out", synth_out, "Output path")->required();
  synth->add_option("--format", synth_format, "csv or npy (default: from extension)")
      ->check(CLI::IsMember({"csv", "npy"}));

  // plot
  auto* plot = app.add_subcommand("plot", "Bar chart (SVG) of MRLT distributions");
  std::vector<std::string> plot_inputs, plot_labels;
  std::string plot_out;
  plot->add_option("artifacts", plot_inputs, "RLT artifact paths")->required();
  plot->add_option("--out", plot_out, "SVG path")->required();
  plot->add_option("--labels", plot_labels, "Series labels")->delimiter(',');

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (rlt->parsed()) {
      const ExperimentConfig config = rlt_flags.config();
      const PointCloud cloud = load_dataset(rlt_input, resolve_format(rlt_format, rlt_input));
      const RltMatrix m = run_pipeline(cloud, config, rlt_flags.options(err, "rlt"));
      report_diagnostics(m, err, rlt_input);
      try {
        save_artifact(rlt_out, make_artifact(m, rlt_timing));
      } catch (const FormatError& e) {
        throw Exit{kInput, e.what()};
      }
      return kOk;
    }

    if (score->parsed()) {
      const fs::path pa = score_inputs[0], pb = score_inputs[1];
      const bool art_a = is_artifact_path(pa), art_b = is_artifact_path(pb);
      if (art_a != art_b) throw Exit{kUsage, "score takes two datasets or two artifacts, not a mix"};
      MrltDistribution ma, mb;
      if (art_a) {
        RltArtifact a, b;
        try {
          a = load_artifact(pa);
          b = load_artifact(pb);
        } catch (const FormatError& e) {
          throw Exit{kInput, e.what()};
        }
        if (a.config.i_max != b.config.i_max) {
          throw Exit{kUsage, "artifacts have different i_max (" + std::to_string(a.config.i_max) + " vs " +
                                 std::to_string(b.config.i_max) + ")"};
        }
        if (a.config.n != b.config.n) err << "warning: artifacts use different numbers of experiments\n";
        if (a.gamma != b.gamma) err << "warning: artifacts use different gamma\n";
        ma = a.distribution();
        mb = b.distribution();
      } else {
        const ExperimentConfig config = score_flags.config();
        const PointCloud ca = load_dataset(pa, resolve_format(score_format, pa));
        const PointCloud cb = load_dataset(pb, resolve_format(score_format, pb));
        if (ca.n_samples() != cb.n_samples()) {
          err << "warning: datasets differ in size (" << ca.n_samples() << " vs " << cb.n_samples()
              << "); results are most reliable at equal size\n";
        }
        const RltMatrix ra = run_pipeline(ca, config, score_flags.options(err, pa.filename().string()));
        const RltMatrix rb = run_pipeline(cb, config, score_flags.options(err, pb.filename().string()));
        report_diagnostics(ra, err, pa.string());
        report_diagnostics(rb, err, pb.string());
        ma = ra.mean();
        mb = rb.mean();
      }
      const double s = geometry_score(ma, mb);
      out << format_score(s) << "\n";
      if (!score_out.empty()) {
        nlohmann::json report = {
            {"a", {{"path", pa.string()}, {"mrlt", std::vector<double>(ma.values.begin(), ma.values.end())}}},
            {"b", {{"path", pb.string()}, {"mrlt", std::vector<double>(mb.values.begin(), mb.values.end())}}},
            {"score", s},
            {"score_x1000", s * 1000.0},
        };
        write_text(score_out, report.dump(2) + "\n");
      }
      return kOk;
    }

    if (synth->parsed()) {
      spec.shape = parse_shape(synth_shape);
      spec.noise_sigma = synth_noise;
      try {
        spec.validate();
      } catch (const ParameterError& e) {
        throw Exit{kUsage, e.what()};
      }
      const FileFormat format = resolve_format(synth_format, synth_out);
      try {
        save_pointcloud(synth_out, generate_synthetic(spec), format);
      } catch (const FormatError& e) {
        throw Exit{kInput, e.what()};
      }
      return kOk;
    }

    if (plot->parsed()) {
      if (!plot_labels.empty() && plot_labels.size() != plot_inputs.size()) {
        throw Exit{kUsage, "--labels needs one label per artifact"};
      }
      std::vector<PlotSeries> series;
      for (std::size_t i = 0; i < plot_inputs.size(); ++i) {
        RltArtifact a;
        try {
          a = load_artifact(plot_inputs[i]);
        } catch (const FormatError& e) {
          throw Exit{kInput, e.what()};
        }
        series.push_back({plot_labels.empty() ? fs::path(plot_inputs[i]).stem().string() : plot_labels[i], a.mrlt});
      }
      write_text(plot_out, render_mrlt_svg(series));
      return kOk;
    }
  } catch (const Exit& e) {
    err << "error: " << e.message << "\n";
    return e.code;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kPipeline;
  }
  return kUsage;
}

}  // namespace gscore::cli
