#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gscore/artifact.hpp"
#include "gscore/cli.hpp"
#include "gscore/data_io.hpp"

using namespace gscore;

namespace {

namespace fs = std::filesystem;

const fs::path kData = GSCORE_TEST_DATA;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "gscore");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("gscore_cli_" + std::to_string(std::rand()))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

// Artifact with hand-set rows, for the golden plot.
RltArtifact fixed_artifact(std::initializer_list<std::initializer_list<double>> rows) {
  RltArtifact a;
  a.config.l0 = 8;
  a.config.gamma = 0.125;
  a.gamma = 0.125;
  a.config.n = static_cast<Index>(rows.size());
  a.config.i_max = static_cast<Index>(rows.begin()->size());
  a.rlt.resize(a.config.n, a.config.i_max);
  Index i = 0;
  for (const auto& r : rows) {
    Index j = 0;
    for (double v : r) a.rlt(i, j++) = v;
    ++i;
  }
  a.mrlt = a.rlt.colwise().mean().transpose();
  a.dataset_fingerprint = "fnv1a64:0000000000000000";
  return a;
}

const std::vector<std::string> kFast = {"--landmarks", "16", "--gamma", "0.125", "--imax", "4",
                                        "--experiments", "20", "--quiet"};

std::vector<std::string> with_fast(std::vector<std::string> v) {
  v.insert(v.end(), kFast.begin(), kFast.end());
  return v;
}

}  // namespace

TEST_CASE("format_score") {
  CHECK(cli::format_score(0.0) == "0.0e0");
  CHECK(cli::format_score(0.00204) == "2.04e-3");
  CHECK(cli::format_score(1.5) == "1.5e0");
  CHECK(cli::format_score(2.0) == "2.0e0");
  CHECK(cli::format_score(1e-10) == "1.0e-10");
  CHECK(cli::format_score(123.0) == "1.23e2");
}

TEST_CASE("usage errors") {
  CHECK(invoke({}).code == cli::kUsage);
  CHECK(invoke({"frobnicate"}).code == cli::kUsage);
  CHECK(invoke({"--help"}).code == cli::kOk);
  CHECK(invoke({"rlt", "--input", "x.csv"}).code == cli::kUsage);
  CHECK(invoke({"synth", "--shape", "torus", "--n", "10", "--seed", "1", "--out", "x.csv"}).code == cli::kUsage);

  TempDir dir;
  REQUIRE(invoke({"synth", "--shape", "circle", "--n", "50", "--seed", "1", "--out", dir / "c.csv"}).code == 0);
  CHECK(invoke(with_fast({"rlt", "--input", dir / "c.csv", "--out", dir / "a.json", "--gamma", "-1"})).code ==
        cli::kUsage);
  CHECK(invoke({"rlt", "--input", dir / "c.csv", "--out", dir / "a.json", "--landmarks", "51", "--quiet"}).code ==
        cli::kUsage);
  CHECK(invoke({"rlt", "--input", dir / "c.txt", "--out", dir / "a.json"}).code == cli::kUsage);
  CHECK(invoke({"score", dir / "c.csv", dir / "a.json"}).code == cli::kUsage);
}

TEST_CASE("input errors") {
  TempDir dir;
  CHECK(invoke(with_fast({"rlt", "--input", dir / "missing.csv", "--out", dir / "a.json"})).code == cli::kInput);
  {
    std::ofstream(dir / "bad.csv") << "1,2\n3\n";
  }
  const Result r = invoke(with_fast({"rlt", "--input", dir / "bad.csv", "--out", dir / "a.json"}));
  CHECK(r.code == cli::kInput);
  CHECK(r.err.find("line 2") != std::string::npos);
  {
    std::ofstream(dir / "nan.csv") << "1,2\nnan,3\n";
  }
  CHECK(invoke({"rlt", "--input", dir / "nan.csv", "--out", dir / "a.json", "--landmarks", "3", "--quiet"}).code ==
        cli::kInput);
  CHECK(invoke(with_fast({"rlt", "--input", (kData / "cube3d.npy").string(), "--out", dir / "a.json"})).code ==
        cli::kInput);
  {
    std::ofstream(dir / "broken.json") << "{\"format_version\": 1}";
  }
  CHECK(invoke({"score", dir / "broken.json", dir / "broken.json"}).code == cli::kInput);
}

TEST_CASE("synth, rlt and score end to end") {
  TempDir dir;
  REQUIRE(invoke({"synth", "--shape", "circle", "--n", "300", "--seed", "1", "--out", dir / "c.npy"}).code == 0);
  REQUIRE(invoke({"synth", "--shape", "filled_disk", "--n", "300", "--seed", "2", "--out", dir / "d.csv"}).code == 0);
  CHECK(load_pointcloud(dir / "c.npy", FileFormat::npy).n_samples() == 300);

  const Result rc = invoke(with_fast({"rlt", "--input", dir / "c.npy", "--out", dir / "c.json", "--threads", "1"}));
  REQUIRE(rc.code == 0);
  const Result rd = invoke(with_fast({"rlt", "--input", dir / "d.csv", "--out", dir / "d.json"}));
  REQUIRE(rd.code == 0);

  SUBCASE("artifacts are byte-identical across runs and thread counts") {
    REQUIRE(invoke(with_fast({"rlt", "--input", dir / "c.npy", "--out", dir / "c4.json", "--threads", "4"})).code == 0);
    CHECK(slurp(dir / "c.json") == slurp(dir / "c4.json"));
    CHECK(slurp(dir / "c.json").find("timing") == std::string::npos);
  }
  SUBCASE("an artifact scored against itself prints 0.0e0") {
    const Result s = invoke({"score", dir / "c.json", dir / "c.json"});
    CHECK(s.code == 0);
    CHECK(s.out == "0.0e0\n");
  }
  SUBCASE("artifact score equals the recomputed value") {
    const Result s = invoke({"score", dir / "c.json", dir / "d.json", "--out", dir / "report.json"});
    CHECK(s.code == 0);
    const double expected = geometry_score(load_artifact(dir / "c.json").distribution(),
                                           load_artifact(dir / "d.json").distribution());
    CHECK(s.out == cli::format_score(expected) + "\n");
    CHECK(expected > 0.5);
    const std::string report = slurp(dir / "report.json");
    CHECK(report.find("\"score_x1000\"") != std::string::npos);
  }
  SUBCASE("dataset mode matches artifact mode") {
    const Result s = invoke(with_fast({"score", dir / "c.npy", dir / "d.csv"}));
    CHECK(s.code == 0);
    CHECK(s.out == invoke({"score", dir / "c.json", dir / "d.json"}).out);
  }
  SUBCASE("mismatched i_max is a usage error") {
    REQUIRE(invoke({"rlt", "--input", dir / "c.npy", "--out", dir / "c5.json", "--landmarks", "16", "--gamma", "0.125",
                  "--imax", "5", "--experiments", "20", "--quiet"}).code == 0);
    CHECK(invoke({"score", dir / "c.json", dir / "c5.json"}).code == cli::kUsage);
  }
  SUBCASE("unequal sizes warn") {
    REQUIRE(invoke({"synth", "--shape", "circle", "--n", "200", "--seed", "3", "--out", dir / "small.csv"}).code == 0);
    const Result s = invoke(with_fast({"score", dir / "c.npy", dir / "small.csv"}));
    CHECK(s.code == 0);
    CHECK(s.err.find("warning") != std::string::npos);
  }
  SUBCASE("record-timing adds the timing field") {
    REQUIRE(invoke(with_fast({"rlt", "--input", dir / "c.npy", "--out", dir / "t.json", "--record-timing"})).code == 0);
    CHECK(slurp(dir / "t.json").find("mean_experiment_ms") != std::string::npos);
  }
  SUBCASE("progress goes to stderr") {
    const Result r = invoke({"rlt", "--input", dir / "c.npy", "--out", dir / "p.json", "--landmarks", "16",
                          "--experiments", "5", "--imax", "4"});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    CHECK(r.err.find("5/5") != std::string::npos);
  }
}

TEST_CASE("plot matches the golden SVG") {
  TempDir dir;
  save_artifact(dir / "circle.json", fixed_artifact({{0.0, 1.0, 0.0, 0.0}, {0.1, 0.9, 0.0, 0.0}}));
  save_artifact(dir / "disk.json", fixed_artifact({{0.9, 0.1, 0.0, 0.0}, {0.8, 0.1, 0.1, 0.0}}));

  REQUIRE(invoke({"plot", dir / "circle.json", "--out", dir / "one.svg"}).code == 0);
  CHECK(slurp(dir / "one.svg") == slurp(kData / "plot_one.svg"));

  REQUIRE(invoke({"plot", dir / "circle.json", dir / "disk.json", "--labels", "circle,filled disk", "--out",
               dir / "two.svg"})
              .code == 0);
  CHECK(slurp(dir / "two.svg") == slurp(kData / "plot_two.svg"));

  CHECK(invoke({"plot", dir / "circle.json", "--labels", "a,b", "--out", dir / "x.svg"}).code == cli::kUsage);
}
