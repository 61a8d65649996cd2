#include <doctest.h>

#include <algorithm>
#include <set>

#include "gscore/persistence.hpp"
#include "oracles.hpp"

using namespace gscore;

namespace {

using FS = FilteredSimplex;

WitnessFiltration make(std::vector<FilteredSimplex> s, std::int32_t n_landmarks, double alpha_max) {
  WitnessFiltration f;
  f.simplices = std::move(s);
  f.n_landmarks = n_landmarks;
  f.alpha_max = alpha_max;
  return f;
}

std::multiset<std::pair<double, double>> intervals(const Barcode& b, int dim) {
  std::multiset<std::pair<double, double>> out;
  for (const auto& iv : b.in_dimension(dim)) out.emplace(iv.birth, iv.death);
  return out;
}

WitnessFiltration random_filtration(std::uint64_t seed) {
  Rng rng(seed);
  const auto n_l = static_cast<Index>(3 + rng.uniform_index(6));
  const auto n_w = static_cast<Index>(n_l + rng.uniform_index(static_cast<std::uint64_t>(33 - n_l)));
  RowMatrixXd x(n_w, 2);
  for (Index i = 0; i < x.size(); ++i) x.data()[i] = rng.uniform01();
  LandmarkSet l;
  for (Index i = 0; i < n_l; ++i) l.indices.push_back(i);
  const PointCloud cloud(x);
  const double alpha_max = (0.05 + 0.5 * rng.uniform01()) * max_pairwise_distance(l, cloud);
  return build_witness_filtration(pairwise_distances(l, cloud), alpha_max);
}

}  // namespace

TEST_CASE("single vertex") {
  const Barcode b = compute_persistence(make({FS::vertex(0, 0.0)}, 1, 1.0));
  REQUIRE(b.intervals.size() == 1);
  CHECK(b.intervals[0].dim == 0);
  CHECK(b.intervals[0].birth == 0.0);
  CHECK(b.intervals[0].infinite());
}

TEST_CASE("hollow and filled triangle") {
  std::vector<FilteredSimplex> hollow = {FS::vertex(0, 0), FS::vertex(1, 0), FS::vertex(2, 0),
                                         FS::edge(0, 1, 1), FS::edge(0, 2, 1), FS::edge(1, 2, 1)};
  const Barcode h = compute_persistence(make(hollow, 3, 5.0));
  CHECK(intervals(h, 0) == std::multiset<std::pair<double, double>>{{0, 1}, {0, 1}, {0, kInfiniteDeath}});
  CHECK(intervals(h, 1) == std::multiset<std::pair<double, double>>{{1, kInfiniteDeath}});

  auto filled = hollow;
  filled.push_back(FS::triangle(0, 1, 2, 2));
  const Barcode f = compute_persistence(make(filled, 3, 5.0));
  CHECK(intervals(f, 0) == intervals(h, 0));
  CHECK(intervals(f, 1) == std::multiset<std::pair<double, double>>{{1, 2}});
}

TEST_CASE("square with a diagonal: two loops, one filled") {
  // 0-1-2-3 square plus diagonal 0-2; triangle (0,1,2) fills one loop.
  std::vector<FilteredSimplex> s = {FS::vertex(0, 0), FS::vertex(1, 0), FS::vertex(2, 0), FS::vertex(3, 0),
                                    FS::edge(0, 1, 1), FS::edge(1, 2, 1), FS::edge(2, 3, 1), FS::edge(0, 3, 1),
                                    FS::edge(0, 2, 2), FS::triangle(0, 1, 2, 3)};
  const Barcode b = compute_persistence(make(s, 4, 5.0));
  CHECK(intervals(b, 1) == std::multiset<std::pair<double, double>>{{1, kInfiniteDeath}, {2, 3}});
}

TEST_CASE("barcodes match rank-based Betti numbers at every filtration value") {
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const WitnessFiltration f = random_filtration(seed);
    const Barcode b = compute_persistence(f);
    std::set<double> values;
    for (const auto& s : f.simplices) values.insert(s.appearance);
    for (double alpha : values) {
      const oracle::Betti ref = oracle::betti_at(f.simplices, alpha);
      CHECK_MESSAGE(oracle::interval_count(b.intervals, 0, alpha) == ref.b0, "seed " << seed << " alpha " << alpha);
      CHECK_MESSAGE(oracle::interval_count(b.intervals, 1, alpha) == ref.b1, "seed " << seed << " alpha " << alpha);
    }
  }
}

TEST_CASE("pairing invariants") {
  for (std::uint64_t seed = 200; seed < 260; ++seed) {
    const WitnessFiltration f = random_filtration(seed);
    const Barcode b = compute_persistence(f);
    std::multiset<double> times;
    for (const auto& s : f.simplices) times.insert(s.appearance);

    // every endpoint is a real appearance time
    for (const auto& iv : b.intervals) {
      CHECK(times.count(iv.birth) > 0);
      CHECK(iv.birth <= iv.death);
      CHECK(iv.birth <= f.alpha_max);
      if (!iv.infinite()) CHECK(times.count(iv.death) > 0);
    }
    // each vertex opens exactly one dim-0 interval
    std::size_t n_vertices = 0;
    for (const auto& s : f.simplices) n_vertices += s.size == 1;
    CHECK(b.in_dimension(0).size() == n_vertices);

    // infinite dim-0 classes = components of the whole complex
    const oracle::Betti at_end = oracle::betti_at(f.simplices, f.alpha_max);
    const auto inf0 = std::count_if(b.intervals.begin(), b.intervals.end(),
                                    [](const PersistenceInterval& iv) { return iv.dim == 0 && iv.infinite(); });
    CHECK(inf0 == at_end.b0);

    // beta_0 at alpha = 0: vertices present at 0 minus dim-0 deaths at 0
    std::size_t v0 = 0;
    for (const auto& s : f.simplices) v0 += s.size == 1 && s.appearance == 0.0;
    std::size_t deaths0 = 0;
    for (const auto& iv : b.in_dimension(0)) deaths0 += iv.death == 0.0;
    CHECK(static_cast<int>(v0 - deaths0) == oracle::betti_at(f.simplices, 0.0).b0);
  }
}

TEST_CASE("Euler characteristic matches the barcode at every threshold") {
  for (std::uint64_t seed = 300; seed < 340; ++seed) {
    const WitnessFiltration f = random_filtration(seed);
    const Barcode b = compute_persistence(f);
    std::set<double> values;
    for (const auto& s : f.simplices) values.insert(s.appearance);
    for (double alpha : values) {
      int chi = 0;
      for (const auto& s : f.simplices) {
        if (s.appearance > alpha) continue;
        chi += s.size == 2 ? -1 : 1;
      }
      // beta_2 from the oracle: triangles minus rank of their boundary.
      int n_tri = 0;
      for (const auto& s : f.simplices) n_tri += s.size == 3 && s.appearance <= alpha;
      const oracle::Betti ref = oracle::betti_at(f.simplices, alpha);
      const int n_edges = static_cast<int>(std::count_if(f.simplices.begin(), f.simplices.end(), [&](const FS& s) {
        return s.size == 2 && s.appearance <= alpha;
      }));
      const int n_verts = static_cast<int>(std::count_if(f.simplices.begin(), f.simplices.end(), [&](const FS& s) {
        return s.size == 1 && s.appearance <= alpha;
      }));
      // rank d1 = V - b0, rank d2 = E - rank d1 - b1, b2 = T - rank d2
      const int rank_d1 = n_verts - ref.b0;
      const int rank_d2 = n_edges - rank_d1 - ref.b1;
      const int b2 = n_tri - rank_d2;
      CHECK(chi == oracle::interval_count(b.intervals, 0, alpha) - oracle::interval_count(b.intervals, 1, alpha) + b2);
    }
  }
}

TEST_CASE("input order does not change the barcode") {
  const WitnessFiltration f = random_filtration(77);
  WitnessFiltration shuffled = f;
  std::reverse(shuffled.simplices.begin(), shuffled.simplices.end());
  CHECK(compute_persistence(f).intervals == compute_persistence(shuffled).intervals);
  CHECK(compute_persistence(f).intervals == compute_persistence(f).intervals);
}

TEST_CASE("dimension 0 only") {
  const WitnessFiltration f = random_filtration(5);
  const Barcode b0 = compute_persistence(f, 0);
  CHECK(b0.in_dimension(1).empty());
  CHECK(b0.in_dimension(0) == compute_persistence(f, 1).in_dimension(0));
  CHECK_THROWS_AS(compute_persistence(f, 2), ParameterError);
}

TEST_CASE("invalid filtration is rejected") {
  CHECK_THROWS_AS(compute_persistence(make({FS::vertex(0, 0), FS::edge(0, 1, 1)}, 2, 5.0)), InternalError);
  CHECK_THROWS_AS(compute_persistence(make({FS::vertex(0, 0), FS::vertex(1, 2), FS::edge(0, 1, 1)}, 2, 5.0)),
                  InternalError);
}
