#include "gscore/witness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <string>
#include <unordered_map>

namespace gscore {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

constexpr std::uint64_t choose2(std::uint64_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }
constexpr std::uint64_t choose3(std::uint64_t n) { return n < 3 ? 0 : n * (n - 1) * (n - 2) / 6; }

// Combinatorial number system ranks for sorted tuples a < b < c.
constexpr std::uint64_t edge_rank(std::uint64_t a, std::uint64_t b) { return choose2(b) + a; }
constexpr std::uint64_t triangle_rank(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return choose3(c) + choose2(b) + a;
}

// Min-accumulator over triangle ranks: dense for small landmark sets, hashed otherwise.
class TriangleTable {
 public:
  TriangleTable(std::uint64_t n_triangles, std::uint64_t dense_limit) : dense_(n_triangles <= dense_limit) {
    if (dense_) values_.assign(n_triangles, kInf);
  }

  void lower(std::uint64_t rank, double value) {
    if (dense_) {
      values_[rank] = std::min(values_[rank], value);
    } else {
      auto [it, inserted] = sparse_.try_emplace(rank, value);
      if (!inserted) it->second = std::min(it->second, value);
    }
  }

  double get(std::uint64_t rank) const {
    if (dense_) return values_[rank];
    auto it = sparse_.find(rank);
    return it == sparse_.end() ? kInf : it->second;
  }

  bool dense() const noexcept { return dense_; }
  const std::unordered_map<std::uint64_t, double>& sparse() const noexcept { return sparse_; }

 private:
  bool dense_;
  std::vector<double> values_;
  std::unordered_map<std::uint64_t, double> sparse_;
};

// Per-witness scratch: landmarks that can belong to some simplex of cost <= alpha_max.
struct WitnessScan {
  std::vector<std::int32_t> order;       // all landmarks, first four by ascending s
  std::vector<std::int32_t> candidates;  // ascending s
  std::vector<double> sq;                // s[l]
};

// Smallest s over landmarks outside {a, b, c} (-1 = unused slot). Only the
// four nearest landmarks need checking since sigma has at most three.
inline double complement_min(const WitnessScan& scan, std::int32_t a, std::int32_t b, std::int32_t c) {
  const std::size_t head = std::min<std::size_t>(4, scan.order.size());
  for (std::size_t k = 0; k < head; ++k) {
    const std::int32_t l = scan.order[k];
    if (l != a && l != b && l != c) return scan.sq[static_cast<std::size_t>(l)];
  }
  return kInf;
}

inline double witness_cost(double farthest, double nearest_outside) {
  return std::max(0.0, farthest - nearest_outside);
}

}  // namespace

namespace detail {

WitnessFiltration build_witness_filtration(const DistanceMatrix& d, double alpha_max, int max_dim,
                                           std::uint64_t dense_triangle_limit) {
  if (!(alpha_max > 0.0) || !std::isfinite(alpha_max)) {
    throw ParameterError("alpha_max must be positive and finite");
  }
  if (max_dim != 2) throw ParameterError("only max_dim = 2 is supported");
  if (d.rows() < 1) throw ParameterError("landmark set is empty");
  if (d.rows() > std::numeric_limits<std::int32_t>::max()) throw ParameterError("too many landmarks");

  const auto n_landmarks = static_cast<std::size_t>(d.rows());
  const Index n_witnesses = d.cols();

  std::vector<double> vertex_raw(n_landmarks, kInf);
  std::vector<double> edge_raw(choose2(n_landmarks), kInf);
  TriangleTable triangle_raw(choose3(n_landmarks), dense_triangle_limit);

  WitnessScan scan;
  scan.order.resize(n_landmarks);
  scan.sq.resize(n_landmarks);

  for (Index w = 0; w < n_witnesses; ++w) {
    for (std::size_t l = 0; l < n_landmarks; ++l) {
      const double v = d(static_cast<Index>(l), w);
      scan.sq[l] = v * v;
    }
    std::iota(scan.order.begin(), scan.order.end(), 0);
    const std::size_t head = std::min<std::size_t>(4, n_landmarks);
    auto by_sq = [&](std::int32_t a, std::int32_t b) {
      const double sa = scan.sq[static_cast<std::size_t>(a)];
      const double sb = scan.sq[static_cast<std::size_t>(b)];
      return sa < sb || (sa == sb && a < b);
    };
    std::partial_sort(scan.order.begin(), scan.order.begin() + static_cast<std::ptrdiff_t>(head),
                      scan.order.end(), by_sq);

    // A k-simplex of cost <= alpha_max has all its members within
    // alpha_max of the (k+1)-th nearest landmark, because one of the k+1
    // nearest lies outside it. The slack absorbs rounding in the
    // comparison; the exact cost is re-tested below.
    std::array<double, 3> reach{};
    for (std::size_t k = 0; k < 3; ++k) {
      const double pivot = k + 1 < n_landmarks ? scan.sq[static_cast<std::size_t>(scan.order[k + 1])] : kInf;
      const double bound = pivot + alpha_max;
      reach[k] = bound + std::abs(bound) * 1e-12;
    }

    scan.candidates.clear();
    for (std::size_t l = 0; l < n_landmarks; ++l) {
      if (scan.sq[l] <= reach[2]) scan.candidates.push_back(static_cast<std::int32_t>(l));
    }
    std::sort(scan.candidates.begin(), scan.candidates.end(), by_sq);

    const std::size_t nc = scan.candidates.size();
    auto sq_of = [&](std::int32_t l) { return scan.sq[static_cast<std::size_t>(l)]; };

    for (std::size_t i = 0; i < nc; ++i) {
      const std::int32_t a = scan.candidates[i];
      const double sa = sq_of(a);
      if (sa <= reach[0]) {
        const double cost = witness_cost(sa, complement_min(scan, a, -1, -1));
        if (cost <= alpha_max) {
          double& slot = vertex_raw[static_cast<std::size_t>(a)];
          slot = std::min(slot, cost);
        }
      }
      // Candidates are sorted by s, so the later index holds the farthest member.
      for (std::size_t j = i + 1; j < nc; ++j) {
        const std::int32_t b = scan.candidates[j];
        const double sb = sq_of(b);
        if (sb <= reach[1]) {
          const double cost = witness_cost(sb, complement_min(scan, a, b, -1));
          if (cost <= alpha_max) {
            const auto [lo, hi] = std::minmax(a, b);
            double& slot = edge_raw[edge_rank(static_cast<std::uint64_t>(lo), static_cast<std::uint64_t>(hi))];
            slot = std::min(slot, cost);
          }
        }
        for (std::size_t k = j + 1; k < nc; ++k) {
          const std::int32_t c = scan.candidates[k];
          const double cost = witness_cost(sq_of(c), complement_min(scan, a, b, c));
          if (cost <= alpha_max) {
            std::array<std::int32_t, 3> t{a, b, c};
            std::sort(t.begin(), t.end());
            triangle_raw.lower(triangle_rank(static_cast<std::uint64_t>(t[0]), static_cast<std::uint64_t>(t[1]),
                                             static_cast<std::uint64_t>(t[2])),
                               cost);
          }
        }
      }
    }
  }

  WitnessFiltration out;
  out.alpha_max = alpha_max;
  out.n_landmarks = static_cast<std::int32_t>(n_landmarks);

  std::vector<double> vertex_time(n_landmarks, kInf);
  for (std::size_t a = 0; a < n_landmarks; ++a) {
    vertex_time[a] = vertex_raw[a];
    if (vertex_time[a] <= alpha_max) {
      out.simplices.push_back(FilteredSimplex::vertex(static_cast<std::int32_t>(a), vertex_time[a]));
    }
  }

  std::vector<double> edge_time(edge_raw.size(), kInf);
  for (std::size_t b = 1; b < n_landmarks; ++b) {
    for (std::size_t a = 0; a < b; ++a) {
      const std::uint64_t r = edge_rank(a, b);
      if (edge_raw[r] == kInf) continue;
      const double t = std::max({edge_raw[r], vertex_time[a], vertex_time[b]});
      edge_time[r] = t;
    }
  }
  // Emit edges lexicographically (a major), which differs from rank order.
  for (std::size_t a = 0; a < n_landmarks; ++a) {
    for (std::size_t b = a + 1; b < n_landmarks; ++b) {
      const double t = edge_time[edge_rank(a, b)];
      if (t <= alpha_max) {
        out.simplices.push_back(
            FilteredSimplex::edge(static_cast<std::int32_t>(a), static_cast<std::int32_t>(b), t));
      }
    }
  }

  auto triangle_time = [&](std::uint64_t a, std::uint64_t b, std::uint64_t c, double raw) {
    return std::max({raw, edge_time[edge_rank(a, b)], edge_time[edge_rank(a, c)], edge_time[edge_rank(b, c)]});
  };

  std::vector<FilteredSimplex> triangles;
  if (triangle_raw.dense()) {
    for (std::size_t a = 0; a < n_landmarks; ++a) {
      for (std::size_t b = a + 1; b < n_landmarks; ++b) {
        if (edge_time[edge_rank(a, b)] > alpha_max) continue;
        for (std::size_t c = b + 1; c < n_landmarks; ++c) {
          const double raw = triangle_raw.get(triangle_rank(a, b, c));
          if (raw == kInf) continue;
          const double t = triangle_time(a, b, c, raw);
          if (t <= alpha_max) {
            triangles.push_back(FilteredSimplex::triangle(static_cast<std::int32_t>(a), static_cast<std::int32_t>(b),
                                                          static_cast<std::int32_t>(c), t));
          }
        }
      }
    }
  } else {
    for (const auto& [rank, raw] : triangle_raw.sparse()) {
      // Invert the combinatorial rank.
      std::uint64_t c = 2;
      while (choose3(c + 1) <= rank) ++c;
      std::uint64_t rest = rank - choose3(c);
      std::uint64_t b = 1;
      while (choose2(b + 1) <= rest) ++b;
      const std::uint64_t a = rest - choose2(b);
      const double t = triangle_time(a, b, c, raw);
      if (t <= alpha_max) {
        triangles.push_back(FilteredSimplex::triangle(static_cast<std::int32_t>(a), static_cast<std::int32_t>(b),
                                                      static_cast<std::int32_t>(c), t));
      }
    }
    std::sort(triangles.begin(), triangles.end(),
              [](const FilteredSimplex& x, const FilteredSimplex& y) { return x.vertices < y.vertices; });
  }
  out.simplices.insert(out.simplices.end(), triangles.begin(), triangles.end());
  return out;
}

}  // namespace detail

WitnessFiltration build_witness_filtration(const DistanceMatrix& d, double alpha_max, int max_dim) {
  return detail::build_witness_filtration(d, alpha_max, max_dim, detail::kDenseTriangleLimit);
}

void check_filtration(const WitnessFiltration& f) {
  auto fail = [](const std::string& what) { throw InternalError("invalid filtration: " + what); };
  if (!(f.alpha_max > 0.0)) fail("alpha_max must be positive");

  std::vector<double> vertex_time(static_cast<std::size_t>(std::max(f.n_landmarks, 0)), kInf);
  std::unordered_map<std::uint64_t, double> edge_time;
  std::set<std::array<std::int32_t, 3>> seen;

  // Faces may be listed after their cofaces, so index everything first.
  for (const auto& s : f.simplices) {
    if (s.size < 1 || s.size > 3) fail("simplex size out of range");
    for (int k = 0; k < 3; ++k) {
      const std::int32_t v = s.vertices[static_cast<std::size_t>(k)];
      if (k < s.size) {
        if (v < 0 || v >= f.n_landmarks) fail("vertex label out of range");
        if (k > 0 && v <= s.vertices[static_cast<std::size_t>(k - 1)]) fail("vertices not strictly increasing");
      } else if (v != -1) {
        fail("unused vertex slot must be -1");
      }
    }
    if (!(s.appearance >= 0.0) || s.appearance > f.alpha_max) fail("appearance outside [0, alpha_max]");
    if (!seen.insert(s.vertices).second) fail("duplicate simplex");
    if (s.size == 1) vertex_time[static_cast<std::size_t>(s.vertices[0])] = s.appearance;
    if (s.size == 2) {
      edge_time[edge_rank(static_cast<std::uint64_t>(s.vertices[0]), static_cast<std::uint64_t>(s.vertices[1]))] =
          s.appearance;
    }
  }

  auto edge_at = [&](std::int32_t a, std::int32_t b) {
    auto it = edge_time.find(edge_rank(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b)));
    if (it == edge_time.end()) fail("missing edge face");
    return it->second;
  };
  for (const auto& s : f.simplices) {
    if (s.size == 2) {
      for (int k = 0; k < 2; ++k) {
        const double t = vertex_time[static_cast<std::size_t>(s.vertices[static_cast<std::size_t>(k)])];
        if (t == kInf) fail("missing vertex face");
        if (t > s.appearance) fail("edge appears before one of its vertices");
      }
    } else if (s.size == 3) {
      const auto [a, b, c] = s.vertices;
      for (double t : {edge_at(a, b), edge_at(a, c), edge_at(b, c)}) {
        if (t > s.appearance) fail("triangle appears before one of its edges");
      }
    }
  }
}

}  // namespace gscore
