#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <vector>

#include "gscore/geometry.hpp"

namespace gscore {

/// A simplex of dimension 0..2 over landmark labels, tagged with the
/// relaxation value (squared-distance units) at which it enters.
struct FilteredSimplex {
  std::array<std::int32_t, 3> vertices{-1, -1, -1};  // strictly increasing, unused slots = -1
  std::int32_t size = 0;                              // number of vertices, 1..3
  double appearance = 0.0;

  int dimension() const noexcept { return size - 1; }
  bool same_vertices(const FilteredSimplex& o) const noexcept {
    return size == o.size && vertices == o.vertices;
  }

  static FilteredSimplex vertex(std::int32_t a, double t) { return {{a, -1, -1}, 1, t}; }
  static FilteredSimplex edge(std::int32_t a, std::int32_t b, double t) { return {{a, b, -1}, 2, t}; }
  static FilteredSimplex triangle(std::int32_t a, std::int32_t b, std::int32_t c, double t) {
    return {{a, b, c}, 3, t};
  }

  friend bool operator==(const FilteredSimplex&, const FilteredSimplex&) = default;
};

/// Face-closed, monotone filtration of the relaxed witness complex,
/// truncated at alpha_max.
struct WitnessFiltration {
  std::vector<FilteredSimplex> simplices;
  double alpha_max = 0.0;
  std::int32_t n_landmarks = 0;
};

/// Weak witness filtration of dimension <= 2.
///
/// For a witness w with squared distances s[l] = d(l, w)^2, a candidate
/// simplex sigma costs
///   alpha_w(sigma) = max(0, max_{l in sigma} s[l] - min_{l' not in sigma} s[l'])
/// (empty complement -> 0). The raw appearance a(sigma) is the min over all
/// witnesses; the stored appearance is max(a(sigma), appearance of each facet).
/// Exactly the simplices with stored appearance <= alpha_max are returned,
/// ordered vertices, edges, triangles, each lexicographically.
///
/// Throws ParameterError for alpha_max <= 0 (or non-finite), an empty
/// landmark set, or max_dim != 2.
WitnessFiltration build_witness_filtration(const DistanceMatrix& d, double alpha_max, int max_dim = 2);

/// Throws InternalError if `f` is not face-closed, not monotone, has
/// duplicates, malformed vertex tuples or appearances outside [0, alpha_max].
void check_filtration(const WitnessFiltration& f);

namespace detail {
// Raw-appearance storage switches from a dense array to a hash map once
// C(L0, 3) exceeds this many triangles.
inline constexpr std::uint64_t kDenseTriangleLimit = std::uint64_t{1} << 22;

WitnessFiltration build_witness_filtration(const DistanceMatrix& d, double alpha_max, int max_dim,
                                           std::uint64_t dense_triangle_limit);
}  // namespace detail

}  // namespace gscore
