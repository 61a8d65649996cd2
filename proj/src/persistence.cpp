#include "gscore/persistence.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <unordered_map>

namespace gscore {
namespace {

using Column = std::vector<std::uint32_t>;
constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

// dst <- dst xor src, both sorted ascending.
void add_column(Column& dst, const Column& src, Column& scratch) {
  scratch.clear();
  std::set_symmetric_difference(dst.begin(), dst.end(), src.begin(), src.end(), std::back_inserter(scratch));
  dst.swap(scratch);
}

std::uint64_t pair_key(std::int32_t a, std::int32_t b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
}

}  // namespace

std::vector<PersistenceInterval> Barcode::in_dimension(int dim) const {
  std::vector<PersistenceInterval> out;
  for (const auto& iv : intervals) {
    if (iv.dim == dim) out.push_back(iv);
  }
  return out;
}

Barcode compute_persistence(const WitnessFiltration& filtration, int max_hom_dim) {
  if (max_hom_dim < 0 || max_hom_dim > 1) throw ParameterError("max_hom_dim must be 0 or 1");
  check_filtration(filtration);

  const auto& simplices = filtration.simplices;
  const std::size_t n = simplices.size();
  if (n >= kNone) throw ParameterError("filtration too large");

  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
    const auto& a = simplices[x];
    const auto& b = simplices[y];
    if (a.appearance != b.appearance) return a.appearance < b.appearance;
    if (a.size != b.size) return a.size < b.size;
    return a.vertices < b.vertices;
  });

  // Filtration position of each vertex and edge, for boundary lookup.
  std::vector<std::uint32_t> vertex_pos(static_cast<std::size_t>(filtration.n_landmarks), kNone);
  std::unordered_map<std::uint64_t, std::uint32_t> edge_pos;
  for (std::uint32_t p = 0; p < n; ++p) {
    const auto& s = simplices[order[p]];
    if (s.size == 1) vertex_pos[static_cast<std::size_t>(s.vertices[0])] = p;
    if (s.size == 2) edge_pos.emplace(pair_key(s.vertices[0], s.vertices[1]), p);
  }

  const int top_dim = max_hom_dim + 1;
  std::vector<Column> columns(n);
  std::vector<int> dim_of(n);
  for (std::uint32_t p = 0; p < n; ++p) {
    const auto& s = simplices[order[p]];
    dim_of[p] = s.dimension();
    if (s.dimension() > top_dim) continue;
    Column& col = columns[p];
    if (s.size == 2) {
      col = {vertex_pos[static_cast<std::size_t>(s.vertices[0])], vertex_pos[static_cast<std::size_t>(s.vertices[1])]};
    } else if (s.size == 3) {
      const auto [a, b, c] = s.vertices;
      col = {edge_pos.at(pair_key(a, b)), edge_pos.at(pair_key(a, c)), edge_pos.at(pair_key(b, c))};
    }
    std::sort(col.begin(), col.end());
  }

  // pivot_owner[row] = column whose reduced lowest entry is `row`.
  std::vector<std::uint32_t> pivot_owner(n, kNone);
  std::vector<bool> cleared(n, false);
  Column scratch;

  for (int dim = top_dim; dim >= 1; --dim) {
    for (std::uint32_t j = 0; j < n; ++j) {
      if (dim_of[j] != dim) continue;
      Column& col = columns[j];
      if (cleared[j]) {
        col.clear();
        continue;
      }
      while (!col.empty()) {
        const std::uint32_t owner = pivot_owner[col.back()];
        if (owner == kNone) break;
        add_column(col, columns[owner], scratch);
      }
      if (!col.empty()) {
        pivot_owner[col.back()] = j;
        cleared[col.back()] = true;
      }
    }
  }

  Barcode out;
  out.alpha_max = filtration.alpha_max;
  std::vector<bool> paired(n, false);
  for (std::uint32_t row = 0; row < n; ++row) {
    const std::uint32_t killer = pivot_owner[row];
    if (killer == kNone) continue;
    paired[row] = true;
    paired[killer] = true;
    if (dim_of[row] <= max_hom_dim) {
      out.intervals.push_back({dim_of[row], simplices[order[row]].appearance, simplices[order[killer]].appearance});
    }
  }
  for (std::uint32_t p = 0; p < n; ++p) {
    if (paired[p] || dim_of[p] > max_hom_dim) continue;
    // A nonzero reduced column always owns a pivot.
    if (!columns[p].empty()) throw InternalError("unpaired column with nonzero boundary");
    out.intervals.push_back({dim_of[p], simplices[order[p]].appearance, kInfiniteDeath});
  }
  std::sort(out.intervals.begin(), out.intervals.end(), [](const PersistenceInterval& a, const PersistenceInterval& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    if (a.birth != b.birth) return a.birth < b.birth;
    return a.death < b.death;
  });
  return out;
}

}  // namespace gscore
