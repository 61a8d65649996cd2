#include "gscore/rlt.hpp"

#include <algorithm>
#include <utility>

namespace gscore {

int betti_count(std::span<const PersistenceInterval> intervals, double alpha) {
  return static_cast<int>(std::count_if(intervals.begin(), intervals.end(), [alpha](const PersistenceInterval& iv) {
    return iv.birth <= alpha && alpha <= iv.death;
  }));
}

RltVector rlt_from_intervals(std::span<const PersistenceInterval> intervals, double alpha_max, Index i_max) {
  if (i_max < 1) throw ParameterError("i_max must be at least 1");
  if (!(alpha_max > 0.0)) throw ParameterError("alpha_max must be positive");

  // (position, +1 birth / -1 death); segments are half-open so endpoint
  // ties do not matter for the measure.
  std::vector<std::pair<double, int>> events;
  events.reserve(2 * intervals.size());
  for (const auto& iv : intervals) {
    const double b = std::max(iv.birth, 0.0);
    const double d = std::min(iv.death, alpha_max);
    if (!(b < d)) continue;
    events.emplace_back(b, +1);
    events.emplace_back(d, -1);
  }
  std::sort(events.begin(), events.end());

  std::vector<double> length(static_cast<std::size_t>(i_max), 0.0);
  double overflow = 0.0;
  double cursor = 0.0;
  Index level = 0;
  auto credit = [&](double until) {
    const double span = until - cursor;
    if (span <= 0.0) return;
    if (level < i_max) {
      length[static_cast<std::size_t>(level)] += span;
    } else {
      overflow += span;
    }
    cursor = until;
  };
  for (const auto& [pos, delta] : events) {
    credit(pos);
    level += delta;
  }
  credit(alpha_max);

  RltVector out;
  out.values = Eigen::Map<const Eigen::VectorXd>(length.data(), i_max) / alpha_max;
  out.overflow_mass = overflow / alpha_max;
  return out;
}

RltVector rlt_from_barcode(const Barcode& barcode, Index i_max, int dim) {
  const auto intervals = barcode.in_dimension(dim);
  return rlt_from_intervals(intervals, barcode.alpha_max, i_max);
}

MrltDistribution mean_rlt(std::span<const RltVector> rlts) {
  if (rlts.empty()) throw ParameterError("cannot average an empty list of RLT vectors");
  const Index i_max = rlts.front().i_max();
  MrltDistribution m;
  m.values = Eigen::VectorXd::Zero(i_max);
  for (const auto& r : rlts) {
    if (r.i_max() != i_max) throw ParameterError("RLT vectors have mismatched i_max");
    m.values += r.values;
    m.overflow_mass += r.overflow_mass;
  }
  const auto n = static_cast<double>(rlts.size());
  m.values /= n;
  m.overflow_mass /= n;
  m.n_experiments = static_cast<Index>(rlts.size());
  return m;
}

double geometry_score(const MrltDistribution& a, const MrltDistribution& b) {
  if (a.i_max() != b.i_max()) throw ParameterError("MRLT distributions have mismatched i_max");
  return (a.values - b.values).squaredNorm();
}

Index map_betti(const MrltDistribution& m) {
  if (m.i_max() < 1) throw ParameterError("MRLT distribution is empty");
  Index best = 0;
  for (Index i = 1; i < m.i_max(); ++i) {
    if (m.values[i] > m.values[best]) best = i;
  }
  return best;
}

}  // namespace gscore
