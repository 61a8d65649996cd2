#include "gscore/geometry.hpp"

#include <algorithm>
#include <unordered_map>

namespace gscore {

void check_landmarks(const LandmarkSet& landmarks, Index n_samples) {
  if (landmarks.indices.empty()) throw ParameterError("landmark set is empty");
  for (Index idx : landmarks.indices) {
    if (idx < 0 || idx >= n_samples) {
      throw ParameterError("landmark index " + std::to_string(idx) + " out of range for " +
                           std::to_string(n_samples) + " samples");
    }
  }
}

namespace detail {

DistanceMatrix distances_from_rows(const LandmarkSet& landmarks, const RowMatrixXd& points) {
  const Index n = points.rows();
  DistanceMatrix d(landmarks.size(), n);
  for (Index l = 0; l < landmarks.size(); ++l) {
    const auto anchor = points.row(landmarks.indices[static_cast<std::size_t>(l)]);
    for (Index w = 0; w < n; ++w) {
      d(l, w) = (points.row(w) - anchor).norm();
    }
  }
  return d;
}

}  // namespace detail

DistanceMatrix pairwise_distances(const LandmarkSet& landmarks, const PointCloud& cloud) {
  check_landmarks(landmarks, cloud.n_samples());
  return detail::distances_from_rows(landmarks, cloud.data());
}

LandmarkSet sample_landmarks(Index n_samples, Index l0, Rng& rng) {
  if (l0 < 1) throw ParameterError("number of landmarks must be at least 1");
  if (l0 > n_samples) {
    throw ParameterError("dataset too small: " + std::to_string(n_samples) + " samples for " +
                         std::to_string(l0) + " landmarks");
  }
  // Virtual identity permutation; only displaced slots are stored.
  std::unordered_map<Index, Index> displaced;
  displaced.reserve(static_cast<std::size_t>(2 * l0));
  auto slot = [&](Index i) {
    auto it = displaced.find(i);
    return it == displaced.end() ? i : it->second;
  };
  LandmarkSet out;
  out.indices.reserve(static_cast<std::size_t>(l0));
  for (Index i = 0; i < l0; ++i) {
    const Index j = i + static_cast<Index>(rng.uniform_index(static_cast<std::uint64_t>(n_samples - i)));
    const Index picked = slot(j);
    displaced[j] = slot(i);
    out.indices.push_back(picked);
  }
  return out;
}

LandmarkSet sample_landmarks(const PointCloud& cloud, Index l0, Rng& rng) {
  return sample_landmarks(cloud.n_samples(), l0, rng);
}

double max_pairwise_distance(const LandmarkSet& landmarks, const PointCloud& cloud) {
  check_landmarks(landmarks, cloud.n_samples());
  double best = 0.0;
  const auto& x = cloud.data();
  for (std::size_t a = 0; a < landmarks.indices.size(); ++a) {
    for (std::size_t b = a + 1; b < landmarks.indices.size(); ++b) {
      best = std::max(best, (x.row(landmarks.indices[a]) - x.row(landmarks.indices[b])).norm());
    }
  }
  return best;
}

}  // namespace gscore
