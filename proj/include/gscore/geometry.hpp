#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "gscore/errors.hpp"
#include "gscore/rng.hpp"

namespace gscore {

using Index = Eigen::Index;

/// Row-major dense matrix; rows are samples.
template <typename Scalar>
using RowMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using RowMatrixXd = RowMatrix<double>;

/// L0 x N matrix of unsquared Euclidean distances, landmark rows against witness columns.
using DistanceMatrix = RowMatrixXd;

/// Throws InputError unless every coefficient is finite.
template <typename Derived>
void require_finite(const Eigen::DenseBase<Derived>& m, const char* what = "point cloud") {
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (!std::isfinite(static_cast<double>(m(i, j)))) {
        throw InputError(std::string(what) + ": non-finite entry at row " + std::to_string(i) +
                         ", column " + std::to_string(j));
      }
    }
  }
}

/// N samples in D dimensions, stored in double precision. Immutable after
/// construction; float input is widened.
class PointCloud {
 public:
  template <typename Derived>
  explicit PointCloud(const Eigen::MatrixBase<Derived>& data) : data_(data.template cast<double>()) {
    validate();
  }

  explicit PointCloud(RowMatrixXd&& data) : data_(std::move(data)) { validate(); }

  const RowMatrixXd& data() const noexcept { return data_; }
  Index n_samples() const noexcept { return data_.rows(); }
  Index dim() const noexcept { return data_.cols(); }
  auto row(Index i) const { return data_.row(i); }

 private:
  void validate() const {
    if (data_.rows() < 1 || data_.cols() < 1) {
      throw InputError("point cloud must have at least one sample and one feature");
    }
    require_finite(data_);
  }

  RowMatrixXd data_;
};

/// Distinct row indices into a PointCloud; position in the list is the
/// landmark's vertex label.
struct LandmarkSet {
  std::vector<Index> indices;

  Index size() const noexcept { return static_cast<Index>(indices.size()); }
};

/// Throws ParameterError if any index is out of range for `n_samples`.
void check_landmarks(const LandmarkSet& landmarks, Index n_samples);

namespace detail {
DistanceMatrix distances_from_rows(const LandmarkSet& landmarks, const RowMatrixXd& points);
}

/// d(l, w) = ||x_{L[l]} - x_w||_2 for every landmark l and every sample w.
/// Theta(N * D * L0). Accepts any real matrix expression; arithmetic is in double.
template <typename Derived>
DistanceMatrix pairwise_distances(const LandmarkSet& landmarks, const Eigen::MatrixBase<Derived>& x) {
  require_finite(x);
  check_landmarks(landmarks, x.rows());
  return detail::distances_from_rows(landmarks, x.template cast<double>());
}

DistanceMatrix pairwise_distances(const LandmarkSet& landmarks, const PointCloud& cloud);

/// Uniform sample of `l0` distinct row indices without replacement
/// (sparse partial Fisher-Yates, O(l0) memory).
LandmarkSet sample_landmarks(const PointCloud& cloud, Index l0, Rng& rng);
LandmarkSet sample_landmarks(Index n_samples, Index l0, Rng& rng);

/// Largest Euclidean distance between two landmarks; 0 for a single landmark.
double max_pairwise_distance(const LandmarkSet& landmarks, const PointCloud& cloud);

}  // namespace gscore
