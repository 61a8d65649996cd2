#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "gscore/geometry.hpp"

namespace gscore {

enum class Shape { circle, filled_disk, two_circles, noisy_circle, hyperplane };

/// Throws ParameterError for unknown names.
Shape parse_shape(std::string_view name);
std::string_view shape_name(Shape shape);

struct SyntheticSpec {
  Shape shape = Shape::circle;
  Index n_points = 5000;
  std::optional<double> noise_sigma;  // default: 0.05 for noisy_circle, 0 otherwise
  Index ambient_dim = 784;            // hyperplane only
  Index intrinsic_dim = 32;           // hyperplane only
  std::uint64_t seed = 0;

  double resolved_noise() const;
  void validate() const;
};

/// Samples the requested shape. Deterministic given `spec`.
///   circle / noisy_circle: unit circle, uniform angle
///   filled_disk: area-uniform on the unit disk
///   two_circles: two unit circles centred at (-2, 0) and (2, 0), split evenly
///   hyperplane: uniform cube [0,1]^k mapped into R^D by a seeded random
///     orthonormal basis (isometric, rank k)
/// Gaussian noise of the resolved sigma is added to every coordinate.
PointCloud generate_synthetic(const SyntheticSpec& spec);

enum class FileFormat { csv, npy };

/// Throws ParameterError for unknown names.
FileFormat parse_format(std::string_view name);

/// Loads a row-per-sample matrix. CSV: comma separated, '.' decimal, optional
/// header row (detected when the first row is not numeric). NPY: version 1.0,
/// C order, little-endian float32/float64, 1-D (as N x 1) or 2-D.
/// Throws FormatError with a row or byte location for malformed content,
/// InputError for non-finite values.
PointCloud load_pointcloud(const std::filesystem::path& path, FileFormat format);

PointCloud parse_csv(std::string_view text);
PointCloud parse_npy(std::string_view bytes);

/// Writers use shortest round-trip decimal (CSV) and '<f8' (NPY).
void save_pointcloud(const std::filesystem::path& path, const PointCloud& cloud, FileFormat format);
std::string to_csv(const PointCloud& cloud);
std::string to_npy(const PointCloud& cloud);

}  // namespace gscore
