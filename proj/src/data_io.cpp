#include "gscore/data_io.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include <Eigen/QR>

namespace gscore {

namespace {

constexpr std::string_view kNpyMagic = "\x93NUMPY";

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::optional<double> parse_number(std::string_view field) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  if (field.empty()) return std::nullopt;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size()) return std::nullopt;
  return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw FormatError("write failed for " + path.string());
}

// Value of `key` in a numpy header dict, up to the next top-level comma or brace.
std::string_view header_value(std::string_view header, std::string_view key) {
  const std::string quoted = "'" + std::string(key) + "'";
  std::size_t pos = header.find(quoted);
  if (pos == std::string_view::npos) throw FormatError("npy header: missing key " + quoted);
  pos = header.find(':', pos + quoted.size());
  if (pos == std::string_view::npos) throw FormatError("npy header: malformed entry for " + quoted);
  ++pos;
  int depth = 0;
  std::size_t end = pos;
  for (; end < header.size(); ++end) {
    const char c = header[end];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth == 0 && (c == ',' || c == '}')) break;
    if (depth < 0) break;
  }
  return trim(header.substr(pos, end - pos));
}

template <typename T>
T read_le(const char* p) {
  T v;
  std::memcpy(&v, p, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    auto* b = reinterpret_cast<unsigned char*>(&v);
    std::reverse(b, b + sizeof(T));
  }
  return v;
}

}  // namespace

Shape parse_shape(std::string_view name) {
  if (name == "circle") return Shape::circle;
  if (name == "filled_disk") return Shape::filled_disk;
  if (name == "two_circles") return Shape::two_circles;
  if (name == "noisy_circle") return Shape::noisy_circle;
  if (name == "hyperplane") return Shape::hyperplane;
  throw ParameterError("unknown shape '" + std::string(name) + "'");
}

std::string_view shape_name(Shape shape) {
  switch (shape) {
    case Shape::circle: return "circle";
    case Shape::filled_disk: return "filled_disk";
    case Shape::two_circles: return "two_circles";
    case Shape::noisy_circle: return "noisy_circle";
    case Shape::hyperplane: return "hyperplane";
  }
  throw ParameterError("unknown shape");
}

double SyntheticSpec::resolved_noise() const {
  if (noise_sigma) return *noise_sigma;
  return shape == Shape::noisy_circle ? 0.05 : 0.0;
}

void SyntheticSpec::validate() const {
  if (n_points < 1) throw ParameterError("n_points must be at least 1");
  const double sigma = resolved_noise();
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw ParameterError("noise sigma must be finite and >= 0");
  if (shape == Shape::hyperplane) {
    if (intrinsic_dim < 1 || ambient_dim < 1) throw ParameterError("hyperplane dimensions must be positive");
    if (intrinsic_dim > ambient_dim) throw ParameterError("intrinsic_dim must not exceed ambient_dim");
  }
}

PointCloud generate_synthetic(const SyntheticSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double sigma = spec.resolved_noise();
  const Index n = spec.n_points;
  constexpr double two_pi = 2.0 * std::numbers::pi;

  RowMatrixXd x;
  switch (spec.shape) {
    case Shape::circle:
    case Shape::noisy_circle:
      x.resize(n, 2);
      for (Index i = 0; i < n; ++i) {
        const double t = two_pi * rng.uniform01();
        x(i, 0) = std::cos(t);
        x(i, 1) = std::sin(t);
      }
      break;
    case Shape::filled_disk:
      x.resize(n, 2);
      for (Index i = 0; i < n; ++i) {
        const double r = std::sqrt(rng.uniform01());
        const double t = two_pi * rng.uniform01();
        x(i, 0) = r * std::cos(t);
        x(i, 1) = r * std::sin(t);
      }
      break;
    case Shape::two_circles:
      x.resize(n, 2);
      for (Index i = 0; i < n; ++i) {
        const double t = two_pi * rng.uniform01();
        const double centre = i < (n + 1) / 2 ? -2.0 : 2.0;
        x(i, 0) = centre + std::cos(t);
        x(i, 1) = std::sin(t);
      }
      break;
    case Shape::hyperplane: {
      // Orthonormal columns: the cube keeps its geometry inside the subspace.
      Eigen::MatrixXd gaussian(spec.ambient_dim, spec.intrinsic_dim);
      for (Index i = 0; i < gaussian.size(); ++i) gaussian.data()[i] = gauss(rng.engine());
      const Eigen::HouseholderQR<Eigen::MatrixXd> qr(gaussian);
      const Eigen::MatrixXd basis =
          qr.householderQ() * Eigen::MatrixXd::Identity(spec.ambient_dim, spec.intrinsic_dim);
      RowMatrixXd z(n, spec.intrinsic_dim);
      for (Index i = 0; i < n; ++i) {
        for (Index k = 0; k < spec.intrinsic_dim; ++k) z(i, k) = rng.uniform01();
      }
      x = z * basis.transpose();
      break;
    }
  }
  if (sigma > 0.0) {
    for (Index i = 0; i < x.rows(); ++i) {
      for (Index j = 0; j < x.cols(); ++j) x(i, j) += sigma * gauss(rng.engine());
    }
  }
  return PointCloud(std::move(x));
}

FileFormat parse_format(std::string_view name) {
  if (name == "csv") return FileFormat::csv;
  if (name == "npy") return FileFormat::npy;
  throw ParameterError("unknown format '" + std::string(name) + "'");
}

PointCloud parse_csv(std::string_view text) {
  std::vector<double> values;
  Index cols = -1;
  Index rows = 0;
  std::size_t line_no = 0;
  std::size_t start = 0;
  bool first_content_line = true;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = trim(text.substr(start, end - start));
    ++line_no;
    start = end + 1;
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const auto fields = split(line, ',');
    std::vector<double> row;
    row.reserve(fields.size());
    std::size_t bad_field = fields.size();
    for (std::size_t f = 0; f < fields.size(); ++f) {
      const auto v = parse_number(fields[f]);
      if (!v) {
        bad_field = f;
        break;
      }
      row.push_back(*v);
    }
    if (bad_field != fields.size()) {
      if (first_content_line) {  // header row
        first_content_line = false;
        cols = static_cast<Index>(fields.size());
        continue;
      }
      throw FormatError("csv line " + std::to_string(line_no) + ", field " + std::to_string(bad_field + 1) +
                        ": not a number: '" + std::string(trim(fields[bad_field])) + "'");
    }
    first_content_line = false;
    if (cols >= 0 && static_cast<Index>(row.size()) != cols) {
      throw FormatError("csv line " + std::to_string(line_no) + ": expected " + std::to_string(cols) +
                        " fields, found " + std::to_string(row.size()));
    }
    cols = static_cast<Index>(row.size());
    values.insert(values.end(), row.begin(), row.end());
    ++rows;
    if (end == text.size()) break;
  }
  if (rows == 0) throw FormatError("csv: no data rows");
  return PointCloud(Eigen::Map<const RowMatrixXd>(values.data(), rows, cols));
}

PointCloud parse_npy(std::string_view bytes) {
  if (bytes.size() < 10 || bytes.substr(0, kNpyMagic.size()) != kNpyMagic) {
    throw FormatError("npy byte 0: missing magic string");
  }
  const auto major = static_cast<unsigned char>(bytes[6]);
  const auto minor = static_cast<unsigned char>(bytes[7]);
  if (major != 1 || minor != 0) {
    throw FormatError("npy byte 6: unsupported version " + std::to_string(major) + "." + std::to_string(minor));
  }
  const std::size_t header_len = read_le<std::uint16_t>(bytes.data() + 8);
  if (bytes.size() < 10 + header_len) throw FormatError("npy byte 8: header length exceeds file size");
  const std::string_view header = bytes.substr(10, header_len);

  std::string_view descr = header_value(header, "descr");
  if (descr.size() < 2 || (descr.front() != '\'' && descr.front() != '"')) {
    throw FormatError("npy byte 10: malformed descr");
  }
  descr = descr.substr(1, descr.size() - 2);
  std::size_t item = 0;
  if (descr == "<f8") {
    item = 8;
  } else if (descr == "<f4") {
    item = 4;
  } else {
    throw FormatError("npy byte 10: unsupported dtype '" + std::string(descr) + "' (need <f4 or <f8)");
  }
  if (header_value(header, "fortran_order") != "False") {
    throw FormatError("npy byte 10: fortran_order arrays are not supported");
  }
  std::string_view shape = header_value(header, "shape");
  if (shape.size() < 2 || shape.front() != '(' || shape.back() != ')') {
    throw FormatError("npy byte 10: malformed shape");
  }
  std::vector<Index> dims;
  for (auto part : split(shape.substr(1, shape.size() - 2), ',')) {
    part = trim(part);
    if (part.empty()) continue;
    Index v = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || ptr != part.data() + part.size() || v < 0) {
      throw FormatError("npy byte 10: malformed shape entry '" + std::string(part) + "'");
    }
    dims.push_back(v);
  }
  if (dims.empty() || dims.size() > 2) {
    throw FormatError("npy byte 10: only 1-D and 2-D arrays are supported, got " + std::to_string(dims.size()) + "-D");
  }
  const Index rows = dims[0];
  const Index cols = dims.size() == 2 ? dims[1] : 1;
  const std::size_t offset = 10 + header_len;
  const std::size_t need = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols) * item;
  if (bytes.size() - offset != need) {
    throw FormatError("npy byte " + std::to_string(offset) + ": expected " + std::to_string(need) +
                      " data bytes, found " + std::to_string(bytes.size() - offset));
  }
  if (rows < 1 || cols < 1) throw FormatError("npy byte 10: empty array");

  RowMatrixXd x(rows, cols);
  const char* p = bytes.data() + offset;
  for (Index k = 0; k < rows * cols; ++k, p += item) {
    x.data()[k] = item == 8 ? read_le<double>(p) : static_cast<double>(read_le<float>(p));
  }
  return PointCloud(std::move(x));
}

PointCloud load_pointcloud(const std::filesystem::path& path, FileFormat format) {
  const std::string bytes = read_file(path);
  return format == FileFormat::csv ? parse_csv(bytes) : parse_npy(bytes);
}

std::string to_csv(const PointCloud& cloud) {
  std::string out;
  char buf[64];
  const auto& x = cloud.data();
  for (Index i = 0; i < x.rows(); ++i) {
    for (Index j = 0; j < x.cols(); ++j) {
      if (j) out.push_back(',');
      const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x(i, j));
      out.append(buf, ptr);
    }
    out.push_back('\n');
  }
  return out;
}

std::string to_npy(const PointCloud& cloud) {
  const auto& x = cloud.data();
  std::string header = "{'descr': '<f8', 'fortran_order': False, 'shape': (" + std::to_string(x.rows()) + ", " +
                       std::to_string(x.cols()) + "), }";
  // Pad so that magic + lengths + header is a multiple of 64 bytes, ending in '\n'.
  const std::size_t total = 10 + header.size() + 1;
  header.append((64 - total % 64) % 64, ' ');
  header.push_back('\n');

  std::string out(kNpyMagic);
  out.push_back('\x01');
  out.push_back('\x00');
  const auto len = static_cast<std::uint16_t>(header.size());
  out.push_back(static_cast<char>(len & 0xff));
  out.push_back(static_cast<char>(len >> 8));
  out += header;
  const std::size_t data_start = out.size();
  out.resize(data_start + static_cast<std::size_t>(x.size()) * sizeof(double));
  for (Index k = 0; k < x.size(); ++k) {
    double v = x.data()[k];
    if constexpr (std::endian::native == std::endian::big) {
      auto* b = reinterpret_cast<unsigned char*>(&v);
      std::reverse(b, b + sizeof(double));
    }
    std::memcpy(out.data() + data_start + static_cast<std::size_t>(k) * sizeof(double), &v, sizeof(double));
  }
  return out;
}

void save_pointcloud(const std::filesystem::path& path, const PointCloud& cloud, FileFormat format) {
  write_file(path, format == FileFormat::csv ? to_csv(cloud) : to_npy(cloud));
}

}  // namespace gscore
