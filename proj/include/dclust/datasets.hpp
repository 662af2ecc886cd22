#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "dclust/core.hpp"

namespace dclust {

enum class Shape { Blobs, VaryingDensity, EmbeddedNested };

/// Parameters of a synthetic 2-D scenario.
///
/// Generation is a pure function of this struct. Random numbers come from
/// std::mt19937_64 (whose output sequence the C++ standard fixes) fed
/// through hand-written transforms: uniform = (x >> 11) * 2^-53, normals by
/// Box-Muller. No std:: distribution is used, so output is identical across
/// standard libraries.
struct GenSpec {
  Shape shape = Shape::Blobs;
  std::size_t n = 0;
  std::uint64_t seed = 0;

  /// Blobs: number of Gaussian blobs (default 3). VaryingDensity: two
  /// adjacent dense disks plus blob_count - 2 sparse disks (default 4).
  std::optional<std::size_t> blob_count;
  /// VaryingDensity: ratio of sparse to dense inter-point spacing (default
  /// 5). EmbeddedNested: ratio of area densities of consecutive regions
  /// (default 10).
  std::optional<double> density_ratio;
  /// EmbeddedNested: outer radius of the dense disk, the medium annulus and
  /// the sparse annulus.
  std::array<double, 3> shell_radii{1.0, 2.5, 5.0};
  /// Fraction of uniform background points labeled -1. Defaults: 0 for
  /// Blobs, 0.05 otherwise.
  std::optional<double> noise_rate;

  std::size_t effective_blob_count() const { return blob_count.value_or(shape == Shape::Blobs ? 3 : 4); }
  double effective_density_ratio() const { return density_ratio.value_or(shape == Shape::EmbeddedNested ? 10.0 : 5.0); }
  double effective_noise_rate() const { return noise_rate.value_or(shape == Shape::Blobs ? 0.0 : 0.05); }
  /// Smallest n accepted for this shape.
  std::size_t minimum_n() const;
  void check() const;
};

/// Generates the scenario with ground truth attached, then verifies the
/// property that defines it (separation for Blobs, spacing ratio for
/// VaryingDensity, outward-increasing nearest-neighbor distance for
/// EmbeddedNested). Throws ParameterError for an invalid spec.
Dataset generate(const GenSpec& spec);

Shape parse_shape(const std::string& name);
std::string shape_name(Shape s);

enum class FileFormat { Csv, Arff };

FileFormat parse_format(const std::string& name);

/// CSV: optional header, comma separated, '.' decimal point. A final column
/// named "label" becomes ground truth. ARFF: numeric attributes become
/// coordinates, a trailing nominal attribute becomes ground truth. Both
/// validate the result.
Dataset read_csv(std::istream& in);
Dataset read_arff(std::istream& in);
Dataset load(const std::string& path, FileFormat format = FileFormat::Csv);

/// Writes coordinates with round-trip precision and LF line endings.
void write_csv(std::ostream& out, const Dataset& d);
void write_arff(std::ostream& out, const Dataset& d, const std::string& relation = "dclust");
void save(const Dataset& d, const std::string& path, FileFormat format = FileFormat::Csv);

/// Header names used for coordinate columns: x,y (,z) up to 3-D, x0.. beyond.
std::string coordinate_name(std::size_t axis, std::size_t dimension);

/// Mean distance from each selected point to its nearest other point in the
/// whole dataset. Used by the generator checks.
double mean_nearest_neighbor_distance(const Dataset& d, std::span<const PointId> ids);

}  // namespace dclust
