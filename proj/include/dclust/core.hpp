#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dclust/error.hpp"

namespace dclust {

using PointId = std::size_t;

/// Read-only view of one dataset point.
struct Point {
  PointId id;
  std::span<const double> coords;
};

/// Ordered collection of d-dimensional points, stored row-major.
///
/// Ground truth, when present, uses -1 for noise and non-negative integers
/// for cluster labels. Construction does not check coordinates; call
/// validate() before handing untrusted data to an algorithm.
class Dataset {
 public:
  Dataset() = default;
  Dataset(std::size_t dimension, std::vector<double> coords,
          std::optional<std::vector<int>> truth = std::nullopt);

  /// Builds a dataset from per-point rows. Rows of differing length raise
  /// DataError(RaggedDimension).
  static Dataset from_rows(const std::vector<std::vector<double>>& rows,
                           std::optional<std::vector<int>> truth = std::nullopt);

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return dimension_ ? coords_.size() / dimension_ : 0; }
  bool empty() const noexcept { return size() == 0; }

  Point point(PointId id) const { return {id, coords_of(id)}; }
  std::span<const double> coords_of(PointId id) const {
    return {coords_.data() + id * dimension_, dimension_};
  }
  std::span<const double> raw_coords() const noexcept { return coords_; }

  bool has_truth() const noexcept { return truth_.has_value(); }
  const std::optional<std::vector<int>>& truth() const noexcept { return truth_; }

  bool operator==(const Dataset&) const = default;

 private:
  std::size_t dimension_ = 0;
  std::vector<double> coords_;
  std::optional<std::vector<int>> truth_;
};

/// Checks every Dataset invariant and returns the dataset unchanged.
/// Throws DataError with a kind specific to the first violation found.
const Dataset& validate(const Dataset& d);

/// Per-point cluster assignment.
///
/// A tag is kUnclassified, kNoise, or a non-negative cluster id. Every
/// algorithm in this library returns a finished labeling (no kUnclassified)
/// with cluster ids 0..cluster_count()-1.
class Labeling {
 public:
  static constexpr std::int32_t kUnclassified = -2;
  static constexpr std::int32_t kNoise = -1;

  Labeling() = default;
  explicit Labeling(std::vector<std::int32_t> labels);

  std::size_t size() const noexcept { return labels_.size(); }
  std::int32_t operator[](std::size_t i) const { return labels_[i]; }
  std::span<const std::int32_t> labels() const noexcept { return labels_; }

  std::size_t cluster_count() const noexcept { return cluster_count_; }
  std::size_t noise_count() const noexcept { return noise_count_; }
  bool finished() const noexcept { return unclassified_count_ == 0; }
  /// True when the cluster ids used are exactly 0..cluster_count()-1.
  bool contiguous() const noexcept { return contiguous_; }

  bool operator==(const Labeling& other) const { return labels_ == other.labels_; }

 private:
  std::vector<std::int32_t> labels_;
  std::size_t cluster_count_ = 0;
  std::size_t noise_count_ = 0;
  std::size_t unclassified_count_ = 0;
  bool contiguous_ = true;
};

/// Renumbers cluster ids by order of first appearance; noise is kept.
/// Throws ContractError if any point is still unclassified.
Labeling canonicalize(const Labeling& l);

/// Neighborhood radius and MinPts shared by the DBSCAN family.
///
/// The neighborhood of p is every point q with dist(p, q) <= radius, and it
/// always contains p itself. MinPts therefore counts the center point: with
/// min_pts = 4 a core point needs three other points within radius.
struct DensityParams {
  double radius = 0.0;
  std::size_t min_pts = 0;

  /// Throws ParameterError unless radius > 0 and min_pts >= 1.
  void check() const;
};

/// Euclidean distance. Throws ContractError on dimension mismatch.
double distance(std::span<const double> a, std::span<const double> b);
inline double distance(const Point& a, const Point& b) { return distance(a.coords, b.coords); }

/// Squared Euclidean distance without the dimension check.
inline double squared_distance_unchecked(std::span<const double> a, std::span<const double> b) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double t = a[i] - b[i];
    s += t * t;
  }
  return s;
}

}  // namespace dclust
