#include "dclust/core.hpp"

#include <cmath>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace dclust {

Dataset::Dataset(std::size_t dimension, std::vector<double> coords, std::optional<std::vector<int>> truth)
    : dimension_(dimension), coords_(std::move(coords)), truth_(std::move(truth)) {
  if (dimension_ == 0 && !coords_.empty()) {
    throw DataError(DataError::Kind::RaggedDimension, "dimension 0 with non-empty coordinates");
  }
  if (dimension_ != 0 && coords_.size() % dimension_ != 0) {
    throw DataError(DataError::Kind::RaggedDimension,
                    "coordinate count " + std::to_string(coords_.size()) + " is not a multiple of dimension " +
                        std::to_string(dimension_));
  }
}

Dataset Dataset::from_rows(const std::vector<std::vector<double>>& rows, std::optional<std::vector<int>> truth) {
  if (rows.empty()) return Dataset(0, {}, std::move(truth));
  const std::size_t dim = rows.front().size();
  if (dim == 0) throw DataError(DataError::Kind::RaggedDimension, "point 0 has no coordinates");
  std::vector<double> flat;
  flat.reserve(rows.size() * dim);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != dim) {
      throw DataError(DataError::Kind::RaggedDimension, "point " + std::to_string(i) + " has " +
                                                            std::to_string(rows[i].size()) +
                                                            " coordinates, expected " + std::to_string(dim));
    }
    flat.insert(flat.end(), rows[i].begin(), rows[i].end());
  }
  return Dataset(dim, std::move(flat), std::move(truth));
}

const Dataset& validate(const Dataset& d) {
  const auto coords = d.raw_coords();
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (!std::isfinite(coords[i])) {
      const std::size_t id = i / d.dimension();
      throw DataError(DataError::Kind::NonFinite,
                      std::string(std::isnan(coords[i]) ? "NaN" : "infinite") + " coordinate at point " +
                          std::to_string(id) + ", axis " + std::to_string(i % d.dimension()));
    }
  }
  if (d.has_truth() && d.truth()->size() != d.size()) {
    throw DataError(DataError::Kind::TruthLength, "truth has " + std::to_string(d.truth()->size()) +
                                                      " labels for " + std::to_string(d.size()) + " points");
  }
  return d;
}

Labeling::Labeling(std::vector<std::int32_t> labels) : labels_(std::move(labels)) {
  std::unordered_set<std::int32_t> ids;
  std::int32_t max_id = -1;
  for (const auto l : labels_) {
    if (l == kUnclassified) {
      ++unclassified_count_;
    } else if (l == kNoise) {
      ++noise_count_;
    } else if (l >= 0) {
      ids.insert(l);
      max_id = std::max(max_id, l);
    } else {
      throw ContractError("invalid label " + std::to_string(l));
    }
  }
  cluster_count_ = ids.size();
  contiguous_ = static_cast<std::size_t>(max_id + 1) == cluster_count_;
}

Labeling canonicalize(const Labeling& l) {
  if (!l.finished()) throw ContractError("canonicalize: labeling contains unclassified points (unfinished run)");
  std::unordered_map<std::int32_t, std::int32_t> remap;
  std::vector<std::int32_t> out;
  out.reserve(l.size());
  for (const auto tag : l.labels()) {
    if (tag == Labeling::kNoise) {
      out.push_back(tag);
      continue;
    }
    auto [it, inserted] = remap.try_emplace(tag, static_cast<std::int32_t>(remap.size()));
    out.push_back(it->second);
  }
  return Labeling(std::move(out));
}

void DensityParams::check() const {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw ParameterError("radius must be a positive finite real, got " + std::to_string(radius));
  }
  if (min_pts < 1) throw ParameterError("min_pts must be at least 1");
}

double distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw ContractError("distance: dimension mismatch (" + std::to_string(a.size()) + " vs " +
                        std::to_string(b.size()) + ")");
  }
  return std::sqrt(squared_distance_unchecked(a, b));
}

}  // namespace dclust
