#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "dclust/core.hpp"
#include "dclust/spatial_index.hpp"

namespace dclust {

/// One point of an OPTICS ordering. Undefined distances are nullopt.
struct OpticsEntry {
  PointId point_id = 0;
  std::optional<double> core_distance;
  std::optional<double> reachability;
  /// Core point whose expansion fixed `reachability`; nullopt when undefined.
  std::optional<PointId> predecessor;
};

class OpticsOrdering {
 public:
  OpticsOrdering(std::vector<OpticsEntry> entries, DensityParams params)
      : entries_(std::move(entries)), params_(params) {}

  std::span<const OpticsEntry> entries() const noexcept { return entries_; }
  const OpticsEntry& operator[](std::size_t i) const { return entries_[i]; }
  std::size_t size() const noexcept { return entries_.size(); }
  const DensityParams& params() const noexcept { return params_; }

 private:
  std::vector<OpticsEntry> entries_;
  DensityParams params_;
};

/// Distance to the MinPts-th nearest point (the point itself counts), or
/// nullopt when that distance exceeds params.radius.
std::optional<double> core_distance(const SpatialIndex& ix, std::span<const double> p, const DensityParams& params,
                                    QueryStats* stats = nullptr);

/// OPTICS augmented ordering. Unprocessed points are started in ascending
/// id order; the seed list pops the smallest reachability, then smallest id.
OpticsOrdering optics_order(const Dataset& d, const DensityParams& params, const SpatialIndex& ix,
                            QueryStats* stats = nullptr);

/// Single-threshold scan extraction. At eps_prime == params.radius the core
/// points are partitioned exactly as dbscan() partitions them.
/// Throws ParameterError when eps_prime is not in (0, params.radius].
Labeling extract_clusters(const OpticsOrdering& o, double eps_prime);

/// Extraction with one threshold per density level.
///
/// Thresholds are applied finest first. A cluster found at a coarser level
/// that contains no finer cluster becomes a new cluster if it has at least
/// min_cluster_size points; otherwise the finer clusters it contains are
/// kept and its remaining points take the label of the closest labeled
/// point before them in the ordering (after them, for a leading run).
Labeling extract_clusters_multilevel(const OpticsOrdering& o, std::span<const double> thresholds,
                                     std::size_t min_cluster_size = 1);

/// Advisory threshold: midpoint of the widest gap between consecutive
/// sorted finite reachability values. nullopt with fewer than two values.
std::optional<double> propose_threshold(const OpticsOrdering& o);

struct ReachabilityRow {
  std::size_t order_index;
  PointId point_id;
  std::optional<double> reachability;
  std::optional<double> core_distance;
};

std::vector<ReachabilityRow> reachability_plot(const OpticsOrdering& o);

/// TSV with header `order_index point_id reachability core_distance`;
/// undefined values are written as `inf`.
void write_reachability_tsv(std::ostream& out, const OpticsOrdering& o);

}  // namespace dclust
