#include "dclust/dbscan.hpp"

#include <deque>

namespace dclust {

namespace detail {
void check_index(const Dataset& d, const SpatialIndex& ix) {
  if (ix.size() != d.size() || (ix.size() != 0 && ix.dataset().dimension() != d.dimension())) {
    throw ContractError("spatial index was not built over this dataset");
  }
}
}  // namespace detail

CorePointSet::CorePointSet(std::vector<bool> flags) : flags_(std::move(flags)) {
  for (const bool f : flags_) count_ += f ? 1 : 0;
}

std::vector<PointId> CorePointSet::ids() const {
  std::vector<PointId> out;
  out.reserve(count_);
  for (PointId i = 0; i < flags_.size(); ++i) {
    if (flags_[i]) out.push_back(i);
  }
  return out;
}

CorePointSet core_points(const Dataset& d, const DensityParams& params, const SpatialIndex& ix, QueryStats* stats) {
  params.check();
  detail::check_index(d, ix);
  std::vector<bool> core(d.size(), false);
  for (PointId p = 0; p < d.size(); ++p) {
    core[p] = ix.count_within(d.coords_of(p), params.radius, stats) >= params.min_pts;
  }
  return CorePointSet(std::move(core));
}

std::vector<PointKind> classify_points(const Dataset& d, const DensityParams& params, const SpatialIndex& ix,
                                       QueryStats* stats) {
  const CorePointSet core = core_points(d, params, ix, stats);
  std::vector<PointKind> kinds(d.size(), PointKind::Noise);
  for (PointId p = 0; p < d.size(); ++p) {
    if (!core.contains(p)) continue;
    kinds[p] = PointKind::Core;
    for (const PointId q : ix.range_query(p, params.radius, stats)) {
      if (!core.contains(q)) kinds[q] = PointKind::Border;
    }
  }
  return kinds;
}

Labeling dbscan(const Dataset& d, const DensityParams& params, const SpatialIndex& ix, QueryStats* stats) {
  params.check();
  detail::check_index(d, ix);
  const std::size_t n = d.size();
  std::vector<std::int32_t> labels(n, Labeling::kUnclassified);
  std::int32_t next_cluster = 0;
  std::deque<PointId> work;

  for (PointId seed = 0; seed < n; ++seed) {
    if (labels[seed] != Labeling::kUnclassified) continue;
    auto neighbors = ix.range_query(seed, params.radius, stats);
    if (neighbors.size() < params.min_pts) {
      labels[seed] = Labeling::kNoise;
      continue;
    }
    const std::int32_t cluster = next_cluster++;
    labels[seed] = cluster;
    // Points are labeled when queued, so each enters the queue once. A
    // former noise point becomes a border point and is not expanded.
    work.clear();
    auto enqueue = [&](PointId q) {
      if (labels[q] == Labeling::kNoise) {
        labels[q] = cluster;
      } else if (labels[q] == Labeling::kUnclassified) {
        labels[q] = cluster;
        work.push_back(q);
      }
    };
    for (const PointId q : neighbors) enqueue(q);
    while (!work.empty()) {
      const PointId q = work.front();
      work.pop_front();
      auto reach = ix.range_query(q, params.radius, stats);
      if (reach.size() >= params.min_pts) {
        for (const PointId r : reach) enqueue(r);
      }
    }
  }
  return Labeling(std::move(labels));
}

}  // namespace dclust
