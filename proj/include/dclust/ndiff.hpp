#pragma once

#include "dclust/core.hpp"
#include "dclust/gate.hpp"
#include "dclust/spatial_index.hpp"

namespace dclust {

struct NDiffParams {
  double radius = 0.0;
  std::size_t delta = 0;  // tolerance on neighbor-count difference

  void check() const;
};

/// Neighborhood-difference clustering. There is no MinPts: any point with at
/// least one other point within radius may start a cluster, every member
/// expands, and neighbor q of member p joins only if | |N(p)| - |N(q)| | <=
/// delta. A seed that admits nobody ends as noise.
GatedResult ndiff_run(const Dataset& d, const NDiffParams& params, const SpatialIndex& ix,
                      QueryStats* stats = nullptr);

inline Labeling ndiff_cluster(const Dataset& d, const NDiffParams& params, const SpatialIndex& ix,
                              QueryStats* stats = nullptr) {
  return ndiff_run(d, params, ix, stats).labels;
}

/// Turns clusters with fewer than min_size points into noise and renumbers.
/// Not part of the method; a convenience for its many tiny clusters.
Labeling drop_small_clusters(const Labeling& l, std::size_t min_size);

}  // namespace dclust
