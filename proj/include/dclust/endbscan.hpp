#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "dclust/core.hpp"
#include "dclust/spatial_index.hpp"

namespace dclust {

/// Which core-distance a candidate is compared against.
enum class BetaMode {
  SeedRelative,  // the point that started the cluster
  Chained,       // the core point whose neighborhood reached the candidate
};

struct EnParams {
  double radius = 0.0;
  std::size_t min_pts = 0;
  /// Largest allowed absolute core-distance difference (infinity disables the gate).
  double beta = std::numeric_limits<double>::infinity();
  BetaMode mode = BetaMode::SeedRelative;

  void check() const;
};

struct EnAdmission {
  PointId point;
  PointId via;  // expanding core point
  std::int32_t cluster;
  double reference;  // core-distance the gate compared against
};

struct EnDbscanResult {
  Labeling labels;
  /// Distance to each point's MinPts-th nearest point; core iff <= radius.
  std::vector<double> k_distance;
  /// Core-distance of each cluster's seed point, indexed by cluster id.
  std::vector<double> seed_reference;
  std::vector<EnAdmission> trace;
  std::uint64_t gate_rejections = 0;
};

/// EnDBSCAN.
///
/// A point whose core-distance exceeds the radius is a noise candidate. A
/// core point expands only through the points inside its own core-distance,
/// and a core candidate joins only if its core-distance differs from the
/// reference by at most beta. Rejected candidates stay unassigned so an
/// adjacent cluster can examine them; each cluster examines a point at most
/// once. Candidates that are not core have no core-distance and join
/// ungated as non-expanding members. `trace` lists the gated admissions.
EnDbscanResult endbscan_run(const Dataset& d, const EnParams& params, const SpatialIndex& ix,
                            QueryStats* stats = nullptr);

inline Labeling endbscan(const Dataset& d, const EnParams& params, const SpatialIndex& ix,
                         QueryStats* stats = nullptr) {
  return endbscan_run(d, params, ix, stats).labels;
}

}  // namespace dclust
