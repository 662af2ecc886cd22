#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "dclust/core.hpp"
#include "dclust/gate.hpp"
#include "dclust/spatial_index.hpp"

namespace dclust {

/// Ascending k-distance graph. Unlike SpatialIndex::kth_neighbor_distance,
/// the point itself is not counted: entry i is the distance from a point to
/// its k-th nearest other point.
struct KDistanceGraph {
  std::size_t k = 0;
  std::vector<double> sorted_distances;      // n values, nondecreasing
  std::vector<PointId> point_ids;            // point behind each sorted value
  std::vector<double> first_derivative;      // n-1 forward differences
};

/// Throws ParameterError unless 1 <= k < n.
KDistanceGraph k_distance_graph(const Dataset& d, std::size_t k, const SpatialIndex& ix,
                                QueryStats* stats = nullptr);

/// Radius at the sharpest slope change of the graph: the midpoint of the
/// largest forward difference (smallest index on ties). Throws
/// ParameterError for n < 3 and NoKneeError when every distance is equal.
double estimate_radius(const KDistanceGraph& g);

/// Index of the largest forward difference, smallest index on ties.
std::size_t knee_index(const KDistanceGraph& g);

struct VariantParams {
  std::size_t min_pts = 0;
  std::size_t alpha = 0;
  /// Manual radius; when empty it is estimated from the k-distance graph
  /// with k = min_pts.
  std::optional<double> radius;
};

/// DBSCAN expansion where neighbor q joins core point p's cluster only if
/// their neighborhood sizes differ by at most alpha.
GatedResult kdvariant_run(const Dataset& d, const VariantParams& params, const SpatialIndex& ix,
                          QueryStats* stats = nullptr);

inline Labeling kdvariant_cluster(const Dataset& d, const VariantParams& params, const SpatialIndex& ix,
                                  QueryStats* stats = nullptr) {
  return kdvariant_run(d, params, ix, stats).labels;
}

/// TSV with header `rank point_id k_distance derivative`. The derivative of
/// row i is sorted[i+1] - sorted[i]; the last row leaves it empty.
void write_k_distance_tsv(std::ostream& out, const KDistanceGraph& g);

}  // namespace dclust
