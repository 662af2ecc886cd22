#include "dclust/kdvariant.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <string>

#include "dclust/dbscan.hpp"
#include "dclust/text.hpp"
#include "gated_expansion.hpp"

namespace dclust {

KDistanceGraph k_distance_graph(const Dataset& d, std::size_t k, const SpatialIndex& ix, QueryStats* stats) {
  detail::check_index(d, ix);
  const std::size_t n = d.size();
  if (k == 0 || k >= n) {
    throw ParameterError("k-distance graph needs 1 <= k < n (k = " + std::to_string(k) + ", n = " +
                         std::to_string(n) + ")");
  }
  // The index counts the query point as its own nearest neighbor, so the
  // k-th other point is the (k+1)-th result.
  std::vector<double> kd(n);
  for (PointId p = 0; p < n; ++p) kd[p] = ix.kth_neighbor_distance(p, k + 1, stats);

  KDistanceGraph g;
  g.k = k;
  g.point_ids.resize(n);
  std::iota(g.point_ids.begin(), g.point_ids.end(), PointId{0});
  std::stable_sort(g.point_ids.begin(), g.point_ids.end(), [&](PointId a, PointId b) { return kd[a] < kd[b]; });
  g.sorted_distances.reserve(n);
  for (const PointId p : g.point_ids) g.sorted_distances.push_back(kd[p]);
  g.first_derivative.reserve(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) g.first_derivative.push_back(g.sorted_distances[i + 1] - g.sorted_distances[i]);
  return g;
}

std::size_t knee_index(const KDistanceGraph& g) {
  if (g.sorted_distances.size() < 3) throw ParameterError("radius estimation needs at least 3 points");
  const auto& dv = g.first_derivative;
  const auto it = std::max_element(dv.begin(), dv.end());  // first maximum
  if (!(*it > 0.0)) throw NoKneeError("k-distance graph is flat; supply the radius manually");
  return static_cast<std::size_t>(it - dv.begin());
}

double estimate_radius(const KDistanceGraph& g) {
  const std::size_t i = knee_index(g);
  return 0.5 * (g.sorted_distances[i] + g.sorted_distances[i + 1]);
}

GatedResult kdvariant_run(const Dataset& d, const VariantParams& params, const SpatialIndex& ix,
                          QueryStats* stats) {
  detail::check_index(d, ix);
  if (params.min_pts < 1) throw ParameterError("min_pts must be at least 1");
  std::uint64_t graph_queries = 0;
  std::uint64_t sorted = 0;
  double radius = 0.0;
  if (params.radius) {
    radius = *params.radius;
  } else {
    const auto g = k_distance_graph(d, params.min_pts, ix, stats);
    graph_queries = d.size();
    sorted = g.sorted_distances.size();
    radius = estimate_radius(g);
  }
  DensityParams{radius, params.min_pts}.check();

  std::vector<std::size_t> count(d.size());
  for (PointId p = 0; p < d.size(); ++p) count[p] = ix.count_within(d.coords_of(p), radius, stats);
  auto is_core = [&](PointId p) { return count[p] >= params.min_pts; };
  GatedResult r = detail::gated_expansion(d, ix, radius, count, is_core, is_core, params.alpha, 1, stats);
  r.count_queries = d.size();
  r.graph_queries = graph_queries;
  r.sorted_elements = sorted;
  return r;
}

void write_k_distance_tsv(std::ostream& out, const KDistanceGraph& g) {
  out << "rank\tpoint_id\tk_distance\tderivative\n";
  for (std::size_t i = 0; i < g.sorted_distances.size(); ++i) {
    out << i << '\t' << g.point_ids[i] << '\t' << format_double(g.sorted_distances[i]) << '\t';
    if (i < g.first_derivative.size()) out << format_double(g.first_derivative[i]);
    out << '\n';
  }
}

}  // namespace dclust
