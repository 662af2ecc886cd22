#include "dclust/ndiff.hpp"

#include <unordered_map>

#include "dclust/dbscan.hpp"
#include "gated_expansion.hpp"

namespace dclust {

void NDiffParams::check() const { DensityParams{radius, 1}.check(); }

GatedResult ndiff_run(const Dataset& d, const NDiffParams& params, const SpatialIndex& ix, QueryStats* stats) {
  params.check();
  detail::check_index(d, ix);
  std::vector<std::size_t> count(d.size());
  for (PointId p = 0; p < d.size(); ++p) count[p] = ix.count_within(d.coords_of(p), params.radius, stats);
  // Seeds need one neighbor besides themselves; admitted points always have one.
  auto has_neighbor = [&](PointId p) { return count[p] >= 2; };
  GatedResult r =
      detail::gated_expansion(d, ix, params.radius, count, has_neighbor, has_neighbor, params.delta, 2, stats);
  r.count_queries = d.size();
  return r;
}

Labeling drop_small_clusters(const Labeling& l, std::size_t min_size) {
  std::unordered_map<std::int32_t, std::size_t> sizes;
  for (const auto tag : l.labels()) {
    if (tag >= 0) ++sizes[tag];
  }
  std::vector<std::int32_t> out(l.labels().begin(), l.labels().end());
  for (auto& tag : out) {
    if (tag >= 0 && sizes[tag] < min_size) tag = Labeling::kNoise;
  }
  return canonicalize(Labeling(std::move(out)));
}

}  // namespace dclust
