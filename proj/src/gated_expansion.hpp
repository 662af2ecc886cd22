#pragma once

#include <cstdint>
#include <cstdlib>
#include <deque>
#include <vector>

#include "dclust/core.hpp"
#include "dclust/gate.hpp"
#include "dclust/spatial_index.hpp"

namespace dclust::detail {

// Breadth-first cluster growth over radius neighborhoods where a candidate q
// reached from member p joins only if |count[p] - count[q]| <= tolerance.
// Gated-out candidates stay unassigned for later clusters. Clusters smaller
// than min_members are dissolved into noise.
template <typename SeedPred, typename ExpandPred>
GatedResult gated_expansion(const Dataset& d, const SpatialIndex& ix, double radius,
                            const std::vector<std::size_t>& count, SeedPred can_seed, ExpandPred can_expand,
                            std::size_t tolerance, std::size_t min_members, QueryStats* stats) {
  const std::size_t n = d.size();
  GatedResult result;
  result.radius = radius;
  result.neighbor_count = count;
  std::vector<std::int32_t> labels(n, Labeling::kUnclassified);
  std::vector<std::size_t> sizes;
  std::deque<PointId> work;
  auto diff = [](std::size_t a, std::size_t b) { return a > b ? a - b : b - a; };

  for (PointId seed = 0; seed < n; ++seed) {
    if (labels[seed] != Labeling::kUnclassified) continue;
    if (!can_seed(seed)) {
      labels[seed] = Labeling::kNoise;
      continue;
    }
    const auto cluster = static_cast<std::int32_t>(sizes.size());
    sizes.push_back(1);
    labels[seed] = cluster;
    work.assign(1, seed);
    while (!work.empty()) {
      const PointId p = work.front();
      work.pop_front();
      ++result.expansion_queries;
      for (const PointId q : ix.range_query(d.coords_of(p), radius, stats)) {
        if (labels[q] >= 0) continue;
        if (diff(count[p], count[q]) > tolerance) {
          ++result.gate_rejections;
          continue;
        }
        labels[q] = cluster;
        ++sizes[static_cast<std::size_t>(cluster)];
        result.trace.push_back({q, p, cluster, count[q], count[p]});
        if (can_expand(q)) work.push_back(q);
      }
    }
  }
  for (auto& l : labels) {
    if (l == Labeling::kUnclassified || (l >= 0 && sizes[static_cast<std::size_t>(l)] < min_members)) {
      l = Labeling::kNoise;
    }
  }
  result.labels = canonicalize(Labeling(std::move(labels)));
  return result;
}

}  // namespace dclust::detail
