#include "dclust/endbscan.hpp"

#include <cmath>
#include <deque>
#include <string>

#include "dclust/dbscan.hpp"

namespace dclust {

void EnParams::check() const {
  DensityParams{radius, min_pts}.check();
  if (!(beta >= 0.0)) throw ParameterError("beta must be non-negative, got " + std::to_string(beta));
}

EnDbscanResult endbscan_run(const Dataset& d, const EnParams& params, const SpatialIndex& ix, QueryStats* stats) {
  params.check();
  detail::check_index(d, ix);
  const std::size_t n = d.size();
  EnDbscanResult result;
  std::vector<std::int32_t> labels(n, Labeling::kUnclassified);
  if (params.min_pts > n) {
    labels.assign(n, Labeling::kNoise);
    result.k_distance.assign(n, std::numeric_limits<double>::infinity());
    result.labels = Labeling(std::move(labels));
    return result;
  }

  auto& kd = result.k_distance;
  kd.resize(n);
  for (PointId p = 0; p < n; ++p) kd[p] = ix.kth_neighbor_distance(p, params.min_pts, stats);
  auto is_core = [&](PointId p) { return kd[p] <= params.radius; };

  // Last cluster that ran the gate on each point.
  std::vector<std::int32_t> examined_by(n, -1);
  std::deque<PointId> work;
  std::int32_t next_cluster = 0;

  for (PointId seed = 0; seed < n; ++seed) {
    if (labels[seed] != Labeling::kUnclassified) continue;
    if (!is_core(seed)) {
      labels[seed] = Labeling::kNoise;
      continue;
    }
    const std::int32_t cluster = next_cluster++;
    result.seed_reference.push_back(kd[seed]);
    labels[seed] = cluster;
    examined_by[seed] = cluster;
    work.assign(1, seed);
    while (!work.empty()) {
      const PointId p = work.front();
      work.pop_front();
      // Seed-relative: the seed's core-distance is both the expansion radius
      // and the gate reference. Chained: the expanding point's own.
      const double reference = params.mode == BetaMode::SeedRelative ? kd[seed] : kd[p];
      for (const PointId q : ix.closed_ball(d.coords_of(p), reference, stats)) {
        if (labels[q] >= 0) continue;
        // Core-distance is undefined off the core set, so there is nothing
        // to gate: such points join as non-expanding members.
        if (!is_core(q)) {
          labels[q] = cluster;
          continue;
        }
        if (params.mode == BetaMode::SeedRelative && examined_by[q] == cluster) continue;
        examined_by[q] = cluster;
        if (!(std::abs(kd[q] - reference) <= params.beta)) {
          ++result.gate_rejections;
          continue;
        }
        labels[q] = cluster;
        result.trace.push_back({q, p, cluster, reference});
        work.push_back(q);
      }
    }
  }
  for (auto& l : labels) {
    if (l == Labeling::kUnclassified) l = Labeling::kNoise;
  }
  result.labels = Labeling(std::move(labels));
  return result;
}

}  // namespace dclust
