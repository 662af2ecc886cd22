#include "dclust/optics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <set>
#include <string>
#include <utility>

#include "dclust/dbscan.hpp"
#include "dclust/text.hpp"

namespace dclust {

std::optional<double> core_distance(const SpatialIndex& ix, std::span<const double> p, const DensityParams& params,
                                    QueryStats* stats) {
  params.check();
  if (params.min_pts > ix.size()) return std::nullopt;
  const double kd = ix.kth_neighbor_distance(p, params.min_pts, stats);
  if (kd > params.radius) return std::nullopt;
  return kd;
}

namespace {

constexpr double kUndefined = std::numeric_limits<double>::infinity();

struct Neighborhood {
  std::vector<PointId> ids;
  std::vector<double> dist;
  std::optional<double> core;
};

Neighborhood neighborhood(const Dataset& d, const SpatialIndex& ix, PointId p, const DensityParams& params,
                          QueryStats* stats) {
  Neighborhood nb;
  nb.ids = ix.range_query(p, params.radius, stats);
  nb.dist.reserve(nb.ids.size());
  const auto cp = d.coords_of(p);
  for (const PointId q : nb.ids) nb.dist.push_back(std::sqrt(squared_distance_unchecked(cp, d.coords_of(q))));
  if (nb.ids.size() >= params.min_pts) {
    std::vector<double> sorted = nb.dist;
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(params.min_pts - 1),
                     sorted.end());
    nb.core = sorted[params.min_pts - 1];
  }
  return nb;
}

}  // namespace

OpticsOrdering optics_order(const Dataset& d, const DensityParams& params, const SpatialIndex& ix,
                            QueryStats* stats) {
  params.check();
  detail::check_index(d, ix);
  const std::size_t n = d.size();
  std::vector<bool> processed(n, false);
  std::vector<double> reach(n, kUndefined);
  std::vector<std::optional<PointId>> source(n);
  std::set<std::pair<double, PointId>> seeds;
  std::vector<OpticsEntry> entries;
  entries.reserve(n);

  auto process = [&](PointId p) {
    processed[p] = true;
    Neighborhood nb = neighborhood(d, ix, p, params, stats);
    OpticsEntry e;
    e.point_id = p;
    e.core_distance = nb.core;
    if (reach[p] != kUndefined) {
      e.reachability = reach[p];
      e.predecessor = source[p];
    }
    entries.push_back(e);
    if (!nb.core) return;
    for (std::size_t i = 0; i < nb.ids.size(); ++i) {
      const PointId q = nb.ids[i];
      if (processed[q]) continue;
      const double r = std::max(*nb.core, nb.dist[i]);
      if (r < reach[q]) {
        if (reach[q] != kUndefined) seeds.erase({reach[q], q});
        reach[q] = r;
        source[q] = p;
        seeds.insert({r, q});
      }
    }
  };

  for (PointId start = 0; start < n; ++start) {
    if (processed[start]) continue;
    process(start);
    while (!seeds.empty()) {
      const PointId q = seeds.begin()->second;
      seeds.erase(seeds.begin());
      process(q);
    }
  }
  return OpticsOrdering(std::move(entries), params);
}

Labeling extract_clusters(const OpticsOrdering& o, double eps_prime) {
  if (!(eps_prime > 0.0) || eps_prime > o.params().radius) {
    throw ParameterError("eps_prime must lie in (0, " + format_double(o.params().radius) +
                         "], the ordering radius; got " + format_double(eps_prime));
  }
  std::vector<std::int32_t> labels(o.size(), Labeling::kNoise);
  std::int32_t current = Labeling::kNoise;
  std::int32_t next = 0;
  for (const auto& e : o.entries()) {
    if (!e.reachability || *e.reachability > eps_prime) {
      if (e.core_distance && *e.core_distance <= eps_prime) {
        current = next++;
        labels[e.point_id] = current;
      }
      continue;
    }
    labels[e.point_id] = current;
  }
  return Labeling(std::move(labels));
}

Labeling extract_clusters_multilevel(const OpticsOrdering& o, std::span<const double> thresholds,
                                     std::size_t min_cluster_size) {
  if (thresholds.empty()) throw ParameterError("multilevel extraction needs at least one threshold");
  std::vector<double> levels(thresholds.begin(), thresholds.end());
  std::sort(levels.begin(), levels.end());

  const std::size_t n = o.size();
  std::vector<std::int32_t> final_labels(n, Labeling::kNoise);
  std::int32_t next = 0;

  for (const double t : levels) {
    const Labeling level = extract_clusters(o, t);
    // Members of each level cluster, in ordering position order.
    std::vector<std::vector<PointId>> members(level.cluster_count());
    for (const auto& e : o.entries()) {
      const auto c = level[e.point_id];
      if (c >= 0) members[static_cast<std::size_t>(c)].push_back(e.point_id);
    }
    for (const auto& cluster : members) {
      const auto first_labeled = std::find_if(cluster.begin(), cluster.end(),
                                              [&](PointId p) { return final_labels[p] != Labeling::kNoise; });
      if (first_labeled == cluster.end()) {
        if (cluster.size() < min_cluster_size) continue;
        const std::int32_t id = next++;
        for (const PointId p : cluster) final_labels[p] = id;
        continue;
      }
      std::int32_t carry = final_labels[*first_labeled];
      for (const PointId p : cluster) {
        if (final_labels[p] == Labeling::kNoise) {
          final_labels[p] = carry;
        } else {
          carry = final_labels[p];
        }
      }
    }
  }
  return canonicalize(Labeling(std::move(final_labels)));
}

std::optional<double> propose_threshold(const OpticsOrdering& o) {
  std::vector<double> r;
  for (const auto& e : o.entries()) {
    if (e.reachability) r.push_back(*e.reachability);
  }
  if (r.size() < 2) return std::nullopt;
  std::sort(r.begin(), r.end());
  std::size_t best = 0;
  for (std::size_t i = 1; i + 1 < r.size(); ++i) {
    if (r[i + 1] - r[i] > r[best + 1] - r[best]) best = i;
  }
  return 0.5 * (r[best] + r[best + 1]);
}

std::vector<ReachabilityRow> reachability_plot(const OpticsOrdering& o) {
  std::vector<ReachabilityRow> rows;
  rows.reserve(o.size());
  for (std::size_t i = 0; i < o.size(); ++i) {
    const auto& e = o[i];
    rows.push_back({i, e.point_id, e.reachability, e.core_distance});
  }
  return rows;
}

void write_reachability_tsv(std::ostream& out, const OpticsOrdering& o) {
  auto cell = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string("inf"); };
  out << "order_index\tpoint_id\treachability\tcore_distance\n";
  for (const auto& row : reachability_plot(o)) {
    out << row.order_index << '\t' << row.point_id << '\t' << cell(row.reachability) << '\t'
        << cell(row.core_distance) << '\n';
  }
}

}  // namespace dclust
