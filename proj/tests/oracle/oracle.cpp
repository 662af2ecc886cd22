#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

namespace oracle {

std::vector<std::vector<PointId>> neighborhoods(const Dataset& d, double radius) {
  std::vector<std::vector<PointId>> out(d.size());
  for (PointId p = 0; p < d.size(); ++p) {
    for (PointId q = 0; q < d.size(); ++q) {
      if (dclust::distance(d.coords_of(p), d.coords_of(q)) <= radius) out[p].push_back(q);
    }
  }
  return out;
}

std::vector<bool> core_flags(const Dataset& d, const DensityParams& params) {
  const auto nb = neighborhoods(d, params.radius);
  std::vector<bool> core(d.size());
  for (PointId p = 0; p < d.size(); ++p) core[p] = nb[p].size() >= params.min_pts;
  return core;
}

Labeling dbscan(const Dataset& d, const DensityParams& params) {
  const auto nb = neighborhoods(d, params.radius);
  const std::size_t n = d.size();
  std::vector<std::int32_t> label(n, Labeling::kUnclassified);
  std::int32_t next = 0;
  for (PointId s = 0; s < n; ++s) {
    if (label[s] != Labeling::kUnclassified) continue;
    if (nb[s].size() < params.min_pts) {
      label[s] = Labeling::kNoise;
      continue;
    }
    const std::int32_t c = next++;
    label[s] = c;
    std::deque<PointId> queue{s};
    while (!queue.empty()) {
      const PointId p = queue.front();
      queue.pop_front();
      if (nb[p].size() < params.min_pts) continue;
      for (const PointId q : nb[p]) {
        if (label[q] == Labeling::kUnclassified) {
          label[q] = c;
          queue.push_back(q);
        } else if (label[q] == Labeling::kNoise) {
          label[q] = c;
        }
      }
    }
  }
  return Labeling(std::move(label));
}

std::vector<int> connectivity(const Dataset& d, double radius) {
  std::vector<std::size_t> parent(d.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (PointId p = 0; p < d.size(); ++p) {
    for (PointId q = p + 1; q < d.size(); ++q) {
      if (dclust::distance(d.coords_of(p), d.coords_of(q)) <= radius) {
        const auto a = find(p), b = find(q);
        parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }
  std::vector<int> component(d.size(), -1), id_of_root(d.size(), -1);
  int next = 0;
  for (PointId p = 0; p < d.size(); ++p) {
    const auto r = find(p);
    if (id_of_root[r] < 0) id_of_root[r] = next++;
    component[p] = id_of_root[r];
  }
  return component;
}

double kth_distance(const Dataset& d, PointId p, std::size_t k) {
  std::vector<double> dist;
  for (PointId q = 0; q < d.size(); ++q) dist.push_back(dclust::distance(d.coords_of(p), d.coords_of(q)));
  std::sort(dist.begin(), dist.end());
  return dist[k - 1];
}

std::vector<OpticsEntry> optics(const Dataset& d, const DensityParams& params) {
  const std::size_t n = d.size();
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> reach(n, inf);
  std::vector<bool> done(n, false);
  std::vector<OpticsEntry> out;
  while (out.size() < n) {
    // Smallest pending reachability, lowest id on ties; a new component
    // starts at the lowest unprocessed id.
    std::optional<PointId> next;
    for (PointId q = 0; q < n; ++q) {
      if (done[q] || reach[q] == inf) continue;
      if (!next || reach[q] < reach[*next]) next = q;
    }
    if (!next) {
      for (PointId q = 0; q < n; ++q) {
        if (!done[q]) {
          next = q;
          break;
        }
      }
    }
    const PointId p = *next;
    done[p] = true;
    OpticsEntry e{p, std::nullopt, std::nullopt};
    if (reach[p] != inf) e.reachability = reach[p];
    std::size_t within = 0;
    for (PointId q = 0; q < n; ++q) within += dclust::distance(d.coords_of(p), d.coords_of(q)) <= params.radius;
    if (within >= params.min_pts) {
      const double core = kth_distance(d, p, params.min_pts);
      e.core_distance = core;
      for (PointId q = 0; q < n; ++q) {
        const double dist = dclust::distance(d.coords_of(p), d.coords_of(q));
        if (done[q] || dist > params.radius) continue;
        reach[q] = std::min(reach[q], std::max(core, dist));
      }
    }
    out.push_back(e);
  }
  return out;
}

double pair_counting_ari(std::span<const std::int32_t> a, std::span<const std::int32_t> b) {
  // a_ss: same in both, a_sd: same in a only, a_ds: same in b only, a_dd: split in both.
  double ss = 0, sd = 0, ds = 0, dd = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      const bool sa = a[i] == a[j], sb = b[i] == b[j];
      if (sa && sb) {
        ++ss;
      } else if (sa) {
        ++sd;
      } else if (sb) {
        ++ds;
      } else {
        ++dd;
      }
    }
  }
  const double denom = (ss + sd) * (sd + dd) + (ss + ds) * (ds + dd);
  if (denom == 0.0) return 1.0;
  return 2.0 * (ss * dd - sd * ds) / denom;
}

}  // namespace oracle
