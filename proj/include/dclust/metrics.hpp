#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dclust/core.hpp"
#include "dclust/dbscan.hpp"

namespace dclust {

struct Score {
  double ari = 0.0;
  std::size_t cluster_count = 0;
  std::size_t noise_count = 0;
  std::vector<std::size_t> sizes;  // indexed by cluster id
};

/// Pair-counting adjusted Rand index. The noise tag (-1) is one more class
/// on either side. Defined as 1.0 when the chance-adjusted denominator
/// vanishes (both partitions trivial). Throws ContractError on a length
/// mismatch or an unclassified tag.
double adjusted_rand_index(std::span<const std::int32_t> a, std::span<const std::int32_t> b);
double adjusted_rand_index(const Labeling& pred, std::span<const int> truth);

/// Cluster count, noise count and per-cluster sizes. ari is left at 0.
Score summarize(const Labeling& l);

/// Summary plus ARI against ground truth.
Score score(const Labeling& pred, std::span<const int> truth);

/// ARI computed over the core points only. Throws ContractError when the
/// core set is empty.
double core_restricted_agreement(const Labeling& a, const Labeling& b, const CorePointSet& core);

}  // namespace dclust
