#pragma once

#include <cstdint>
#include <vector>

#include "dclust/core.hpp"

namespace dclust {

/// One admission through a neighbor-count gate.
struct GateAdmission {
  PointId point;
  PointId via;  // member whose neighborhood reached `point`
  std::int32_t cluster;  // id before the final renumbering
  std::size_t point_count;
  std::size_t via_count;
};

/// Output of the neighbor-count gated algorithms, with run counters.
struct GatedResult {
  Labeling labels;
  double radius = 0.0;
  std::vector<std::size_t> neighbor_count;  // |N(p)|, self included
  std::vector<GateAdmission> trace;
  std::uint64_t gate_rejections = 0;
  std::uint64_t count_queries = 0;      // one per point
  std::uint64_t graph_queries = 0;      // k-distance graph (kdvariant only)
  std::uint64_t sorted_elements = 0;    // k-distance graph sort size
  std::uint64_t expansion_queries = 0;  // neighborhoods expanded
};

}  // namespace dclust
