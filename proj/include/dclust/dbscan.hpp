#pragma once

#include <vector>

#include "dclust/core.hpp"
#include "dclust/spatial_index.hpp"

namespace dclust {

enum class PointKind { Core, Border, Noise };

/// Membership predicate for core points (|N(p)| >= MinPts).
class CorePointSet {
 public:
  CorePointSet() = default;
  explicit CorePointSet(std::vector<bool> flags);

  bool contains(PointId id) const { return flags_[id]; }
  std::size_t size() const noexcept { return count_; }
  std::size_t universe() const noexcept { return flags_.size(); }
  std::vector<PointId> ids() const;

 private:
  std::vector<bool> flags_;
  std::size_t count_ = 0;
};

CorePointSet core_points(const Dataset& d, const DensityParams& params, const SpatialIndex& ix,
                         QueryStats* stats = nullptr);

/// Core iff the neighborhood holds at least MinPts points; Border iff not
/// core but within radius of a core point; Noise otherwise.
std::vector<PointKind> classify_points(const Dataset& d, const DensityParams& params, const SpatialIndex& ix,
                                       QueryStats* stats = nullptr);

/// DBSCAN with seeds visited in ascending id order and breadth-first
/// expansion. A border point reachable from two clusters goes to the one
/// whose expansion reaches it first.
Labeling dbscan(const Dataset& d, const DensityParams& params, const SpatialIndex& ix,
                QueryStats* stats = nullptr);

namespace detail {
void check_index(const Dataset& d, const SpatialIndex& ix);
}

}  // namespace dclust
