#include "dclust/spatial_index.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <string>

namespace dclust {

namespace {
constexpr std::uint32_t kLeafSize = 8;
}

SpatialIndex SpatialIndex::build(const Dataset& d, IndexStrategy strategy) {
  SpatialIndex ix;
  ix.data_ = &d;
  ix.strategy_ = strategy;
  if (strategy == IndexStrategy::LinearScan || d.empty()) return ix;
  ix.order_.resize(d.size());
  std::iota(ix.order_.begin(), ix.order_.end(), PointId{0});
  ix.nodes_.reserve(2 * d.size() / kLeafSize + 1);
  ix.build_node(0, static_cast<std::uint32_t>(d.size()));
  return ix;
}

std::int32_t SpatialIndex::build_node(std::uint32_t begin, std::uint32_t end) {
  const std::size_t dim = data_->dimension();
  const auto index = static_cast<std::int32_t>(nodes_.size());
  nodes_.push_back({begin, end, -1, -1});
  boxes_.resize(boxes_.size() + 2 * dim);
  double* lo = boxes_.data() + index * 2 * dim;
  double* hi = lo + dim;
  std::fill(lo, lo + dim, INFINITY);
  std::fill(hi, hi + dim, -INFINITY);
  for (std::uint32_t i = begin; i < end; ++i) {
    const auto c = data_->coords_of(order_[i]);
    for (std::size_t a = 0; a < dim; ++a) {
      lo[a] = std::min(lo[a], c[a]);
      hi[a] = std::max(hi[a], c[a]);
    }
  }
  if (end - begin <= kLeafSize) return index;

  std::size_t axis = 0;
  for (std::size_t a = 1; a < dim; ++a) {
    if (hi[a] - lo[a] > hi[axis] - lo[axis]) axis = a;
  }
  if (!(hi[axis] > lo[axis])) return index;  // all points coincide

  const std::uint32_t mid = begin + (end - begin) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                   [&](PointId x, PointId y) {
                     const double cx = data_->coords_of(x)[axis];
                     const double cy = data_->coords_of(y)[axis];
                     return cx < cy || (cx == cy && x < y);
                   });
  const auto left = build_node(begin, mid);
  const auto right = build_node(mid, end);
  nodes_[index].left = left;
  nodes_[index].right = right;
  return index;
}

double SpatialIndex::box_distance2(std::size_t node_index, std::span<const double> center) const {
  const std::size_t dim = data_->dimension();
  const double* lo = boxes_.data() + node_index * 2 * dim;
  const double* hi = lo + dim;
  double s = 0.0;
  for (std::size_t a = 0; a < dim; ++a) {
    double t = 0.0;
    if (center[a] < lo[a]) {
      t = lo[a] - center[a];
    } else if (center[a] > hi[a]) {
      t = center[a] - hi[a];
    }
    s += t * t;
  }
  return s;
}

void SpatialIndex::check_center(std::span<const double> center) const {
  if (data_ && !data_->empty() && center.size() != data_->dimension()) {
    throw ContractError("query center has dimension " + std::to_string(center.size()) + ", index has " +
                        std::to_string(data_->dimension()));
  }
}

// Calls visit(id) for every point with distance <= radius. Membership uses
// the same sqrt comparison as distance() so both strategies agree bit for bit
// at the boundary.
template <typename Visit>
void SpatialIndex::visit_ball(std::span<const double> center, double radius, QueryStats& stats,
                              Visit&& visit) const {
  ++stats.queries;
  if (!data_ || data_->empty()) return;
  if (strategy_ == IndexStrategy::LinearScan) {
    for (PointId id = 0; id < data_->size(); ++id) {
      ++stats.points_tested;
      if (std::sqrt(squared_distance_unchecked(center, data_->coords_of(id))) <= radius) visit(id);
    }
    return;
  }
  std::vector<std::int32_t> stack{0};
  while (!stack.empty()) {
    const auto ni = stack.back();
    stack.pop_back();
    const Node& node = nodes_[ni];
    ++stats.nodes_visited;
    if (std::sqrt(box_distance2(ni, center)) > radius) continue;
    if (node.left < 0) {
      for (std::uint32_t i = node.begin; i < node.end; ++i) {
        ++stats.points_tested;
        const PointId id = order_[i];
        if (std::sqrt(squared_distance_unchecked(center, data_->coords_of(id))) <= radius) visit(id);
      }
      continue;
    }
    stack.push_back(node.right);
    stack.push_back(node.left);
  }
}

std::vector<PointId> SpatialIndex::range_query(std::span<const double> center, double radius,
                                               QueryStats* stats) const {
  if (!(radius > 0.0)) throw ParameterError("range_query: radius must be positive");
  return closed_ball(center, radius, stats);
}

std::vector<PointId> SpatialIndex::closed_ball(std::span<const double> center, double radius,
                                               QueryStats* stats) const {
  if (!(radius >= 0.0)) throw ParameterError("closed_ball: radius must be non-negative");
  check_center(center);
  QueryStats local;
  std::vector<PointId> out;
  visit_ball(center, radius, local, [&](PointId id) { out.push_back(id); });
  if (strategy_ == IndexStrategy::Tree) std::sort(out.begin(), out.end());
  if (stats) *stats += local;
  return out;
}

std::size_t SpatialIndex::count_within(std::span<const double> center, double radius, QueryStats* stats) const {
  if (!(radius >= 0.0)) throw ParameterError("count_within: radius must be non-negative");
  check_center(center);
  QueryStats local;
  std::size_t count = 0;
  visit_ball(center, radius, local, [&](PointId) { ++count; });
  if (stats) *stats += local;
  return count;
}

double SpatialIndex::kth_neighbor_distance(std::span<const double> center, std::size_t k, QueryStats* stats) const {
  if (k == 0) throw ParameterError("kth_neighbor_distance: k must be positive");
  if (k > size()) {
    throw ParameterError("kth_neighbor_distance: k = " + std::to_string(k) + " exceeds dataset size " +
                         std::to_string(size()));
  }
  check_center(center);
  QueryStats local;
  ++local.queries;
  // Max-heap of the k smallest squared distances seen so far.
  std::priority_queue<double> best;
  auto offer = [&](PointId id) {
    ++local.points_tested;
    const double d2 = squared_distance_unchecked(center, data_->coords_of(id));
    if (best.size() < k) {
      best.push(d2);
    } else if (d2 < best.top()) {
      best.pop();
      best.push(d2);
    }
  };
  if (strategy_ == IndexStrategy::LinearScan) {
    for (PointId id = 0; id < data_->size(); ++id) offer(id);
  } else {
    std::vector<std::pair<double, std::int32_t>> stack{{box_distance2(0, center), 0}};
    while (!stack.empty()) {
      const auto [bd2, ni] = stack.back();
      stack.pop_back();
      if (best.size() == k && bd2 > best.top()) continue;
      ++local.nodes_visited;
      const Node& node = nodes_[ni];
      if (node.left < 0) {
        for (std::uint32_t i = node.begin; i < node.end; ++i) offer(order_[i]);
        continue;
      }
      const double dl = box_distance2(node.left, center);
      const double dr = box_distance2(node.right, center);
      // Push the farther child first so the nearer one is explored next.
      if (dl <= dr) {
        stack.emplace_back(dr, node.right);
        stack.emplace_back(dl, node.left);
      } else {
        stack.emplace_back(dl, node.left);
        stack.emplace_back(dr, node.right);
      }
    }
  }
  if (stats) *stats += local;
  return std::sqrt(best.top());
}

}  // namespace dclust
