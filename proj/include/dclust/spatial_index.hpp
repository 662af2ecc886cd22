#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dclust/core.hpp"

namespace dclust {

enum class IndexStrategy { Tree, LinearScan };

/// Work counters filled in by index queries when the caller asks for them.
struct QueryStats {
  std::uint64_t queries = 0;
  std::uint64_t nodes_visited = 0;  // tree nodes entered; 0 for LinearScan
  std::uint64_t points_tested = 0;  // distance evaluations

  QueryStats& operator+=(const QueryStats& o) {
    queries += o.queries;
    nodes_visited += o.nodes_visited;
    points_tested += o.points_tested;
    return *this;
  }
};

/// Immutable index answering closed-ball and k-th neighbor queries.
///
/// The index keeps a pointer to the dataset it was built over; the dataset
/// must outlive it. Both strategies return identical answers. A query
/// centered on a dataset point counts that point as its own neighbor.
class SpatialIndex {
 public:
  static SpatialIndex build(const Dataset& d, IndexStrategy strategy = IndexStrategy::Tree);

  IndexStrategy strategy() const noexcept { return strategy_; }
  std::size_t size() const noexcept { return data_ ? data_->size() : 0; }
  const Dataset& dataset() const { return *data_; }
  bool built_over(const Dataset& d) const noexcept { return data_ == &d; }

  /// Ids q with dist(center, q) <= radius, ascending. Throws ParameterError
  /// if radius <= 0 and ContractError on a dimension mismatch.
  std::vector<PointId> range_query(std::span<const double> center, double radius,
                                   QueryStats* stats = nullptr) const;
  std::vector<PointId> range_query(PointId center, double radius, QueryStats* stats = nullptr) const {
    return range_query(data_->coords_of(center), radius, stats);
  }

  /// Same as range_query but radius 0 is allowed (returns coincident points).
  std::vector<PointId> closed_ball(std::span<const double> center, double radius,
                                   QueryStats* stats = nullptr) const;

  /// Number of points within radius, without materializing the id list.
  std::size_t count_within(std::span<const double> center, double radius, QueryStats* stats = nullptr) const;

  /// Distance to the k-th nearest dataset point; a dataset point is its own
  /// first neighbor. Throws ParameterError if k == 0 or k > size().
  double kth_neighbor_distance(std::span<const double> center, std::size_t k, QueryStats* stats = nullptr) const;
  double kth_neighbor_distance(PointId center, std::size_t k, QueryStats* stats = nullptr) const {
    return kth_neighbor_distance(data_->coords_of(center), k, stats);
  }

 private:
  struct Node {
    std::uint32_t begin = 0, end = 0;  // slice of order_
    std::int32_t left = -1, right = -1;
  };

  template <typename Visit>
  void visit_ball(std::span<const double> center, double radius, QueryStats& stats, Visit&& visit) const;
  void check_center(std::span<const double> center) const;
  std::int32_t build_node(std::uint32_t begin, std::uint32_t end);
  double box_distance2(std::size_t node_index, std::span<const double> center) const;

  const Dataset* data_ = nullptr;
  IndexStrategy strategy_ = IndexStrategy::Tree;
  std::vector<PointId> order_;
  std::vector<Node> nodes_;
  std::vector<double> boxes_;  // per node: dim mins then dim maxes
};

}  // namespace dclust
