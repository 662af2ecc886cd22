#include <doctest.h>

#include <algorithm>

#include "dclust/spatial_index.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace dclust;
using testing_support::Random;

namespace {

std::vector<PointId> brute_ball(const Dataset& d, std::span<const double> c, double r) {
  std::vector<PointId> out;
  for (PointId q = 0; q < d.size(); ++q) {
    if (distance(c, d.coords_of(q)) <= r) out.push_back(q);
  }
  return out;
}

}  // namespace

TEST_CASE("empty dataset gives an empty index") {
  const Dataset empty(2, {});
  for (const auto s : {IndexStrategy::Tree, IndexStrategy::LinearScan}) {
    const auto ix = SpatialIndex::build(empty, s);
    const double c[] = {0, 0};
    CHECK(ix.size() == 0);
    CHECK(ix.range_query(c, 1.0).empty());
    CHECK(ix.count_within(c, 1.0) == 0);
  }
}

TEST_CASE("range query on three points") {
  const Dataset d = testing_support::line({0, 1, 5});
  const auto ix = SpatialIndex::build(d);
  const double c[] = {0, 0};
  CHECK(ix.range_query(c, 1.5) == std::vector<PointId>{0, 1});
  // Just below the closest pair: only the center.
  CHECK(ix.range_query(PointId{0}, 0.999) == std::vector<PointId>{0});
  // Inclusive boundary.
  CHECK(ix.range_query(PointId{0}, 1.0) == std::vector<PointId>{0, 1});
  CHECK(ix.range_query(PointId{1}, 4.0) == std::vector<PointId>{0, 1, 2});
}

TEST_CASE("range query validates its arguments") {
  const Dataset d = testing_support::line({0, 1});
  const auto ix = SpatialIndex::build(d);
  const double c[] = {0, 0}, c3[] = {0, 0, 0};
  CHECK_THROWS_AS(ix.range_query(c, 0.0), ParameterError);
  CHECK_THROWS_AS(ix.range_query(c, -1.0), ParameterError);
  CHECK_THROWS_AS(ix.range_query(c3, 1.0), ContractError);
  CHECK(ix.closed_ball(c, 0.0) == std::vector<PointId>{0});
}

TEST_CASE("k-th neighbor distance counts the center") {
  const Dataset d = testing_support::line({0, 1, 2, 3});
  const auto ix = SpatialIndex::build(d);
  CHECK(ix.kth_neighbor_distance(PointId{0}, 3) == 2.0);
  CHECK(ix.kth_neighbor_distance(PointId{2}, 1) == 0.0);
  CHECK_THROWS_AS(ix.kth_neighbor_distance(PointId{0}, 0), ParameterError);
  CHECK_THROWS_AS(ix.kth_neighbor_distance(PointId{0}, 5), ParameterError);

  const Dataset dup = testing_support::line({4, 4, 7});
  CHECK(SpatialIndex::build(dup).kth_neighbor_distance(PointId{0}, 2) == 0.0);
}

TEST_CASE("tree and linear scan agree with brute force") {
  Random rng(21);
  for (int round = 0; round < 500; ++round) {
    const Dataset d = testing_support::random_dataset(rng, 1 + rng.below(120));
    const auto tree = SpatialIndex::build(d, IndexStrategy::Tree);
    const auto scan = SpatialIndex::build(d, IndexStrategy::LinearScan);
    const double c[] = {rng.uniform(-1, 11), rng.uniform(-1, 11)};
    const double r = rng.uniform(0.05, 3.0);
    const auto expected = brute_ball(d, c, r);
    REQUIRE(tree.range_query(c, r) == expected);
    REQUIRE(scan.range_query(c, r) == expected);
    REQUIRE(tree.count_within(c, r) == expected.size());
    const PointId p = rng.below(d.size());
    const std::size_t k = 1 + rng.below(d.size());
    const double kd = oracle::kth_distance(d, p, k);
    REQUIRE(tree.kth_neighbor_distance(p, k) == kd);
    REQUIRE(scan.kth_neighbor_distance(p, k) == kd);
  }
}

TEST_CASE("range queries are monotone in the radius") {
  Random rng(22);
  const Dataset d = testing_support::random_dataset(rng, 300);
  const auto ix = SpatialIndex::build(d);
  for (int i = 0; i < 100; ++i) {
    const PointId p = rng.below(d.size());
    const double r1 = rng.uniform(0.01, 2), r2 = r1 + rng.uniform(0, 2);
    const auto a = ix.range_query(p, r1), b = ix.range_query(p, r2);
    CHECK(std::includes(b.begin(), b.end(), a.begin(), a.end()));
  }
}

TEST_CASE("ball at the k-th distance holds at least k points") {
  Random rng(23);
  const Dataset d = testing_support::random_dataset(rng, 400);
  const auto ix = SpatialIndex::build(d);
  for (int i = 0; i < 200; ++i) {
    const PointId p = rng.below(d.size());
    const std::size_t k = 1 + rng.below(20);
    CHECK(ix.closed_ball(d.coords_of(p), ix.kth_neighbor_distance(p, k)).size() >= k);
  }
}

TEST_CASE("tree touches a bounded part of uniform data for a small radius") {
  Random rng(24);
  std::vector<double> coords;
  for (int i = 0; i < 2000; ++i) coords.push_back(rng.uniform(0, 30));
  const Dataset d(2, coords);
  const auto ix = SpatialIndex::build(d);
  QueryStats stats;
  (void)ix.range_query(PointId{17}, 0.5, &stats);
  CHECK(stats.queries == 1);
  CHECK(stats.nodes_visited < d.size() / 10);
  CHECK(stats.points_tested < d.size() / 10);

  QueryStats scan_stats;
  (void)SpatialIndex::build(d, IndexStrategy::LinearScan).range_query(PointId{17}, 0.5, &scan_stats);
  CHECK(scan_stats.points_tested == d.size());
}

TEST_CASE("build is deterministic") {
  Random rng(25);
  const Dataset d = testing_support::random_dataset(rng, 250);
  const auto a = SpatialIndex::build(d), b = SpatialIndex::build(d);
  for (PointId p = 0; p < d.size(); p += 7) {
    QueryStats sa, sb;
    CHECK(a.range_query(p, 1.0, &sa) == b.range_query(p, 1.0, &sb));
    CHECK(sa.nodes_visited == sb.nodes_visited);
  }
}
