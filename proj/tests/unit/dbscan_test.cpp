#include <doctest.h>

#include <deque>

#include "dclust/dbscan.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace dclust;
using testing_support::Random;

TEST_CASE("two separated blobs form two clusters") {
  // Two 4x5 lattices of spacing 1 whose facing edges are 10 apart.
  std::vector<double> coords;
  for (const double ox : {0.0, 13.0}) {
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 5; ++j) {
        coords.push_back(ox + i);
        coords.push_back(j);
      }
    }
  }
  const Dataset d(2, coords);
  const auto ix = SpatialIndex::build(d);
  const Labeling l = dbscan(d, {2.0, 4}, ix);
  CHECK(l.cluster_count() == 2);
  CHECK(l.noise_count() == 0);
  CHECK(l == oracle::dbscan(d, {2.0, 4}));
}

TEST_CASE("scattered points are all noise") {
  const Dataset d = testing_support::line({0, 3, 6, 9, 12});
  const auto ix = SpatialIndex::build(d);
  const Labeling l = dbscan(d, {2.0, 2}, ix);
  CHECK(l.cluster_count() == 0);
  CHECK(l.noise_count() == 5);
}

TEST_CASE("classification on a line of five") {
  const Dataset d = testing_support::line({0, 1, 2, 3, 4});
  const auto ix = SpatialIndex::build(d);
  const auto kinds = classify_points(d, {1.1, 3}, ix);
  CHECK(kinds == std::vector<PointKind>{PointKind::Border, PointKind::Core, PointKind::Core, PointKind::Core,
                                        PointKind::Border});
  const Dataset lone = testing_support::line({0, 1, 2, 50});
  CHECK(classify_points(lone, {1.1, 3}, SpatialIndex::build(lone))[3] == PointKind::Noise);
}

TEST_CASE("classification sizes add up") {
  Random rng(31);
  for (int i = 0; i < 100; ++i) {
    const Dataset d = testing_support::random_dataset(rng, 1 + rng.below(150));
    const DensityParams p{rng.uniform(0.1, 1.5), 1 + rng.below(8)};
    const auto ix = SpatialIndex::build(d);
    const auto kinds = classify_points(d, p, ix);
    const auto core = core_points(d, p, ix);
    std::size_t counts[3] = {0, 0, 0};
    for (const auto k : kinds) ++counts[static_cast<int>(k)];
    CHECK(counts[0] + counts[1] + counts[2] == d.size());
    CHECK(counts[0] == core.size());
    const Labeling l = dbscan(d, p, ix);
    CHECK(l.noise_count() == counts[2]);
  }
}

TEST_CASE("dbscan matches the brute-force implementation") {
  Random rng(32);
  for (int i = 0; i < 100; ++i) {
    const Dataset d = testing_support::random_dataset(rng, 1 + rng.below(200));
    const DensityParams p{rng.uniform(0.1, 1.5), 1 + rng.below(8)};
    const auto ix = SpatialIndex::build(d);
    // Same traversal pins, so even border assignment agrees.
    REQUIRE(dbscan(d, p, ix) == oracle::dbscan(d, p));
    const auto core = core_points(d, p, ix);
    const auto flags = oracle::core_flags(d, p);
    for (PointId q = 0; q < d.size(); ++q) REQUIRE(core.contains(q) == flags[q]);
  }
}

TEST_CASE("MinPts 1 reduces to connected components") {
  Random rng(33);
  for (int i = 0; i < 50; ++i) {
    const Dataset d = testing_support::random_dataset(rng, 1 + rng.below(150));
    const double r = rng.uniform(0.1, 1.0);
    const Labeling l = dbscan(d, {r, 1}, SpatialIndex::build(d));
    const auto comp = oracle::connectivity(d, r);
    CHECK(l.noise_count() == 0);
    for (PointId q = 0; q < d.size(); ++q) REQUIRE(l[q] == comp[q]);
  }
}

TEST_CASE("determinism and noise monotone in MinPts") {
  Random rng(34);
  for (int i = 0; i < 30; ++i) {
    const Dataset d = testing_support::random_dataset(rng, 200);
    const auto ix = SpatialIndex::build(d);
    const double r = rng.uniform(0.2, 1.0);
    CHECK(dbscan(d, {r, 4}, ix) == dbscan(d, {r, 4}, ix));
    std::size_t previous = 0;
    for (std::size_t m = 1; m <= 12; ++m) {
      const auto noise = dbscan(d, {r, m}, ix).noise_count();
      CHECK(noise >= previous);
      previous = noise;
    }
  }
}

TEST_CASE("core points of one cluster are density-connected") {
  Random rng(35);
  for (int i = 0; i < 30; ++i) {
    const Dataset d = testing_support::random_dataset(rng, 150);
    const DensityParams p{rng.uniform(0.2, 1.0), 1 + rng.below(6)};
    const auto ix = SpatialIndex::build(d);
    const Labeling l = dbscan(d, p, ix);
    const auto core = core_points(d, p, ix);
    // BFS over core points from the first core point of each cluster.
    std::vector<int> reach(d.size(), -1);
    for (PointId s = 0; s < d.size(); ++s) {
      if (!core.contains(s) || reach[s] >= 0) continue;
      std::deque<PointId> queue{s};
      reach[s] = l[s];
      while (!queue.empty()) {
        const PointId q = queue.front();
        queue.pop_front();
        for (const PointId o : ix.range_query(q, p.radius)) {
          if (core.contains(o) && reach[o] < 0) {
            reach[o] = l[s];
            queue.push_back(o);
          }
        }
      }
    }
    for (PointId q = 0; q < d.size(); ++q) {
      if (core.contains(q)) REQUIRE(reach[q] == l[q]);
    }
  }
}

TEST_CASE("empty and degenerate datasets") {
  const Dataset empty(2, {});
  CHECK(dbscan(empty, {1.0, 3}, SpatialIndex::build(empty)).size() == 0);
  CHECK(oracle::dbscan(empty, {1.0, 3}).size() == 0);

  const Dataset same = Dataset::from_rows({{2, 2}, {2, 2}, {2, 2}, {2, 2}});
  const Labeling l = dbscan(same, {0.5, 4}, SpatialIndex::build(same));
  CHECK(l.cluster_count() == 1);
  CHECK(l.noise_count() == 0);
  CHECK(oracle::dbscan(same, {0.5, 4}) == l);
}

TEST_CASE("dbscan rejects an index over another dataset") {
  const Dataset a = testing_support::line({0, 1}), b = testing_support::line({0, 1, 2});
  CHECK_THROWS_AS(dbscan(a, {1.0, 2}, SpatialIndex::build(b)), ContractError);
  CHECK_THROWS_AS(dbscan(a, {0.0, 2}, SpatialIndex::build(a)), ParameterError);
}
