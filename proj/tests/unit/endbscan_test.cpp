#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "dclust/dbscan.hpp"
#include "dclust/endbscan.hpp"
#include "dclust/metrics.hpp"
#include "support.hpp"

using namespace dclust;
using testing_support::Random;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Dataset jittered_lattice(Random& rng, std::size_t side, double spacing, double jitter, double ox = 0) {
  std::vector<double> coords;
  for (std::size_t i = 0; i < side; ++i) {
    for (std::size_t j = 0; j < side; ++j) {
      coords.push_back(ox + spacing * double(i) + rng.uniform(-jitter, jitter));
      coords.push_back(spacing * double(j) + rng.uniform(-jitter, jitter));
    }
  }
  return Dataset(2, coords);
}

}  // namespace

TEST_CASE("infinite beta on a uniform blob matches dbscan") {
  Random rng(51);
  for (const double jitter : {0.0, 0.02, 0.05}) {
    const Dataset d = jittered_lattice(rng, 12, 0.5, jitter);
    const auto ix = SpatialIndex::build(d);
    const Labeling en = endbscan(d, {1.0, 5, kInf}, ix);
    const Labeling db = dbscan(d, {1.0, 5}, ix);
    CHECK(en.cluster_count() == 1);
    CHECK(en == db);
  }
}

TEST_CASE("points farther apart than the radius are all noise") {
  const Dataset d = testing_support::line({0, 2, 4, 6});
  const Labeling l = endbscan(d, {1.0, 2, 0.5}, SpatialIndex::build(d));
  CHECK(l.noise_count() == 4);
  const Labeling too_many = endbscan(d, {10.0, 9, 0.5}, SpatialIndex::build(d));
  CHECK(too_many.noise_count() == 4);
}

TEST_CASE("parameters are checked") {
  const Dataset d = testing_support::line({0, 1});
  const auto ix = SpatialIndex::build(d);
  CHECK_THROWS_AS(endbscan(d, {1.0, 2, -0.1}, ix), ParameterError);
  CHECK_THROWS_AS(endbscan(d, {0.0, 2, 0.1}, ix), ParameterError);
  CHECK_THROWS_AS(endbscan(d, {1.0, 0, 0.1}, ix), ParameterError);
}

TEST_CASE("adjacent regions of different density are split by the gate") {
  // Dense lattice (spacing 0.1) 0.3 away from a sparse one (spacing 0.5).
  // Points are listed center first so each region is seeded from its middle.
  Random rng(52);
  auto centered = [&](std::size_t side, double spacing, double ox) {
    std::vector<std::pair<double, std::pair<double, double>>> pts;
    const double mid = spacing * double(side - 1) / 2;
    for (std::size_t i = 0; i < side; ++i) {
      for (std::size_t j = 0; j < side; ++j) {
        const double x = spacing * double(i) + rng.uniform(-0.01, 0.01) * spacing;
        const double y = spacing * double(j) + rng.uniform(-0.01, 0.01) * spacing;
        pts.push_back({std::hypot(x - mid, y - mid), {ox + x, y}});
      }
    }
    std::sort(pts.begin(), pts.end());
    std::vector<double> coords;
    for (const auto& [key, xy] : pts) {
      coords.push_back(xy.first);
      coords.push_back(xy.second);
    }
    return Dataset(2, coords);
  };
  const Dataset d = testing_support::concat(centered(10, 0.1, 0.0), centered(8, 0.5, 1.2));
  std::vector<int> truth(d.size(), 1);
  std::fill(truth.begin(), truth.begin() + 100, 0);
  const auto ix = SpatialIndex::build(d);

  const Labeling merged = dbscan(d, {0.75, 9}, ix);
  CHECK(merged.cluster_count() == 1);
  const Labeling split = endbscan(d, {0.75, 9, 0.2}, ix);
  CHECK(adjusted_rand_index(split, truth) > 0.8);
  CHECK(adjusted_rand_index(merged, truth) < 0.2);
}

TEST_CASE("gate soundness and reference bookkeeping") {
  Random rng(53);
  for (int i = 0; i < 50; ++i) {
    const Dataset d = testing_support::random_dataset(rng, 20 + rng.below(200));
    const EnParams p{rng.uniform(0.3, 2.0), 2 + rng.below(8), rng.uniform(0.0, 0.5),
                     rng.below(2) ? BetaMode::SeedRelative : BetaMode::Chained};
    const auto res = endbscan_run(d, p, SpatialIndex::build(d));
    REQUIRE(res.labels.finished());
    REQUIRE(res.labels.contiguous());
    REQUIRE(res.seed_reference.size() == res.labels.cluster_count());
    std::vector<bool> gated(d.size(), false);
    for (const auto& a : res.trace) {
      gated[a.point] = true;
      REQUIRE(res.labels[a.point] == a.cluster);
      REQUIRE(res.labels[a.via] == a.cluster);
      REQUIRE(std::abs(res.k_distance[a.point] - a.reference) <= p.beta);
      if (p.mode == BetaMode::SeedRelative) {
        REQUIRE(a.reference == res.seed_reference[static_cast<std::size_t>(a.cluster)]);
      } else {
        REQUIRE(a.reference == res.k_distance[a.via]);
      }
    }
    // Every member is a seed, a gated core admission, or a non-core member.
    std::vector<bool> seeded(res.labels.cluster_count(), false);
    for (PointId q = 0; q < d.size(); ++q) {
      const auto c = res.labels[q];
      if (c < 0 || gated[q]) continue;
      if (!seeded[static_cast<std::size_t>(c)] && res.k_distance[q] == res.seed_reference[static_cast<std::size_t>(c)]) {
        seeded[static_cast<std::size_t>(c)] = true;
        continue;
      }
      REQUIRE(res.k_distance[q] > p.radius);
    }
  }
}

TEST_CASE("endbscan is deterministic") {
  Random rng(54);
  const Dataset d = testing_support::random_dataset(rng, 300);
  const auto ix = SpatialIndex::build(d);
  const EnParams p{1.0, 5, 0.2};
  CHECK(endbscan(d, p, ix) == endbscan(d, p, ix));
}
