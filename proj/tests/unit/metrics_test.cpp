#include <doctest.h>

#include <cmath>

#include "dclust/dbscan.hpp"
#include "dclust/metrics.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace dclust;
using testing_support::Random;

namespace {

using Tags = std::vector<std::int32_t>;

double ari(const Tags& a, const Tags& b) { return adjusted_rand_index(a, b); }

Tags random_tags(Random& rng, std::size_t n, std::size_t k) {
  Tags t(n);
  for (auto& v : t) v = static_cast<std::int32_t>(rng.below(k + 1)) - 1;
  return t;
}

}  // namespace

TEST_CASE("ari examples") {
  CHECK(ari({0, 0, 1, 1}, {0, 0, 1, 1}) == 1.0);
  CHECK(ari({0, 0, 1, 1}, {5, 5, 2, 2}) == 1.0);
  CHECK(ari({0, 0, 0, 0}, {0, 0, 1, 1}) == doctest::Approx(0.0));
  CHECK(ari({0, 0, 1, 1}, {0, 1, 0, 1}) == doctest::Approx(-0.5));
  CHECK(ari({0, 0, 0}, {1, 1, 1}) == 1.0);
  // Noise is a class of its own.
  CHECK(ari({-1, -1, 0, 0}, {-1, -1, 0, 0}) == 1.0);
  CHECK(ari({-1, -1, 0, 0}, {1, 1, 0, 0}) == 1.0);
  CHECK(ari({}, {}) == 1.0);
}

TEST_CASE("ari errors") {
  CHECK_THROWS_AS(ari({0, 1}, {0}), ContractError);
  CHECK_THROWS_AS(ari({0, Labeling::kUnclassified}, {0, 1}), ContractError);
}

TEST_CASE("ari agrees with pair counting on every small labeling") {
  for (std::size_t n = 1; n <= 4; ++n) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= 4;
    auto decode = [&](std::size_t code) {
      Tags t(n);
      for (std::size_t i = 0; i < n; ++i, code /= 4) t[i] = static_cast<std::int32_t>(code % 4) - 1;
      return t;
    };
    for (std::size_t x = 0; x < total; ++x) {
      for (std::size_t y = 0; y < total; ++y) {
        const Tags a = decode(x), b = decode(y);
        REQUIRE(ari(a, b) == doctest::Approx(oracle::pair_counting_ari(a, b)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("ari agrees with pair counting on random labelings") {
  Random rng(81);
  for (std::size_t n = 1; n <= 12; ++n) {
    for (int i = 0; i < 300; ++i) {
      const Tags a = random_tags(rng, n, 1 + rng.below(4));
      const Tags b = random_tags(rng, n, 1 + rng.below(4));
      REQUIRE(ari(a, b) == doctest::Approx(oracle::pair_counting_ari(a, b)).epsilon(1e-12));
    }
  }
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 50 + rng.below(300);
    const Tags a = random_tags(rng, n, 1 + rng.below(8));
    const Tags b = random_tags(rng, n, 1 + rng.below(8));
    REQUIRE(ari(a, b) == doctest::Approx(oracle::pair_counting_ari(a, b)).epsilon(1e-9));
  }
}

TEST_CASE("ari is symmetric, relabel invariant and bounded") {
  Random rng(82);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 1 + rng.below(100);
    const Tags a = random_tags(rng, n, 1 + rng.below(5));
    const Tags b = random_tags(rng, n, 1 + rng.below(5));
    const double v = ari(a, b);
    REQUIRE(v <= 1.0 + 1e-12);
    REQUIRE(v >= -1.0 - 1e-12);
    REQUIRE(v == doctest::Approx(ari(b, a)).epsilon(1e-12));
    REQUIRE(ari(a, a) == 1.0);
    // Permute cluster ids; noise stays noise.
    Tags c = a;
    for (auto& t : c) {
      if (t >= 0) t = 10 - t;
    }
    REQUIRE(v == doctest::Approx(ari(c, b)).epsilon(1e-12));
  }
}

TEST_CASE("summaries") {
  const Score s = summarize(Labeling({0, -1, 1, 0, 0, -1}));
  CHECK(s.cluster_count == 2);
  CHECK(s.noise_count == 2);
  CHECK(s.sizes == std::vector<std::size_t>{3, 1});
  const Score none = summarize(Labeling({-1, -1}));
  CHECK(none.cluster_count == 0);
  CHECK(none.noise_count == 2);
  CHECK(none.sizes.empty());
  CHECK_THROWS_AS(summarize(Labeling({0, Labeling::kUnclassified})), ContractError);

  Random rng(83);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 1 + rng.below(300);
    const Dataset d = testing_support::random_dataset(rng, n);
    const Labeling l = dbscan(d, {rng.uniform(0.2, 1.0), 1 + rng.below(6)}, SpatialIndex::build(d));
    const Score sc = summarize(l);
    std::vector<std::size_t> sizes(l.cluster_count(), 0);
    std::size_t noise = 0;
    for (const auto t : l.labels()) (t < 0 ? noise : sizes[static_cast<std::size_t>(t)])++;
    REQUIRE(sc.sizes == sizes);
    REQUIRE(sc.noise_count == noise);
    std::size_t sum = noise;
    for (const auto v : sc.sizes) sum += v;
    REQUIRE(sum == n);
  }
}

TEST_CASE("score against truth") {
  const std::vector<int> truth{0, 0, 1, 1, -1};
  const Score s = score(Labeling({1, 1, 0, 0, -1}), truth);
  CHECK(s.ari == 1.0);
  CHECK(s.cluster_count == 2);
}

TEST_CASE("core restricted agreement") {
  const Labeling a({0, 0, 1, 1, -1});
  const Labeling b({0, 0, 1, 1, 0});
  CHECK(core_restricted_agreement(a, b, CorePointSet({true, true, true, true, false})) == 1.0);
  CHECK(core_restricted_agreement(a, b, CorePointSet({true, true, true, true, true})) < 1.0);
  CHECK_THROWS_AS(core_restricted_agreement(a, b, CorePointSet({false, false, false, false, false})), ContractError);
  CHECK_THROWS_AS(core_restricted_agreement(a, b, CorePointSet({true, true})), ContractError);
}
