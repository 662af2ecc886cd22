#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "dclust/core.hpp"

namespace testing_support {

// Small deterministic generator for test inputs.
class Random {
 public:
  explicit Random(std::uint64_t seed) : engine_(seed) {}
  double uniform(double lo = 0.0, double hi = 1.0) {
    return lo + (hi - lo) * static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  std::size_t below(std::size_t bound) { return static_cast<std::size_t>(engine_() % bound); }

 private:
  std::mt19937_64 engine_;
};

// n points: a few random clumps plus uniform scatter, with some coordinates
// snapped to a coarse grid so that boundary ties and duplicates occur.
inline dclust::Dataset random_dataset(Random& rng, std::size_t n, double extent = 10.0) {
  std::vector<double> coords;
  const std::size_t clumps = 1 + rng.below(4);
  std::vector<std::pair<double, double>> centers;
  for (std::size_t c = 0; c < clumps; ++c) centers.emplace_back(rng.uniform(0, extent), rng.uniform(0, extent));
  const bool snap = rng.below(3) == 0;
  for (std::size_t i = 0; i < n; ++i) {
    double x, y;
    if (rng.below(4) == 0) {
      x = rng.uniform(0, extent);
      y = rng.uniform(0, extent);
    } else {
      const auto& [cx, cy] = centers[rng.below(clumps)];
      x = cx + rng.uniform(-1, 1);
      y = cy + rng.uniform(-1, 1);
    }
    if (snap) {
      x = std::round(x * 4) / 4;
      y = std::round(y * 4) / 4;
    }
    coords.push_back(x);
    coords.push_back(y);
  }
  return dclust::Dataset(2, std::move(coords));
}

inline dclust::Dataset line(std::initializer_list<double> xs) {
  std::vector<double> coords;
  for (double x : xs) {
    coords.push_back(x);
    coords.push_back(0.0);
  }
  return dclust::Dataset(2, std::move(coords));
}

// Jittered square lattice of side*side points at the given spacing.
inline dclust::Dataset lattice(std::size_t side, double spacing, double ox = 0.0, double oy = 0.0) {
  std::vector<double> coords;
  for (std::size_t i = 0; i < side; ++i) {
    for (std::size_t j = 0; j < side; ++j) {
      coords.push_back(ox + spacing * double(i));
      coords.push_back(oy + spacing * double(j));
    }
  }
  return dclust::Dataset(2, std::move(coords));
}

inline dclust::Dataset concat(const dclust::Dataset& a, const dclust::Dataset& b) {
  std::vector<double> coords(a.raw_coords().begin(), a.raw_coords().end());
  coords.insert(coords.end(), b.raw_coords().begin(), b.raw_coords().end());
  return dclust::Dataset(a.dimension(), std::move(coords));
}

// True when a and b put the same pairs of `ids` together.
inline bool same_partition(const dclust::Labeling& a, const dclust::Labeling& b, const std::vector<std::size_t>& ids) {
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      const bool sa = a[ids[i]] >= 0 && a[ids[i]] == a[ids[j]];
      const bool sb = b[ids[i]] >= 0 && b[ids[i]] == b[ids[j]];
      if (sa != sb) return false;
    }
  }
  return true;
}

}  // namespace testing_support
