#include "dclust/metrics.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <unordered_map>

namespace dclust {

namespace {
double pairs(std::uint64_t k) { return static_cast<double>(k) * static_cast<double>(k - (k > 0 ? 1 : 0)) / 2.0; }
}  // namespace

double adjusted_rand_index(std::span<const std::int32_t> a, std::span<const std::int32_t> b) {
  if (a.size() != b.size()) {
    throw ContractError("adjusted_rand_index: length mismatch (" + std::to_string(a.size()) + " vs " +
                        std::to_string(b.size()) + ")");
  }
  std::map<std::pair<std::int32_t, std::int32_t>, std::uint64_t> joint;
  std::unordered_map<std::int32_t, std::uint64_t> rows, cols;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == Labeling::kUnclassified || b[i] == Labeling::kUnclassified) {
      throw ContractError("adjusted_rand_index: unclassified point " + std::to_string(i));
    }
    ++joint[{a[i], b[i]}];
    ++rows[a[i]];
    ++cols[b[i]];
  }
  double index = 0.0, sum_a = 0.0, sum_b = 0.0;
  for (const auto& [key, c] : joint) index += pairs(c);
  for (const auto& [key, c] : rows) sum_a += pairs(c);
  for (const auto& [key, c] : cols) sum_b += pairs(c);
  const double total = pairs(a.size());
  if (total == 0.0) return 1.0;
  const double expected = sum_a * sum_b / total;
  const double max_index = 0.5 * (sum_a + sum_b);
  const double denom = max_index - expected;
  if (denom == 0.0) return 1.0;
  return (index - expected) / denom;
}

double adjusted_rand_index(const Labeling& pred, std::span<const int> truth) {
  std::vector<std::int32_t> t(truth.begin(), truth.end());
  for (auto& v : t) {
    if (v < 0) v = Labeling::kNoise;
  }
  return adjusted_rand_index(pred.labels(), t);
}

Score summarize(const Labeling& l) {
  if (!l.finished()) throw ContractError("summarize: labeling contains unclassified points");
  Score s;
  s.noise_count = l.noise_count();
  const Labeling c = l.contiguous() ? l : canonicalize(l);
  s.cluster_count = c.cluster_count();
  s.sizes.assign(s.cluster_count, 0);
  for (const auto tag : c.labels()) {
    if (tag >= 0) ++s.sizes[static_cast<std::size_t>(tag)];
  }
  return s;
}

Score score(const Labeling& pred, std::span<const int> truth) {
  Score s = summarize(pred);
  s.ari = adjusted_rand_index(pred, truth);
  return s;
}

double core_restricted_agreement(const Labeling& a, const Labeling& b, const CorePointSet& core) {
  if (a.size() != b.size() || a.size() != core.universe()) {
    throw ContractError("core_restricted_agreement: labelings and core set cover different datasets");
  }
  if (core.size() == 0) throw ContractError("core_restricted_agreement: empty core set, agreement undefined");
  std::vector<std::int32_t> ra, rb;
  ra.reserve(core.size());
  rb.reserve(core.size());
  for (const PointId p : core.ids()) {
    ra.push_back(a[p]);
    rb.push_back(b[p]);
  }
  return adjusted_rand_index(ra, rb);
}

}  // namespace dclust
