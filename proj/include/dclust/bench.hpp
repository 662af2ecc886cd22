#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dclust/core.hpp"
#include "dclust/datasets.hpp"
#include "dclust/endbscan.hpp"
#include "dclust/metrics.hpp"
#include "dclust/spatial_index.hpp"

namespace dclust {

enum class Algorithm { Dbscan, Optics, Endbscan, Kdvariant, Ndiff };

Algorithm parse_algorithm(const std::string& name);
std::string algorithm_name(Algorithm a);

/// Every tunable any algorithm accepts. Each algorithm reads its own subset
/// and raises MissingParameterError for a required one that is absent.
///
///   dbscan     eps, minpts
///   optics     eps (ordering radius), minpts; eps_prime (default eps) or levels
///   endbscan   eps, minpts, beta [, beta_mode]
///   kdvariant  minpts, alpha [, eps overrides the estimated radius]
///   ndiff      eps, delta [, min_cluster_size]
struct AlgoParams {
  std::optional<double> eps;
  std::optional<std::size_t> minpts;
  std::optional<double> beta;
  BetaMode beta_mode = BetaMode::SeedRelative;
  std::optional<std::size_t> alpha;
  std::optional<std::size_t> delta;
  std::optional<double> eps_prime;
  std::vector<double> levels;  // optics multilevel thresholds
  std::size_t min_cluster_size = 0;  // 0 = no post-filter

  /// Stable `key=value` rendering of the parameters that are set.
  std::string describe() const;
};

/// Outcome of one clustering run. Timings exclude file I/O; the index build
/// is timed separately from the clustering itself.
struct RunReport {
  Algorithm algorithm = Algorithm::Dbscan;
  AlgoParams params;
  IndexStrategy strategy = IndexStrategy::Tree;
  std::size_t n = 0;
  double build_ms = 0.0;
  double wall_ms = 0.0;
  QueryStats stats;
  std::map<std::string, std::uint64_t> counters;
  std::optional<double> estimated_radius;  // kdvariant without eps
  Score score;  // ari only meaningful when has_truth
  bool has_truth = false;
  Labeling labels;
  std::vector<std::string> outputs;

  /// Line-oriented key=value text. Timing lines are included only when
  /// `with_timing` is set, so reports can be compared byte for byte.
  void write_text(std::ostream& out, bool with_timing = true) const;
  void write_json(std::ostream& out, bool with_timing = true) const;
};

RunReport run_algorithm(const Dataset& d, Algorithm algo, const AlgoParams& params,
                        IndexStrategy strategy = IndexStrategy::Tree);

/// Output CSV: `point_id,<coord names>,cluster` with -1 for noise.
void write_labels_csv(std::ostream& out, const Dataset& d, const Labeling& labels);

// ------------------------------------------------------------------ config

/// Line-oriented `key = value` file with `[section]` headers; `#` starts a
/// comment. Values are kept as raw strings.
struct ConfigSection {
  std::string name;
  std::string qualifier;  // text after the first space in the header, if any
  std::size_t line = 0;
  std::map<std::string, std::string> values;
};

std::vector<ConfigSection> parse_config(std::istream& in);

struct Scenario {
  std::string name;
  GenSpec spec;
  std::map<Algorithm, double> min_ari;  // cell passes if best >= this
  std::map<Algorithm, double> max_ari;  // cell passes if best < this
};

/// Parameter grid of one algorithm: every key maps to the list of values to
/// try; the grid is their cartesian product.
using Grid = std::map<std::string, std::vector<std::string>>;

struct CompareSetup {
  std::vector<Scenario> scenarios;
  std::vector<Algorithm> algorithms;  // in config order
  std::map<Algorithm, Grid> grids;
  std::map<std::pair<Algorithm, std::string>, Grid> overrides;  // per scenario

  /// Config grid for `algo` on `scenario`, with per-scenario keys replacing
  /// the defaults.
  Grid grid_for(Algorithm algo, const std::string& scenario) const;
};

/// Reads scenarios from `[scenario NAME]` sections and grids from
/// `[ALGORITHM]` / `[ALGORITHM SCENARIO]` sections. Throws ParseError.
CompareSetup parse_compare_setup(std::istream& in);

/// Expands a grid into concrete parameter sets (deterministic order).
/// Throws ParameterError when the grid is empty.
std::vector<AlgoParams> expand_grid(Algorithm algo, const Grid& grid);

struct ComparisonCell {
  std::string scenario;
  Algorithm algorithm = Algorithm::Dbscan;
  double best_ari = -1.0;
  AlgoParams best_params;
  Score best_score;
  std::size_t grid_size = 0;
  std::optional<bool> pass;  // unset when the scenario sets no threshold
};

struct ComparisonMatrix {
  std::vector<std::string> scenarios;
  std::vector<Algorithm> algorithms;
  std::vector<ComparisonCell> cells;  // scenario-major

  const ComparisonCell& at(const std::string& scenario, Algorithm algo) const;
  void write_text(std::ostream& out) const;
  void write_json(std::ostream& out) const;
};

/// Best-of-grid search over each scenario x algorithm. Grid points run on
/// up to `threads` workers (0 = hardware concurrency); results do not depend
/// on the thread count.
ComparisonMatrix run_compare(const CompareSetup& setup, unsigned threads = 0);

/// Best-of-grid search for one algorithm on one dataset.
ComparisonCell best_of_grid(const Dataset& d, Algorithm algo, const std::vector<AlgoParams>& grid,
                            unsigned threads = 0);

// ------------------------------------------------------------------ scaling

struct ScalingOptions {
  std::vector<std::size_t> sizes{1000, 2000, 4000, 8000, 16000};
  std::size_t repetitions = 3;
  std::vector<Algorithm> algorithms{Algorithm::Dbscan, Algorithm::Optics};
  std::vector<IndexStrategy> strategies{IndexStrategy::Tree, IndexStrategy::LinearScan};
  std::uint64_t seed = 42;
  double eps = 1.0;       // on uniform data of unit density
  std::size_t minpts = 4;
};

struct ScalingRow {
  std::size_t n = 0;
  Algorithm algorithm = Algorithm::Dbscan;
  IndexStrategy strategy = IndexStrategy::Tree;
  double build_ms = 0.0;  // fastest repetition
  double wall_ms = 0.0;   // fastest repetition
  QueryStats stats;
  std::size_t clusters = 0;
};

struct ScalingFit {
  Algorithm algorithm = Algorithm::Dbscan;
  IndexStrategy strategy = IndexStrategy::Tree;
  double exponent = 0.0;  // least-squares slope of log(wall_ms) on log(n)
};

struct ScalingResult {
  std::vector<ScalingRow> rows;
  std::vector<ScalingFit> fits;

  const ScalingFit& fit(Algorithm a, IndexStrategy s) const;
  double wall_ms(std::size_t n, Algorithm a, IndexStrategy s) const;
  /// TSV table followed by `# fit` lines. Timing columns are omitted when
  /// `with_timing` is false.
  void write_tsv(std::ostream& out, bool with_timing = true) const;
};

/// Uniform points of unit density in a square of side sqrt(n), so the
/// expected neighborhood size stays fixed as n grows. Timed runs are
/// sequential. Throws ParameterError for fewer than 3 sizes or 0 reps.
ScalingResult run_scaling(const ScalingOptions& options);

Dataset uniform_square(std::size_t n, std::uint64_t seed);

/// log-log least-squares slope.
double fit_exponent(const std::vector<double>& n, const std::vector<double>& t);

std::string strategy_name(IndexStrategy s);
IndexStrategy parse_strategy(const std::string& name);

}  // namespace dclust
