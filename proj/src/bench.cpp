#include "dclust/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "dclust/dbscan.hpp"
#include "dclust/kdvariant.hpp"
#include "dclust/ndiff.hpp"
#include "dclust/optics.hpp"
#include "dclust/text.hpp"

namespace dclust {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

template <typename T>
const T& require(const std::optional<T>& v, const char* name, Algorithm algo) {
  if (!v) throw MissingParameterError(algorithm_name(algo) + " requires --" + name);
  return *v;
}

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

double to_double(const std::string& s, const std::string& what) {
  if (s == "inf") return INFINITY;
  const auto v = parse_double(s);
  if (!v || std::isnan(*v)) throw ParameterError(what + ": '" + s + "' is not a number");
  return *v;
}

std::size_t to_size(const std::string& s, const std::string& what) {
  const auto v = parse_double(s);
  if (!v || *v < 0 || *v != std::floor(*v) || *v > 1e15) {
    throw ParameterError(what + ": '" + s + "' is not a non-negative integer");
  }
  return static_cast<std::size_t>(*v);
}

std::vector<double> to_levels(const std::string& s) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto pos = s.find(',', start);
    out.push_back(to_double(s.substr(start, pos == std::string::npos ? std::string::npos : pos - start), "levels"));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

// Runs fn(i) for i in [0, count) on a small pool.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

Algorithm parse_algorithm(const std::string& name) {
  if (name == "dbscan") return Algorithm::Dbscan;
  if (name == "optics") return Algorithm::Optics;
  if (name == "endbscan") return Algorithm::Endbscan;
  if (name == "kdvariant") return Algorithm::Kdvariant;
  if (name == "ndiff") return Algorithm::Ndiff;
  throw ParameterError("unknown algorithm '" + name + "'");
}

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::Dbscan:
      return "dbscan";
    case Algorithm::Optics:
      return "optics";
    case Algorithm::Endbscan:
      return "endbscan";
    case Algorithm::Kdvariant:
      return "kdvariant";
    case Algorithm::Ndiff:
      return "ndiff";
  }
  return "?";
}

std::string strategy_name(IndexStrategy s) { return s == IndexStrategy::Tree ? "tree" : "linear"; }

IndexStrategy parse_strategy(const std::string& name) {
  if (name == "tree") return IndexStrategy::Tree;
  if (name == "linear") return IndexStrategy::LinearScan;
  throw ParameterError("unknown index strategy '" + name + "' (expected tree or linear)");
}

std::string AlgoParams::describe() const {
  std::ostringstream out;
  auto sep = [&, first = true]() mutable {
    if (!first) out << ' ';
    first = false;
  };
  if (eps) sep(), out << "eps=" << format_double(*eps);
  if (minpts) sep(), out << "minpts=" << *minpts;
  if (beta) sep(), out << "beta=" << format_double(*beta);
  if (beta && beta_mode == BetaMode::Chained) sep(), out << "beta_mode=chained";
  if (alpha) sep(), out << "alpha=" << *alpha;
  if (delta) sep(), out << "delta=" << *delta;
  if (eps_prime) sep(), out << "eps_prime=" << format_double(*eps_prime);
  if (!levels.empty()) {
    sep();
    out << "levels=";
    for (std::size_t i = 0; i < levels.size(); ++i) out << (i ? "," : "") << format_double(levels[i]);
  }
  if (min_cluster_size) sep(), out << "min_cluster_size=" << min_cluster_size;
  return out.str();
}

RunReport run_algorithm(const Dataset& d, Algorithm algo, const AlgoParams& p, IndexStrategy strategy) {
  RunReport r;
  r.algorithm = algo;
  r.params = p;
  r.strategy = strategy;
  r.n = d.size();

  // Check required parameters before doing any work.
  switch (algo) {
    case Algorithm::Dbscan:
    case Algorithm::Optics:
      require(p.eps, "eps", algo), require(p.minpts, "minpts", algo);
      break;
    case Algorithm::Endbscan:
      require(p.eps, "eps", algo), require(p.minpts, "minpts", algo), require(p.beta, "beta", algo);
      break;
    case Algorithm::Kdvariant:
      require(p.minpts, "minpts", algo), require(p.alpha, "alpha", algo);
      break;
    case Algorithm::Ndiff:
      require(p.eps, "eps", algo), require(p.delta, "delta", algo);
      break;
  }

  auto start = Clock::now();
  const SpatialIndex ix = SpatialIndex::build(d, strategy);
  r.build_ms = elapsed_ms(start);

  start = Clock::now();
  switch (algo) {
    case Algorithm::Dbscan:
      r.labels = dbscan(d, {*p.eps, *p.minpts}, ix, &r.stats);
      break;
    case Algorithm::Optics: {
      const auto order = optics_order(d, {*p.eps, *p.minpts}, ix, &r.stats);
      r.labels = p.levels.empty() ? extract_clusters(order, p.eps_prime.value_or(*p.eps))
                                  : extract_clusters_multilevel(order, p.levels, std::max<std::size_t>(1, p.min_cluster_size));
      break;
    }
    case Algorithm::Endbscan: {
      auto res = endbscan_run(d, {*p.eps, *p.minpts, *p.beta, p.beta_mode}, ix, &r.stats);
      r.counters["gate_rejections"] = res.gate_rejections;
      r.labels = std::move(res.labels);
      break;
    }
    case Algorithm::Kdvariant: {
      auto res = kdvariant_run(d, {*p.minpts, *p.alpha, p.eps}, ix, &r.stats);
      if (!p.eps) r.estimated_radius = res.radius;
      r.counters["graph_queries"] = res.graph_queries;
      r.counters["sorted_elements"] = res.sorted_elements;
      r.counters["count_queries"] = res.count_queries;
      r.counters["expansion_queries"] = res.expansion_queries;
      r.counters["gate_rejections"] = res.gate_rejections;
      r.labels = std::move(res.labels);
      break;
    }
    case Algorithm::Ndiff: {
      auto res = ndiff_run(d, {*p.eps, *p.delta}, ix, &r.stats);
      r.counters["count_queries"] = res.count_queries;
      r.counters["expansion_queries"] = res.expansion_queries;
      r.counters["gate_rejections"] = res.gate_rejections;
      r.labels = p.min_cluster_size ? drop_small_clusters(res.labels, p.min_cluster_size) : std::move(res.labels);
      break;
    }
  }
  r.wall_ms = elapsed_ms(start);
  r.has_truth = d.has_truth();
  r.score = r.has_truth ? score(r.labels, *d.truth()) : summarize(r.labels);
  return r;
}

void RunReport::write_text(std::ostream& out, bool with_timing) const {
  out << "algorithm=" << algorithm_name(algorithm) << '\n';
  out << "params=" << params.describe() << '\n';
  out << "index=" << strategy_name(strategy) << '\n';
  out << "n=" << n << '\n';
  if (estimated_radius) out << "estimated_radius=" << format_double(*estimated_radius) << '\n';
  if (with_timing) {
    out << "build_ms=" << format_double(build_ms) << '\n';
    out << "wall_ms=" << format_double(wall_ms) << '\n';
  }
  out << "queries=" << stats.queries << '\n';
  out << "nodes_visited=" << stats.nodes_visited << '\n';
  out << "points_tested=" << stats.points_tested << '\n';
  for (const auto& [k, v] : counters) out << k << '=' << v << '\n';
  out << "clusters=" << score.cluster_count << '\n';
  out << "noise=" << score.noise_count << '\n';
  if (has_truth) out << "ari=" << format_double(score.ari) << '\n';
  for (const auto& o : outputs) out << "output=" << o << '\n';
}

void RunReport::write_json(std::ostream& out, bool with_timing) const {
  nlohmann::ordered_json j;
  j["algorithm"] = algorithm_name(algorithm);
  j["params"] = params.describe();
  j["index"] = strategy_name(strategy);
  j["n"] = n;
  if (estimated_radius) j["estimated_radius"] = *estimated_radius;
  if (with_timing) {
    j["build_ms"] = build_ms;
    j["wall_ms"] = wall_ms;
  }
  j["queries"] = stats.queries;
  j["nodes_visited"] = stats.nodes_visited;
  j["points_tested"] = stats.points_tested;
  j["counters"] = counters;
  j["clusters"] = score.cluster_count;
  j["noise"] = score.noise_count;
  j["sizes"] = score.sizes;
  if (has_truth) j["ari"] = score.ari;
  j["outputs"] = outputs;
  out << j.dump(2) << '\n';
}

void write_labels_csv(std::ostream& out, const Dataset& d, const Labeling& labels) {
  out << "point_id";
  for (std::size_t a = 0; a < d.dimension(); ++a) out << ',' << coordinate_name(a, d.dimension());
  out << ",cluster\n";
  for (PointId p = 0; p < d.size(); ++p) {
    out << p;
    for (const double c : d.coords_of(p)) out << ',' << format_double(c);
    out << ',' << labels[p] << '\n';
  }
}

// ------------------------------------------------------------------ config

std::vector<ConfigSection> parse_config(std::istream& in) {
  std::vector<ConfigSection> sections;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = line;
    if (const auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
    text = trim(text);
    if (text.empty()) continue;
    if (text.front() == '[') {
      if (text.back() != ']') throw ParseError(line_no, "unterminated section header");
      const auto inner = trim(text.substr(1, text.size() - 2));
      if (inner.empty()) throw ParseError(line_no, "empty section name");
      ConfigSection s;
      s.line = line_no;
      const auto space = inner.find_first_of(" \t");
      s.name = std::string(inner.substr(0, space));
      if (space != std::string_view::npos) s.qualifier = std::string(trim(inner.substr(space)));
      sections.push_back(std::move(s));
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'key = value'");
    if (sections.empty()) throw ParseError(line_no, "key outside of any section");
    const auto key = std::string(trim(text.substr(0, eq)));
    if (key.empty()) throw ParseError(line_no, "empty key");
    sections.back().values[key] = std::string(trim(text.substr(eq + 1)));
  }
  return sections;
}

Grid CompareSetup::grid_for(Algorithm algo, const std::string& scenario) const {
  Grid g;
  if (const auto it = grids.find(algo); it != grids.end()) g = it->second;
  if (const auto it = overrides.find({algo, scenario}); it != overrides.end()) {
    for (const auto& [k, v] : it->second) g[k] = v;
  }
  return g;
}

CompareSetup parse_compare_setup(std::istream& in) {
  CompareSetup setup;
  for (const auto& s : parse_config(in)) {
    try {
      if (s.name == "scenario") {
        if (s.qualifier.empty()) throw ParameterError("scenario section needs a name: [scenario NAME]");
        Scenario sc;
        sc.name = s.qualifier;
        for (const auto& [k, v] : s.values) {
          if (k == "shape") {
            sc.spec.shape = parse_shape(v);
          } else if (k == "n") {
            sc.spec.n = to_size(v, k);
          } else if (k == "seed") {
            sc.spec.seed = to_size(v, k);
          } else if (k == "blob_count") {
            sc.spec.blob_count = to_size(v, k);
          } else if (k == "density_ratio") {
            sc.spec.density_ratio = to_double(v, k);
          } else if (k == "noise_rate") {
            sc.spec.noise_rate = to_double(v, k);
          } else if (k == "shell_radii") {
            const auto w = words(v);
            if (w.size() != 3) throw ParameterError("shell_radii needs three values");
            for (int i = 0; i < 3; ++i) sc.spec.shell_radii[i] = to_double(w[i], k);
          } else if (k.starts_with("min_ari.")) {
            sc.min_ari[parse_algorithm(k.substr(8))] = to_double(v, k);
          } else if (k.starts_with("max_ari.")) {
            sc.max_ari[parse_algorithm(k.substr(8))] = to_double(v, k);
          } else {
            throw ParameterError("unknown scenario key '" + k + "'");
          }
        }
        setup.scenarios.push_back(std::move(sc));
        continue;
      }
      const Algorithm algo = parse_algorithm(s.name);
      Grid g;
      for (const auto& [k, v] : s.values) {
        g[k] = words(v);
        if (g[k].empty()) throw ParameterError("empty value list for '" + k + "'");
      }
      if (std::find(setup.algorithms.begin(), setup.algorithms.end(), algo) == setup.algorithms.end()) {
        setup.algorithms.push_back(algo);
      }
      if (s.qualifier.empty()) {
        setup.grids[algo] = std::move(g);
      } else {
        setup.overrides[{algo, s.qualifier}] = std::move(g);
      }
    } catch (const Error& e) {
      if (dynamic_cast<const ParseError*>(&e)) throw;
      throw ParseError(s.line, e.what());
    }
  }
  if (setup.scenarios.empty()) throw ParseError(0, "config defines no [scenario NAME] section");
  if (setup.algorithms.empty()) throw ParseError(0, "config defines no algorithm grid");
  return setup;
}

std::vector<AlgoParams> expand_grid(Algorithm algo, const Grid& grid) {
  if (grid.empty()) throw ParameterError("empty parameter grid for " + algorithm_name(algo));
  std::vector<AlgoParams> out{AlgoParams{}};
  // `levels` and `eps_prime` are alternative optics extractions, so they
  // form one combined axis rather than two.
  std::vector<AlgoParams> extraction;
  for (const auto& [key, values] : grid) {
    if (values.empty()) throw ParameterError("empty value list for '" + key + "'");
    if (algo == Algorithm::Optics && (key == "eps_prime" || key == "levels")) {
      for (const auto& v : values) {
        AlgoParams e;
        if (key == "eps_prime") {
          e.eps_prime = to_double(v, key);
        } else {
          e.levels = to_levels(v);
        }
        extraction.push_back(e);
      }
      continue;
    }
    std::vector<AlgoParams> next;
    for (const auto& base : out) {
      for (const auto& v : values) {
        AlgoParams p = base;
        if (key == "eps") {
          p.eps = to_double(v, key);
        } else if (key == "minpts") {
          p.minpts = to_size(v, key);
        } else if (key == "beta") {
          p.beta = to_double(v, key);
        } else if (key == "beta_mode") {
          if (v != "seed" && v != "chained") throw ParameterError("beta_mode must be seed or chained");
          p.beta_mode = v == "seed" ? BetaMode::SeedRelative : BetaMode::Chained;
        } else if (key == "alpha") {
          p.alpha = to_size(v, key);
        } else if (key == "delta") {
          p.delta = to_size(v, key);
        } else if (key == "min_cluster_size") {
          p.min_cluster_size = to_size(v, key);
        } else {
          throw ParameterError("unknown grid key '" + key + "' for " + algorithm_name(algo));
        }
        next.push_back(p);
      }
    }
    out = std::move(next);
  }
  if (!extraction.empty()) {
    std::vector<AlgoParams> next;
    for (const auto& base : out) {
      for (const auto& e : extraction) {
        AlgoParams p = base;
        p.eps_prime = e.eps_prime;
        p.levels = e.levels;
        next.push_back(p);
      }
    }
    out = std::move(next);
  }
  return out;
}

ComparisonCell best_of_grid(const Dataset& d, Algorithm algo, const std::vector<AlgoParams>& grid, unsigned threads) {
  if (grid.empty()) throw ParameterError("empty parameter grid for " + algorithm_name(algo));
  if (!d.has_truth()) throw ContractError("grid search needs ground truth");
  const auto& truth = *d.truth();
  std::vector<std::optional<Score>> scores(grid.size());

  if (algo == Algorithm::Optics) {
    // One ordering per (eps, minpts); every extraction reuses it.
    std::map<std::pair<double, std::size_t>, std::optional<OpticsOrdering>> orderings;
    for (const auto& p : grid) {
      orderings[{require(p.eps, "eps", algo), require(p.minpts, "minpts", algo)}];
    }
    std::vector<std::pair<const std::pair<double, std::size_t>, std::optional<OpticsOrdering>>*> slots;
    for (auto& entry : orderings) slots.push_back(&entry);
    const SpatialIndex ix = SpatialIndex::build(d);
    parallel_for(slots.size(), threads, [&](std::size_t i) {
      slots[i]->second = optics_order(d, {slots[i]->first.first, slots[i]->first.second}, ix);
    });
    parallel_for(grid.size(), threads, [&](std::size_t i) {
      const auto& p = grid[i];
      // Extraction thresholds above the ordering radius are not evaluable.
      if (p.eps_prime && *p.eps_prime > *p.eps) return;
      for (const double t : p.levels) {
        if (t > *p.eps) return;
      }
      const auto& order = *orderings.at({*p.eps, *p.minpts});
      const Labeling l = p.levels.empty() ? extract_clusters(order, p.eps_prime.value_or(*p.eps))
                                          : extract_clusters_multilevel(order, p.levels, std::max<std::size_t>(1, p.min_cluster_size));
      scores[i] = score(l, truth);
    });
  } else {
    parallel_for(grid.size(), threads, [&](std::size_t i) { scores[i] = run_algorithm(d, algo, grid[i]).score; });
  }

  ComparisonCell cell;
  cell.algorithm = algo;
  cell.grid_size = grid.size();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (scores[i] && scores[i]->ari > cell.best_ari) {
      cell.best_ari = scores[i]->ari;
      cell.best_params = grid[i];
      cell.best_score = *scores[i];
    }
  }
  return cell;
}

ComparisonMatrix run_compare(const CompareSetup& setup, unsigned threads) {
  ComparisonMatrix m;
  m.algorithms = setup.algorithms;
  for (const auto& sc : setup.scenarios) {
    m.scenarios.push_back(sc.name);
    const Dataset d = generate(sc.spec);
    for (const Algorithm algo : setup.algorithms) {
      ComparisonCell cell = best_of_grid(d, algo, expand_grid(algo, setup.grid_for(algo, sc.name)), threads);
      cell.scenario = sc.name;
      if (const auto it = sc.min_ari.find(algo); it != sc.min_ari.end()) cell.pass = cell.best_ari >= it->second;
      if (const auto it = sc.max_ari.find(algo); it != sc.max_ari.end()) {
        cell.pass = cell.pass.value_or(true) && cell.best_ari < it->second;
      }
      m.cells.push_back(std::move(cell));
    }
  }
  return m;
}

const ComparisonCell& ComparisonMatrix::at(const std::string& scenario, Algorithm algo) const {
  for (const auto& c : cells) {
    if (c.scenario == scenario && c.algorithm == algo) return c;
  }
  throw ContractError("no comparison cell for " + scenario + " x " + algorithm_name(algo));
}

void ComparisonMatrix::write_text(std::ostream& out) const {
  out << std::left << std::setw(12) << "scenario";
  for (const auto a : algorithms) out << std::setw(16) << algorithm_name(a);
  out << '\n';
  for (const auto& s : scenarios) {
    out << std::setw(12) << s;
    for (const auto a : algorithms) {
      const auto& c = at(s, a);
      std::ostringstream cell;
      cell << std::fixed << std::setprecision(3) << c.best_ari;
      if (c.pass) cell << (*c.pass ? " pass" : " FAIL");
      out << std::setw(16) << cell.str();
    }
    out << '\n';
  }
  out << '\n';
  for (const auto& c : cells) {
    out << c.scenario << ' ' << algorithm_name(c.algorithm) << " best_ari=" << format_double(c.best_ari)
        << " clusters=" << c.best_score.cluster_count << " noise=" << c.best_score.noise_count
        << " grid=" << c.grid_size << " params: " << c.best_params.describe() << '\n';
  }
}

void ComparisonMatrix::write_json(std::ostream& out) const {
  nlohmann::ordered_json j;
  j["scenarios"] = scenarios;
  auto& algos = j["algorithms"] = nlohmann::ordered_json::array();
  for (const auto a : algorithms) algos.push_back(algorithm_name(a));
  auto& jc = j["cells"] = nlohmann::ordered_json::array();
  for (const auto& c : cells) {
    nlohmann::ordered_json e;
    e["scenario"] = c.scenario;
    e["algorithm"] = algorithm_name(c.algorithm);
    e["best_ari"] = c.best_ari;
    e["params"] = c.best_params.describe();
    e["clusters"] = c.best_score.cluster_count;
    e["noise"] = c.best_score.noise_count;
    e["grid_size"] = c.grid_size;
    if (c.pass) {
      e["pass"] = *c.pass;
    } else {
      e["pass"] = nullptr;
    }
    jc.push_back(std::move(e));
  }
  out << j.dump(2) << '\n';
}

// ------------------------------------------------------------------ scaling

Dataset uniform_square(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  const double side = std::sqrt(static_cast<double>(n));
  std::vector<double> coords(2 * n);
  for (auto& c : coords) c = side * static_cast<double>(engine() >> 11) * 0x1.0p-53;
  return Dataset(2, std::move(coords));
}

double fit_exponent(const std::vector<double>& n, const std::vector<double>& t) {
  if (n.size() != t.size() || n.size() < 2) throw ParameterError("exponent fit needs at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) {
    const double x = std::log(n[i]);
    const double y = std::log(std::max(t[i], 1e-9));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

ScalingResult run_scaling(const ScalingOptions& o) {
  if (o.sizes.size() < 3) throw ParameterError("scaling needs at least 3 sizes to fit an exponent");
  if (o.repetitions < 1) throw ParameterError("scaling needs at least one repetition");
  ScalingResult res;
  AlgoParams p;
  p.eps = o.eps;
  p.minpts = o.minpts;
  for (const std::size_t n : o.sizes) {
    const Dataset d = uniform_square(n, o.seed + n);
    const std::size_t first = res.rows.size();
    for (const auto algo : o.algorithms) {
      for (const auto strategy : o.strategies) {
        ScalingRow row;
        row.n = n;
        row.algorithm = algo;
        row.strategy = strategy;
        row.build_ms = INFINITY;
        row.wall_ms = INFINITY;
        res.rows.push_back(row);
      }
    }
    // Repetitions are interleaved across configurations so a slow spell on
    // the machine does not land on all repetitions of one row.
    for (std::size_t rep = 0; rep < o.repetitions; ++rep) {
      for (std::size_t i = first; i < res.rows.size(); ++i) {
        ScalingRow& row = res.rows[i];
        const RunReport r = run_algorithm(d, row.algorithm, p, row.strategy);
        row.build_ms = std::min(row.build_ms, r.build_ms);
        row.wall_ms = std::min(row.wall_ms, r.wall_ms);
        row.stats = r.stats;
        row.clusters = r.score.cluster_count;
      }
    }
  }
  for (const auto algo : o.algorithms) {
    for (const auto strategy : o.strategies) {
      std::vector<double> ns, ts;
      for (const auto& row : res.rows) {
        if (row.algorithm == algo && row.strategy == strategy) {
          ns.push_back(static_cast<double>(row.n));
          ts.push_back(row.wall_ms);
        }
      }
      res.fits.push_back({algo, strategy, fit_exponent(ns, ts)});
    }
  }
  return res;
}

const ScalingFit& ScalingResult::fit(Algorithm a, IndexStrategy s) const {
  for (const auto& f : fits) {
    if (f.algorithm == a && f.strategy == s) return f;
  }
  throw ContractError("no scaling fit for " + algorithm_name(a) + "/" + strategy_name(s));
}

double ScalingResult::wall_ms(std::size_t n, Algorithm a, IndexStrategy s) const {
  for (const auto& r : rows) {
    if (r.n == n && r.algorithm == a && r.strategy == s) return r.wall_ms;
  }
  throw ContractError("no scaling row for n=" + std::to_string(n));
}

void ScalingResult::write_tsv(std::ostream& out, bool with_timing) const {
  out << "n\talgorithm\tindex";
  if (with_timing) out << "\tbuild_ms\twall_ms";
  out << "\tqueries\tnodes_visited\tpoints_tested\tclusters\n";
  for (const auto& r : rows) {
    out << r.n << '\t' << algorithm_name(r.algorithm) << '\t' << strategy_name(r.strategy);
    if (with_timing) out << '\t' << format_double(r.build_ms) << '\t' << format_double(r.wall_ms);
    out << '\t' << r.stats.queries << '\t' << r.stats.nodes_visited << '\t' << r.stats.points_tested << '\t'
        << r.clusters << '\n';
  }
  if (with_timing) {
    for (const auto& f : fits) {
      out << "# fit\t" << algorithm_name(f.algorithm) << '\t' << strategy_name(f.strategy) << "\texponent="
          << std::fixed << std::setprecision(3) << f.exponent << std::defaultfloat << '\n';
    }
  }
}

}  // namespace dclust
