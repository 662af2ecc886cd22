// dclust: generate datasets, run density-based clustering, export plot data
// and run the comparison and scaling benchmarks.
//
// Exit codes:
//   0  success
//   1  internal error
//   2  usage error (bad flag, unknown algorithm or subcommand)
//   3  missing parameter required by the chosen algorithm
//   4  malformed input (parse or validation error)
//   5  parameter out of range
//   6  file cannot be read or written

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dclust/bench.hpp"
#include "dclust/kdvariant.hpp"
#include "dclust/optics.hpp"

namespace {

using namespace dclust;

enum Exit { kOk = 0, kInternal = 1, kUsage = 2, kMissing = 3, kBadInput = 4, kBadParam = 5, kIo = 6 };

const std::vector<std::string> kAlgorithms{"dbscan", "optics", "endbscan", "kdvariant", "ndiff"};

struct Options {
  std::string input;
  std::string output;
  std::string format = "csv";
  std::string report;
  std::string index = "tree";
  bool no_timing = false;

  std::string algo;
  std::optional<double> eps;
  std::optional<std::size_t> minpts;
  std::optional<double> beta;
  std::string beta_mode = "seed";
  std::optional<std::size_t> alpha;
  std::optional<std::size_t> delta;
  std::optional<std::size_t> k;
  std::optional<double> eps_prime;
  std::vector<double> levels;
  std::size_t min_cluster_size = 0;

  std::string shape = "blobs";
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::optional<std::size_t> blob_count;
  std::optional<double> density_ratio;
  std::optional<double> noise_rate;

  std::string config;
  unsigned threads = 0;

  std::vector<std::size_t> sizes{1000, 2000, 4000, 8000, 16000};
  std::size_t reps = 3;

  std::string kind;
};

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.close();
  if (!out) throw IoError("write to '" + path + "' failed");
}

AlgoParams algo_params(const Options& o) {
  AlgoParams p;
  p.eps = o.eps;
  p.minpts = o.minpts;
  p.beta = o.beta;
  p.beta_mode = o.beta_mode == "chained" ? BetaMode::Chained : BetaMode::SeedRelative;
  p.alpha = o.alpha;
  p.delta = o.delta;
  p.eps_prime = o.eps_prime;
  p.levels = o.levels;
  p.min_cluster_size = o.min_cluster_size;
  return p;
}

int cmd_cluster(const Options& o) {
  const Dataset d = load(o.input, parse_format(o.format));
  RunReport r = run_algorithm(d, parse_algorithm(o.algo), algo_params(o), parse_strategy(o.index));
  if (!o.output.empty()) {
    auto out = open_output(o.output);
    write_labels_csv(out, d, r.labels);
    finish(out, o.output);
    r.outputs.push_back(o.output);
  }
  if (!o.report.empty()) {
    auto out = open_output(o.report);
    r.write_json(out, !o.no_timing);
    finish(out, o.report);
  }
  r.write_text(std::cout, !o.no_timing);
  return kOk;
}

int cmd_gen(const Options& o) {
  GenSpec spec;
  spec.shape = parse_shape(o.shape);
  spec.n = o.n;
  spec.seed = o.seed;
  spec.blob_count = o.blob_count;
  spec.density_ratio = o.density_ratio;
  spec.noise_rate = o.noise_rate;
  const Dataset d = generate(spec);
  const auto format = parse_format(o.format);
  if (o.output.empty()) {
    if (format == FileFormat::Csv) {
      write_csv(std::cout, d);
    } else {
      write_arff(std::cout, d);
    }
  } else {
    save(d, o.output, format);
  }
  return kOk;
}

int cmd_compare(const Options& o) {
  std::ifstream in(o.config);
  if (!in) throw IoError("cannot open config '" + o.config + "'");
  const CompareSetup setup = parse_compare_setup(in);
  const ComparisonMatrix m = run_compare(setup, o.threads);
  m.write_text(std::cout);
  if (!o.output.empty()) {
    auto out = open_output(o.output);
    m.write_json(out);
    finish(out, o.output);
  }
  return kOk;
}

int cmd_scaling(const Options& o) {
  ScalingOptions so;
  so.sizes = o.sizes;
  so.repetitions = o.reps;
  so.seed = o.seed;
  if (o.eps) so.eps = *o.eps;
  if (o.minpts) so.minpts = *o.minpts;
  if (!o.algo.empty()) so.algorithms = {parse_algorithm(o.algo)};
  const ScalingResult res = run_scaling(so);
  if (o.output.empty()) {
    res.write_tsv(std::cout, !o.no_timing);
  } else {
    auto out = open_output(o.output);
    res.write_tsv(out, !o.no_timing);
    finish(out, o.output);
  }
  return kOk;
}

int cmd_plotdata(const Options& o) {
  const Dataset d = load(o.input, parse_format(o.format));
  const SpatialIndex ix = SpatialIndex::build(d, parse_strategy(o.index));
  std::ostringstream text;
  if (o.kind == "reachability") {
    if (!o.eps) throw MissingParameterError("reachability plot requires --eps");
    if (!o.minpts) throw MissingParameterError("reachability plot requires --minpts");
    write_reachability_tsv(text, optics_order(d, {*o.eps, *o.minpts}, ix));
  } else {
    const auto k = o.k ? o.k : o.minpts;
    if (!k) throw MissingParameterError("k-distance plot requires --k or --minpts");
    write_k_distance_tsv(text, k_distance_graph(d, *k, ix));
  }
  if (o.output.empty()) {
    std::cout << text.str();
  } else {
    auto out = open_output(o.output);
    out << text.str();
    finish(out, o.output);
  }
  return kOk;
}

void add_algo_flags(CLI::App* c, Options& o) {
  c->add_option("--eps", o.eps, "Neighborhood radius (optics: ordering radius)")->check(CLI::PositiveNumber);
  c->add_option("--minpts", o.minpts, "Minimum neighborhood population, center included");
  c->add_option("--beta", o.beta, "EnDBSCAN core-distance variance bound");
  c->add_option("--beta-mode", o.beta_mode, "Gate reference: seed or chained")
      ->check(CLI::IsMember({"seed", "chained"}));
  c->add_option("--alpha", o.alpha, "kdvariant neighbor-count tolerance");
  c->add_option("--delta", o.delta, "ndiff neighbor-count tolerance");
  c->add_option("--eps-prime", o.eps_prime, "optics extraction threshold (default --eps)");
  c->add_option("--levels", o.levels, "optics multilevel extraction thresholds")->delimiter(',');
  c->add_option("--min-cluster-size", o.min_cluster_size, "Drop or ignore clusters below this size");
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Density-based clustering toolkit"};
  app.require_subcommand(1);
  const auto formats = CLI::IsMember({"csv", "arff"});
  const auto strategies = CLI::IsMember({"tree", "linear"});

  auto* cluster = app.add_subcommand("cluster", "Cluster a dataset and write per-point labels");
  cluster->add_option("--input", o.input, "Input dataset")->required();
  cluster->add_option("--output", o.output, "Label CSV: point_id,<coords>,cluster");
  cluster->add_option("--format", o.format, "Input format")->check(formats);
  cluster->add_option("--algo", o.algo, "Algorithm")->required()->check(CLI::IsMember(kAlgorithms));
  cluster->add_option("--report", o.report, "Also write the run report as JSON");
  cluster->add_option("--index", o.index, "Neighbor search: tree or linear")->check(strategies);
  cluster->add_flag("--no-timing", o.no_timing, "Leave timings out of the text and JSON reports");
  add_algo_flags(cluster, o);

  auto* gen = app.add_subcommand("gen", "Generate a synthetic dataset with ground truth");
  gen->add_option("--shape", o.shape, "blobs, varying or embedded")
      ->check(CLI::IsMember({"blobs", "varying", "embedded"}));
  gen->add_option("--n", o.n, "Number of points")->required();
  gen->add_option("--seed", o.seed, "Random seed");
  gen->add_option("--blob-count", o.blob_count, "Number of clusters (blobs, varying)");
  gen->add_option("--density-ratio", o.density_ratio, "Spacing or density ratio between regions");
  gen->add_option("--noise-rate", o.noise_rate, "Fraction of uniform background noise");
  gen->add_option("--output", o.output, "Output file (default stdout)");
  gen->add_option("--format", o.format, "Output format")->check(formats);

  auto* compare = app.add_subcommand("compare", "Best-of-grid ARI for every scenario and algorithm");
  compare->add_option("--config", o.config, "Scenario and grid config")->required();
  compare->add_option("--output", o.output, "Also write the matrix as JSON");
  compare->add_option("--threads", o.threads, "Worker threads (0 = all cores)");

  auto* scaling = app.add_subcommand("scaling", "Runtime scaling on uniform data with an exponent fit");
  scaling->add_option("--sizes", o.sizes, "Dataset sizes")->delimiter(',');
  scaling->add_option("--reps", o.reps, "Repetitions per size (fastest is kept)");
  scaling->add_option("--seed", o.seed, "Random seed")->default_val(42);
  scaling->add_option("--algo", o.algo, "Time one algorithm only")->check(CLI::IsMember({"dbscan", "optics"}));
  scaling->add_option("--eps", o.eps, "Radius on unit-density data")->check(CLI::PositiveNumber);
  scaling->add_option("--minpts", o.minpts, "MinPts");
  scaling->add_option("--output", o.output, "Output TSV (default stdout)");
  scaling->add_flag("--no-timing", o.no_timing, "Only the deterministic columns");

  auto* plot = app.add_subcommand("plotdata", "Export a reachability or k-distance TSV");
  plot->add_option("--input", o.input, "Input dataset")->required();
  plot->add_option("--format", o.format, "Input format")->check(formats);
  plot->add_option("--kind", o.kind, "reachability or kdist")
      ->required()
      ->check(CLI::IsMember({"reachability", "kdist"}));
  plot->add_option("--eps", o.eps, "Ordering radius")->check(CLI::PositiveNumber);
  plot->add_option("--minpts", o.minpts, "MinPts");
  plot->add_option("--k", o.k, "Neighbor rank for the k-distance graph");
  plot->add_option("--output", o.output, "Output TSV (default stdout)");
  plot->add_option("--index", o.index, "Neighbor search: tree or linear")->check(strategies);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*cluster) return cmd_cluster(o);
    if (*gen) return cmd_gen(o);
    if (*compare) return cmd_compare(o);
    if (*scaling) return cmd_scaling(o);
    if (*plot) return cmd_plotdata(o);
  } catch (const MissingParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kMissing;
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadParam;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}
