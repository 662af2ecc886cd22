// Python bindings: points go in as (n, d) float arrays, labels come back as
// int32 arrays with -1 for noise.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <limits>

#include "dclust/datasets.hpp"
#include "dclust/dbscan.hpp"
#include "dclust/endbscan.hpp"
#include "dclust/kdvariant.hpp"
#include "dclust/metrics.hpp"
#include "dclust/ndiff.hpp"
#include "dclust/optics.hpp"

namespace py = pybind11;
using namespace dclust;

namespace {

using Points = py::array_t<double, py::array::c_style | py::array::forcecast>;
using Tags = py::array_t<std::int32_t, py::array::c_style | py::array::forcecast>;

Dataset to_dataset(const Points& points) {
  if (points.ndim() != 2) throw ContractError("points must be a 2-D array of shape (n, d)");
  const auto n = static_cast<std::size_t>(points.shape(0));
  const auto dim = static_cast<std::size_t>(points.shape(1));
  std::vector<double> coords(points.data(), points.data() + n * dim);
  return validate(Dataset(dim, std::move(coords)));
}

py::array_t<std::int32_t> to_array(const Labeling& l) {
  py::array_t<std::int32_t> out(static_cast<py::ssize_t>(l.size()));
  std::copy(l.labels().begin(), l.labels().end(), out.mutable_data());
  return out;
}

Points coords_array(const Dataset& d) {
  Points out({static_cast<py::ssize_t>(d.size()), static_cast<py::ssize_t>(d.dimension())});
  std::copy(d.raw_coords().begin(), d.raw_coords().end(), out.mutable_data());
  return out;
}

py::object truth_array(const Dataset& d) {
  if (!d.has_truth()) return py::none();
  py::array_t<std::int32_t> out(static_cast<py::ssize_t>(d.size()));
  std::copy(d.truth()->begin(), d.truth()->end(), out.mutable_data());
  return std::move(out);
}

IndexStrategy strategy(const std::string& name) {
  if (name == "tree") return IndexStrategy::Tree;
  if (name == "linear") return IndexStrategy::LinearScan;
  throw ParameterError("index must be 'tree' or 'linear'");
}

BetaMode beta_mode(const std::string& name) {
  if (name == "seed") return BetaMode::SeedRelative;
  if (name == "chained") return BetaMode::Chained;
  throw ParameterError("mode must be 'seed' or 'chained'");
}

double or_inf(const std::optional<double>& v) { return v.value_or(std::numeric_limits<double>::infinity()); }

}  // namespace

PYBIND11_MODULE(_dclust, m) {
  m.doc() = "Density-based clustering: DBSCAN, OPTICS, EnDBSCAN and neighbor-count variants";

  auto base = py::register_exception<Error>(m, "DclustError", PyExc_RuntimeError);
  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<MissingParameterError>(m, "MissingParameterError", m.attr("ParameterError"));
  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ContractError>(m, "ContractError", PyExc_ValueError);
  py::register_exception<NoKneeError>(m, "NoKneeError", base);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  m.def(
      "dbscan",
      [](const Points& points, double eps, std::size_t minpts, const std::string& index) {
        const Dataset d = to_dataset(points);
        return to_array(dbscan(d, {eps, minpts}, SpatialIndex::build(d, strategy(index))));
      },
      py::arg("points"), py::arg("eps"), py::arg("minpts"), py::arg("index") = "tree");

  m.def(
      "optics_order",
      [](const Points& points, double eps, std::size_t minpts) {
        const Dataset d = to_dataset(points);
        const auto o = optics_order(d, {eps, minpts}, SpatialIndex::build(d));
        py::array_t<std::int64_t> order(static_cast<py::ssize_t>(o.size()));
        py::array_t<double> reach(static_cast<py::ssize_t>(o.size())), core(static_cast<py::ssize_t>(o.size()));
        for (std::size_t i = 0; i < o.size(); ++i) {
          order.mutable_data()[i] = static_cast<std::int64_t>(o[i].point_id);
          reach.mutable_data()[i] = or_inf(o[i].reachability);
          core.mutable_data()[i] = or_inf(o[i].core_distance);
        }
        return py::make_tuple(order, reach, core);
      },
      py::arg("points"), py::arg("eps"), py::arg("minpts"),
      "Returns (order, reachability, core_distance) in ordering position; undefined distances are inf.");

  m.def(
      "optics",
      [](const Points& points, double eps, std::size_t minpts, std::optional<double> eps_prime,
         std::vector<double> levels, std::size_t min_cluster_size) {
        const Dataset d = to_dataset(points);
        const auto o = optics_order(d, {eps, minpts}, SpatialIndex::build(d));
        if (!levels.empty()) return to_array(extract_clusters_multilevel(o, levels, min_cluster_size));
        return to_array(extract_clusters(o, eps_prime.value_or(eps)));
      },
      py::arg("points"), py::arg("eps"), py::arg("minpts"), py::arg("eps_prime") = py::none(),
      py::arg("levels") = std::vector<double>{}, py::arg("min_cluster_size") = 1);

  m.def(
      "endbscan",
      [](const Points& points, double eps, std::size_t minpts, double beta, const std::string& mode) {
        const Dataset d = to_dataset(points);
        return to_array(endbscan(d, {eps, minpts, beta, beta_mode(mode)}, SpatialIndex::build(d)));
      },
      py::arg("points"), py::arg("eps"), py::arg("minpts"), py::arg("beta"), py::arg("mode") = "seed");

  m.def(
      "kdvariant",
      [](const Points& points, std::size_t minpts, std::size_t alpha, std::optional<double> eps) {
        const Dataset d = to_dataset(points);
        const auto r = kdvariant_run(d, {minpts, alpha, eps}, SpatialIndex::build(d));
        return py::make_tuple(to_array(r.labels), r.radius);
      },
      py::arg("points"), py::arg("minpts"), py::arg("alpha"), py::arg("eps") = py::none(),
      "Returns (labels, radius used).");

  m.def(
      "ndiff",
      [](const Points& points, double eps, std::size_t delta, std::size_t min_cluster_size) {
        const Dataset d = to_dataset(points);
        const Labeling l = ndiff_cluster(d, {eps, delta}, SpatialIndex::build(d));
        return to_array(min_cluster_size ? drop_small_clusters(l, min_cluster_size) : l);
      },
      py::arg("points"), py::arg("eps"), py::arg("delta"), py::arg("min_cluster_size") = 0);

  m.def(
      "k_distance_graph",
      [](const Points& points, std::size_t k) {
        const Dataset d = to_dataset(points);
        const auto g = k_distance_graph(d, k, SpatialIndex::build(d));
        return py::array_t<double>(static_cast<py::ssize_t>(g.sorted_distances.size()), g.sorted_distances.data());
      },
      py::arg("points"), py::arg("k"));

  m.def(
      "estimate_radius",
      [](const Points& points, std::size_t k) {
        const Dataset d = to_dataset(points);
        return estimate_radius(k_distance_graph(d, k, SpatialIndex::build(d)));
      },
      py::arg("points"), py::arg("k"));

  m.def(
      "adjusted_rand_index",
      [](const Tags& a, const Tags& b) {
        return adjusted_rand_index(std::span<const std::int32_t>(a.data(), static_cast<std::size_t>(a.size())),
                                   std::span<const std::int32_t>(b.data(), static_cast<std::size_t>(b.size())));
      },
      py::arg("a"), py::arg("b"));

  m.def(
      "generate",
      [](const std::string& shape, std::size_t n, std::uint64_t seed, std::optional<std::size_t> blob_count,
         std::optional<double> density_ratio, std::optional<double> noise_rate) {
        GenSpec spec;
        spec.shape = parse_shape(shape);
        spec.n = n;
        spec.seed = seed;
        spec.blob_count = blob_count;
        spec.density_ratio = density_ratio;
        spec.noise_rate = noise_rate;
        const Dataset d = generate(spec);
        return py::make_tuple(coords_array(d), truth_array(d));
      },
      py::arg("shape"), py::arg("n"), py::arg("seed") = 0, py::arg("blob_count") = py::none(),
      py::arg("density_ratio") = py::none(), py::arg("noise_rate") = py::none(),
      "Returns (points, truth) for shape 'blobs', 'varying' or 'embedded'.");

  m.def(
      "load",
      [](const std::string& path, const std::string& format) {
        const Dataset d = load(path, parse_format(format));
        return py::make_tuple(coords_array(d), truth_array(d));
      },
      py::arg("path"), py::arg("format") = "csv");

  m.def(
      "save",
      [](const std::string& path, const Points& points, std::optional<std::vector<int>> truth,
         const std::string& format) {
        const Dataset plain = to_dataset(points);
        const Dataset d(plain.dimension(), std::vector<double>(plain.raw_coords().begin(), plain.raw_coords().end()),
                        std::move(truth));
        save(validate(d), path, parse_format(format));
      },
      py::arg("path"), py::arg("points"), py::arg("truth") = py::none(), py::arg("format") = "csv");
}
