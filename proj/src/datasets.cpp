#include "dclust/datasets.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <vector>

#include "dclust/spatial_index.hpp"
#include "dclust/text.hpp"

namespace dclust {

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal() {
    if (spare_) {
      const double v = *spare_;
      spare_.reset();
      return v;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double mag = std::sqrt(-2.0 * std::log(u1));
    spare_ = mag * std::sin(2.0 * std::numbers::pi * u2);
    return mag * std::cos(2.0 * std::numbers::pi * u2);
  }
  /// Uniform integer in [0, bound) by rejection, free of modulo bias.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % bound;
  }

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

struct Builder {
  std::vector<double> coords;
  std::vector<int> truth;

  void add(double x, double y, int label) {
    coords.push_back(x);
    coords.push_back(y);
    truth.push_back(label);
  }
  // Uniform in the annulus lo <= r <= hi around (cx, cy); lo = 0 gives a disk.
  void annulus(Rng& rng, std::size_t count, double cx, double cy, double lo, double hi, int label) {
    for (std::size_t i = 0; i < count; ++i) {
      const double r = std::sqrt(lo * lo + rng.uniform() * (hi * hi - lo * lo));
      const double t = 2.0 * std::numbers::pi * rng.uniform();
      add(cx + r * std::cos(t), cy + r * std::sin(t), label);
    }
  }
  // Uniform over the bounding box grown by `margin` of its extent on every
  // side, skipping points for which `inside` holds (the cluster supports).
  template <typename Inside>
  void background(Rng& rng, std::size_t count, double margin, Inside inside) {
    if (count == 0) return;
    double lo_x = INFINITY, lo_y = INFINITY, hi_x = -INFINITY, hi_y = -INFINITY;
    for (std::size_t i = 0; i < coords.size(); i += 2) {
      lo_x = std::min(lo_x, coords[i]);
      hi_x = std::max(hi_x, coords[i]);
      lo_y = std::min(lo_y, coords[i + 1]);
      hi_y = std::max(hi_y, coords[i + 1]);
    }
    const double pad = margin * std::max(hi_x - lo_x, hi_y - lo_y);
    for (std::size_t i = 0; i < count;) {
      const double x = rng.uniform(lo_x - pad, hi_x + pad), y = rng.uniform(lo_y - pad, hi_y + pad);
      if (inside(x, y)) continue;
      add(x, y, -1);
      ++i;
    }
  }
  void background(Rng& rng, std::size_t count) {
    background(rng, count, 0.05, [](double, double) { return false; });
  }
  Dataset finish(Rng& rng) {
    // Shuffle so point ids carry no information about the generating region.
    const std::size_t n = truth.size();
    for (std::size_t i = n; i > 1; --i) {
      const std::size_t j = rng.below(i);
      std::swap(truth[i - 1], truth[j]);
      std::swap(coords[2 * (i - 1)], coords[2 * j]);
      std::swap(coords[2 * (i - 1) + 1], coords[2 * j + 1]);
    }
    return Dataset(2, std::move(coords), std::move(truth));
  }
};

std::vector<std::size_t> split_evenly(std::size_t total, std::size_t parts) {
  std::vector<std::size_t> out(parts, total / parts);
  for (std::size_t i = 0; i < total % parts; ++i) ++out[i];
  return out;
}

std::vector<PointId> with_label(const Dataset& d, int label) {
  std::vector<PointId> ids;
  for (PointId i = 0; i < d.size(); ++i) {
    if ((*d.truth())[i] == label) ids.push_back(i);
  }
  return ids;
}

void check_blobs(const Dataset& d) {
  const auto ix = SpatialIndex::build(d);
  const auto& truth = *d.truth();
  double loosest = 0.0;
  for (PointId p = 0; p < d.size(); ++p) loosest = std::max(loosest, ix.kth_neighbor_distance(p, 2));
  for (PointId p = 0; p < d.size(); ++p) {
    for (const PointId q : ix.range_query(p, 1.5 * loosest)) {
      if (truth[q] != truth[p]) {
        throw ParameterError("blobs are not separated: cross-blob distance below 1.5x the largest "
                             "within-blob nearest-neighbor distance; use fewer blobs or more points");
      }
    }
  }
}

Dataset make_blobs(const GenSpec& s, Rng& rng) {
  const std::size_t k = s.effective_blob_count();
  const std::size_t noise = static_cast<std::size_t>(std::llround(s.effective_noise_rate() * double(s.n)));
  const auto counts = split_evenly(s.n - noise, k);
  // Unit-variance blobs with neighboring centers at least 14 sigma apart.
  const double ring = k == 1 ? 0.0 : 7.0 / std::sin(std::numbers::pi / double(k));
  Builder b;
  for (std::size_t c = 0; c < k; ++c) {
    const double t = 2.0 * std::numbers::pi * double(c) / double(k);
    const double cx = ring * std::cos(t), cy = ring * std::sin(t);
    for (std::size_t i = 0; i < counts[c]; ++i) {
      const double x = rng.normal(), y = rng.normal();
      b.add(cx + x, cy + y, static_cast<int>(c));
    }
  }
  b.background(rng, noise);
  Dataset d = b.finish(rng);
  if (noise == 0) check_blobs(d);
  return d;
}

Dataset make_varying_density(const GenSpec& s, Rng& rng) {
  const std::size_t k = s.effective_blob_count();
  const std::size_t noise = static_cast<std::size_t>(std::llround(s.effective_noise_rate() * double(s.n)));
  const auto counts = split_evenly(s.n - noise, k);
  // Dense disks of radius 1; sparse disks scaled so that spacing grows by
  // density_ratio at equal point counts.
  const double dense_r = 1.0;
  const double sparse_r = dense_r * s.effective_density_ratio();
  const double dense_spacing = dense_r * std::sqrt(std::numbers::pi / double(counts[0]));
  // The two dense disks sit three dense spacings apart, closer than the
  // spacing inside a sparse disk.
  const double gap = 3.0 * dense_spacing;
  Builder b;
  b.annulus(rng, counts[0], 0.0, 0.0, 0.0, dense_r, 0);
  b.annulus(rng, counts[1], 2.0 * dense_r + gap, 0.0, 0.0, dense_r, 1);
  const double row_y = -(dense_r + sparse_r + 3.0 * sparse_r / 5.0);
  struct Disk {
    double x, y, r;
  };
  std::vector<Disk> disks{{0.0, 0.0, dense_r}, {2.0 * dense_r + gap, 0.0, dense_r}};
  for (std::size_t c = 2; c < k; ++c) {
    const double cx = double(c - 2) * (2.0 * sparse_r + 3.0 * sparse_r / 5.0);
    b.annulus(rng, counts[c], cx, row_y, 0.0, sparse_r, static_cast<int>(c));
    disks.push_back({cx, row_y, sparse_r});
  }
  b.background(rng, noise, 0.05, [&](double x, double y) {
    return std::any_of(disks.begin(), disks.end(),
                       [&](const Disk& c) { return std::hypot(x - c.x, y - c.y) <= c.r; });
  });
  Dataset d = b.finish(rng);

  std::vector<PointId> dense = with_label(d, 0), sparse;
  const auto second = with_label(d, 1);
  dense.insert(dense.end(), second.begin(), second.end());
  for (std::size_t c = 2; c < k; ++c) {
    const auto ids = with_label(d, static_cast<int>(c));
    sparse.insert(sparse.end(), ids.begin(), ids.end());
  }
  const double ratio = mean_nearest_neighbor_distance(d, sparse) / mean_nearest_neighbor_distance(d, dense);
  if (ratio < 0.9 * s.effective_density_ratio()) {
    throw ParameterError("varying-density sample has spacing ratio " + format_double(ratio) + ", expected about " +
                         format_double(s.effective_density_ratio()) + "; increase n");
  }
  return d;
}

Dataset make_embedded(const GenSpec& s, Rng& rng) {
  const auto [r1, r2, r3] = s.shell_radii;
  const double q = s.effective_density_ratio();
  const double areas[3] = {r1 * r1, r2 * r2 - r1 * r1, r3 * r3 - r2 * r2};
  const double density[3] = {q * q, q, 1.0};
  const std::size_t noise = static_cast<std::size_t>(std::llround(s.effective_noise_rate() * double(s.n)));
  const double weight_total = areas[0] * density[0] + areas[1] * density[1] + areas[2] * density[2];
  std::size_t counts[3];
  std::size_t assigned = 0;
  for (int i = 0; i < 2; ++i) {
    counts[i] = static_cast<std::size_t>(std::llround(double(s.n - noise) * areas[i] * density[i] / weight_total));
    assigned += counts[i];
  }
  counts[2] = s.n - noise - assigned;
  Builder b;
  b.annulus(rng, counts[0], 0.0, 0.0, 0.0, r1, 0);
  b.annulus(rng, counts[1], 0.0, 0.0, r1, r2, 1);
  b.annulus(rng, counts[2], 0.0, 0.0, r2, r3, 2);
  b.background(rng, noise, 0.25, [r3 = r3](double x, double y) { return std::hypot(x, y) <= r3; });
  Dataset d = b.finish(rng);

  double previous = 0.0;
  for (int region = 0; region < 3; ++region) {
    const double m = mean_nearest_neighbor_distance(d, with_label(d, region));
    if (!(m > previous)) {
      throw ParameterError("embedded sample lacks outward-decreasing density (region " + std::to_string(region) +
                           "); increase n or density_ratio");
    }
    previous = m;
  }
  return d;
}

}  // namespace

std::size_t GenSpec::minimum_n() const {
  const double keep = 1.0 - effective_noise_rate();
  const std::size_t clusters = shape == Shape::EmbeddedNested ? 3 : effective_blob_count();
  // Every cluster needs at least three points after the noise share.
  return static_cast<std::size_t>(std::ceil(3.0 * double(clusters) / std::max(keep, 1e-9)));
}

void GenSpec::check() const {
  const double rate = effective_noise_rate();
  if (!(rate >= 0.0 && rate < 1.0)) throw ParameterError("noise rate must lie in [0, 1)");
  if (shape == Shape::Blobs && effective_blob_count() < 1) throw ParameterError("blobs need blob_count >= 1");
  if (shape == Shape::VaryingDensity && effective_blob_count() < 3) {
    throw ParameterError("varying density needs blob_count >= 3 (two dense disks and at least one sparse)");
  }
  if (shape != Shape::Blobs && !(effective_density_ratio() > 1.0)) throw ParameterError("density_ratio must exceed 1");
  if (shape == Shape::EmbeddedNested &&
      !(shell_radii[0] > 0.0 && shell_radii[0] < shell_radii[1] && shell_radii[1] < shell_radii[2])) {
    throw ParameterError("shell radii must be positive and strictly increasing");
  }
  if (n < minimum_n()) {
    throw ParameterError("n = " + std::to_string(n) + " is below the minimum of " + std::to_string(minimum_n()) +
                         " for shape " + shape_name(shape));
  }
}

Dataset generate(const GenSpec& spec) {
  spec.check();
  Rng rng(spec.seed);
  switch (spec.shape) {
    case Shape::Blobs:
      return make_blobs(spec, rng);
    case Shape::VaryingDensity:
      return make_varying_density(spec, rng);
    case Shape::EmbeddedNested:
      return make_embedded(spec, rng);
  }
  throw ParameterError("unknown shape");
}

Shape parse_shape(const std::string& name) {
  if (name == "blobs") return Shape::Blobs;
  if (name == "varying" || name == "varying-density") return Shape::VaryingDensity;
  if (name == "embedded" || name == "embedded-nested") return Shape::EmbeddedNested;
  throw ParameterError("unknown shape '" + name + "' (expected blobs, varying, embedded)");
}

std::string shape_name(Shape s) {
  switch (s) {
    case Shape::Blobs:
      return "blobs";
    case Shape::VaryingDensity:
      return "varying";
    case Shape::EmbeddedNested:
      return "embedded";
  }
  return "?";
}

FileFormat parse_format(const std::string& name) {
  if (name == "csv") return FileFormat::Csv;
  if (name == "arff") return FileFormat::Arff;
  throw ParameterError("unknown format '" + name + "' (expected csv or arff)");
}

double mean_nearest_neighbor_distance(const Dataset& d, std::span<const PointId> ids) {
  if (ids.empty() || d.size() < 2) return 0.0;
  const auto ix = SpatialIndex::build(d);
  double sum = 0.0;
  for (const PointId p : ids) sum += ix.kth_neighbor_distance(p, 2);
  return sum / double(ids.size());
}

std::string coordinate_name(std::size_t axis, std::size_t dimension) {
  static const char* const kNames[] = {"x", "y", "z"};
  if (dimension <= 3) return kNames[axis];
  return "x" + std::to_string(axis);
}

// ---------------------------------------------------------------- CSV

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_coordinate(std::string_view cell, std::size_t line) {
  const auto v = parse_double(cell);
  if (!v) throw ParseError(line, "non-numeric coordinate '" + std::string(cell) + "'");
  return *v;
}

int parse_label(std::string_view cell, std::size_t line) {
  const auto v = parse_double(cell);
  if (!v || !std::isfinite(*v) || *v != std::floor(*v)) {
    throw ParseError(line, "label '" + std::string(cell) + "' is not an integer");
  }
  return static_cast<int>(*v);
}

// Coordinates are checked for NaN/inf here so the error carries the line.
void reject_non_finite(const std::vector<double>& row, std::size_t line) {
  for (const double v : row) {
    if (!std::isfinite(v)) {
      throw DataError(DataError::Kind::NonFinite,
                      "line " + std::to_string(line) + ": " + (std::isnan(v) ? "NaN" : "infinite") + " coordinate");
    }
  }
}

}  // namespace

Dataset read_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::vector<double>> rows;
  std::vector<int> truth;
  bool has_label = false;
  std::optional<std::size_t> columns;
  bool any_line = false;

  while (std::getline(in, line)) {
    ++line_no;
    const auto text = trim(line);
    if (text.empty()) continue;
    const auto cells = split(text, ',');
    if (!any_line) {
      any_line = true;
      if (!parse_double(cells.front())) {
        // Header row.
        columns = cells.size();
        has_label = cells.back() == "label";
        if (has_label && cells.size() < 2) throw ParseError(line_no, "header has a label column but no coordinates");
        continue;
      }
    }
    if (!columns) columns = cells.size();
    if (cells.size() != *columns) {
      throw ParseError(line_no, "expected " + std::to_string(*columns) + " fields, found " + std::to_string(cells.size()));
    }
    const std::size_t ncoord = has_label ? cells.size() - 1 : cells.size();
    std::vector<double> row;
    row.reserve(ncoord);
    for (std::size_t i = 0; i < ncoord; ++i) row.push_back(parse_coordinate(cells[i], line_no));
    reject_non_finite(row, line_no);
    rows.push_back(std::move(row));
    if (has_label) truth.push_back(parse_label(cells.back(), line_no));
  }
  if (!any_line) throw DataError(DataError::Kind::Empty, "empty CSV input");
  if (rows.empty()) {
    const std::size_t dim = columns ? *columns - (has_label ? 1 : 0) : 0;
    return Dataset(dim, {}, has_label ? std::optional<std::vector<int>>(std::vector<int>{}) : std::nullopt);
  }
  Dataset d = Dataset::from_rows(rows, has_label ? std::optional(std::move(truth)) : std::nullopt);
  validate(d);
  return d;
}

void write_csv(std::ostream& out, const Dataset& d) {
  for (std::size_t a = 0; a < d.dimension(); ++a) out << (a ? "," : "") << coordinate_name(a, d.dimension());
  if (d.has_truth()) out << (d.dimension() ? "," : "") << "label";
  out << '\n';
  for (PointId p = 0; p < d.size(); ++p) {
    const auto c = d.coords_of(p);
    for (std::size_t a = 0; a < c.size(); ++a) out << (a ? "," : "") << format_double(c[a]);
    if (d.has_truth()) out << ',' << (*d.truth())[p];
    out << '\n';
  }
}

// ---------------------------------------------------------------- ARFF

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view unquote(std::string_view s) {
  s = trim(s);
  if (s.size() >= 2 && (s.front() == '\'' || s.front() == '"') && s.back() == s.front()) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

struct ArffAttribute {
  std::string name;
  bool numeric = true;
  std::map<std::string, int> nominal;  // value -> truth label
};

// Nominal values that are all integers keep their value; otherwise they are
// numbered in declaration order, with "noise" mapped to -1.
std::map<std::string, int> nominal_labels(const std::vector<std::string>& values) {
  std::map<std::string, int> out;
  bool all_int = true;
  for (const auto& v : values) {
    const auto num = parse_double(v);
    if (!num || *num != std::floor(*num)) all_int = false;
  }
  int next = 0;
  for (const auto& v : values) {
    if (all_int) {
      out[v] = static_cast<int>(*parse_double(v));
    } else if (lower(v) == "noise") {
      out[v] = -1;
    } else {
      out[v] = next++;
    }
  }
  return out;
}

ArffAttribute parse_attribute(std::string_view rest, std::size_t line_no) {
  rest = trim(rest);
  ArffAttribute attr;
  std::size_t name_end;
  if (!rest.empty() && (rest.front() == '\'' || rest.front() == '"')) {
    name_end = rest.find(rest.front(), 1);
    if (name_end == std::string_view::npos) throw ParseError(line_no, "unterminated attribute name");
    attr.name = std::string(rest.substr(1, name_end - 1));
    ++name_end;
  } else {
    name_end = rest.find_first_of(" \t");
    if (name_end == std::string_view::npos) throw ParseError(line_no, "attribute without a type");
    attr.name = std::string(rest.substr(0, name_end));
  }
  const auto type = trim(rest.substr(name_end));
  if (!type.empty() && type.front() == '{') {
    const auto close = type.find('}');
    if (close == std::string_view::npos) throw ParseError(line_no, "unterminated nominal value list");
    std::vector<std::string> values;
    for (const auto v : split(type.substr(1, close - 1), ',')) values.emplace_back(unquote(v));
    attr.numeric = false;
    attr.nominal = nominal_labels(values);
    return attr;
  }
  const auto t = lower(type);
  if (t != "numeric" && t != "real" && t != "integer") {
    throw ParseError(line_no, "unsupported attribute type '" + std::string(type) + "'");
  }
  return attr;
}

}  // namespace

Dataset read_arff(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<ArffAttribute> attrs;
  bool in_data = false;
  bool any = false;
  std::vector<std::vector<double>> rows;
  std::vector<int> truth;
  bool has_class = false;

  while (std::getline(in, line)) {
    ++line_no;
    const auto text = trim(line);
    if (text.empty() || text.front() == '%') continue;
    any = true;
    if (!in_data) {
      if (text.front() != '@') throw ParseError(line_no, "expected an @ directive before @data");
      const auto space = text.find_first_of(" \t");
      const auto keyword = lower(text.substr(0, space));
      const auto rest = space == std::string_view::npos ? std::string_view{} : text.substr(space);
      if (keyword == "@relation") continue;
      if (keyword == "@attribute") {
        if (!attrs.empty() && !attrs.back().numeric) {
          throw ParseError(line_no, "only the last attribute may be nominal");
        }
        attrs.push_back(parse_attribute(rest, line_no));
        continue;
      }
      if (keyword == "@data") {
        if (attrs.empty()) throw ParseError(line_no, "@data before any @attribute");
        has_class = !attrs.back().numeric;
        if (has_class && attrs.size() < 2) throw ParseError(line_no, "no numeric attributes");
        in_data = true;
        continue;
      }
      throw ParseError(line_no, "unknown directive '" + std::string(keyword) + "'");
    }
    const auto cells = split(text, ',');
    if (cells.size() != attrs.size()) {
      throw ParseError(line_no, "expected " + std::to_string(attrs.size()) + " values, found " + std::to_string(cells.size()));
    }
    const std::size_t ncoord = has_class ? attrs.size() - 1 : attrs.size();
    std::vector<double> row;
    row.reserve(ncoord);
    for (std::size_t i = 0; i < ncoord; ++i) row.push_back(parse_coordinate(cells[i], line_no));
    reject_non_finite(row, line_no);
    rows.push_back(std::move(row));
    if (has_class) {
      const auto value = std::string(unquote(cells.back()));
      const auto it = attrs.back().nominal.find(value);
      if (it == attrs.back().nominal.end()) throw ParseError(line_no, "undeclared class value '" + value + "'");
      truth.push_back(it->second);
    }
  }
  if (!any) throw DataError(DataError::Kind::Empty, "empty ARFF input");
  if (!in_data) throw ParseError(line_no, "missing @data section");
  if (rows.empty()) {
    const std::size_t dim = has_class ? attrs.size() - 1 : attrs.size();
    return Dataset(dim, {}, has_class ? std::optional<std::vector<int>>(std::vector<int>{}) : std::nullopt);
  }
  Dataset d = Dataset::from_rows(rows, has_class ? std::optional(std::move(truth)) : std::nullopt);
  validate(d);
  return d;
}

void write_arff(std::ostream& out, const Dataset& d, const std::string& relation) {
  out << "@relation " << relation << "\n\n";
  for (std::size_t a = 0; a < d.dimension(); ++a) out << "@attribute " << coordinate_name(a, d.dimension()) << " numeric\n";
  if (d.has_truth()) {
    std::vector<int> values(d.truth()->begin(), d.truth()->end());
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    out << "@attribute class {";
    for (std::size_t i = 0; i < values.size(); ++i) out << (i ? "," : "") << values[i];
    out << "}\n";
  }
  out << "\n@data\n";
  for (PointId p = 0; p < d.size(); ++p) {
    const auto c = d.coords_of(p);
    for (std::size_t a = 0; a < c.size(); ++a) out << (a ? "," : "") << format_double(c[a]);
    if (d.has_truth()) out << ',' << (*d.truth())[p];
    out << '\n';
  }
}

Dataset load(const std::string& path, FileFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return format == FileFormat::Csv ? read_csv(in) : read_arff(in);
}

void save(const Dataset& d, const std::string& path, FileFormat format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  if (format == FileFormat::Csv) {
    write_csv(out, d);
  } else {
    write_arff(out, d);
  }
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace dclust
