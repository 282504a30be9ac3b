#include "poisongame/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace poisongame {

namespace {

constexpr double kSurvivalSlack = 1e-9;

double median(std::vector<double>& values) {
  const std::size_t n = values.size();
  const auto mid = values.begin() + static_cast<std::ptrdiff_t>(n / 2);
  std::nth_element(values.begin(), mid, values.end());
  const double upper = *mid;
  if (n % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), mid);
  return 0.5 * (lower + upper);
}

ClassShape build_shape(const LabeledDataset& data, int label, GeometryMode mode) {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data.label(i) != label) continue;
    if (mode == GeometryMode::clean && data.origin(i) != Origin::genuine) continue;
    rows.push_back(i);
  }
  if (rows.empty()) {
    throw std::invalid_argument("class_geometry: class " + std::to_string(label) +
                                " has no usable rows");
  }
  ClassShape shape;
  const std::size_t d = data.n_features();
  shape.centroid.resize(d);
  std::vector<double> column(rows.size());
  for (std::size_t c = 0; c < d; ++c) {
    for (std::size_t k = 0; k < rows.size(); ++k) column[k] = data.row(rows[k])[c];
    shape.centroid[c] = median(column);
  }
  shape.distances.reserve(rows.size());
  for (std::size_t i : rows) shape.distances.push_back(euclidean_distance(data.row(i), shape.centroid));
  std::sort(shape.distances.begin(), shape.distances.end());
  return shape;
}

}  // namespace

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return std::sqrt(s);
}

double ClassGeometry::radius_at(int label, double percentile) const {
  if (!(percentile >= 0.0 && percentile <= 1.0)) {
    throw std::invalid_argument("radius_at: percentile outside [0,1]");
  }
  const auto& dist = shape(label).distances;
  const double pos = percentile * static_cast<double>(dist.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  if (lo + 1 >= dist.size()) return dist.back();
  const double t = pos - static_cast<double>(lo);
  return dist[lo] + t * (dist[lo + 1] - dist[lo]);
}

ClassGeometry class_geometry(const LabeledDataset& train, GeometryMode mode) {
  return ClassGeometry(build_shape(train, 1, mode), build_shape(train, -1, mode));
}

LabeledDataset filter(const LabeledDataset& data, const ClassGeometry& geom, double theta) {
  if (!(theta >= 0.0 && theta <= 1.0)) throw std::invalid_argument("filter: theta outside [0,1]");
  const double cutoff_pos = geom.radius_at(1, theta) * (1.0 + kSurvivalSlack);
  const double cutoff_neg = geom.radius_at(-1, theta) * (1.0 + kSurvivalSlack);
  std::vector<std::size_t> keep;
  keep.reserve(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const int label = data.label(i);
    const double cutoff = label > 0 ? cutoff_pos : cutoff_neg;
    if (euclidean_distance(data.row(i), geom.centroid(label)) <= cutoff) keep.push_back(i);
  }
  auto out = data.subset(keep);
  for (int label : {1, -1}) {
    if (data.count(label) > 0 && out.count(label) == 0) {
      throw std::runtime_error("filter: theta " + std::to_string(theta) + " removes every row of class " +
                               std::to_string(label));
    }
  }
  return out;
}

}  // namespace poisongame
