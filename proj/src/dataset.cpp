#include "poisongame/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <string_view>

#include "poisongame/rng.hpp"

namespace poisongame {

void LabeledDataset::add(std::span<const double> features, int label, Origin origin) {
  if (labels_.empty() && n_features_ == 0) n_features_ = features.size();
  if (features.size() != n_features_) {
    throw std::invalid_argument("LabeledDataset::add: expected " + std::to_string(n_features_) +
                                " features, got " + std::to_string(features.size()));
  }
  if (label != 1 && label != -1) {
    throw std::invalid_argument("LabeledDataset::add: label must be +1 or -1");
  }
  for (double x : features) {
    if (!std::isfinite(x)) throw std::invalid_argument("LabeledDataset::add: non-finite feature");
  }
  features_.insert(features_.end(), features.begin(), features.end());
  labels_.push_back(label);
  origins_.push_back(origin);
}

std::size_t LabeledDataset::count(int label) const {
  return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), label));
}

std::size_t LabeledDataset::count(Origin origin) const {
  return static_cast<std::size_t>(std::count(origins_.begin(), origins_.end(), origin));
}

LabeledDataset LabeledDataset::subset(std::span<const std::size_t> indices) const {
  LabeledDataset out(n_features_);
  out.features_.reserve(indices.size() * n_features_);
  for (std::size_t i : indices) {
    const auto r = row(i);
    out.features_.insert(out.features_.end(), r.begin(), r.end());
    out.labels_.push_back(labels_[i]);
    out.origins_.push_back(origins_[i]);
  }
  return out;
}

LabeledDataset LabeledDataset::concat(const LabeledDataset& other) const {
  if (!other.empty() && !empty() && other.n_features_ != n_features_) {
    throw std::invalid_argument("LabeledDataset::concat: feature count mismatch");
  }
  LabeledDataset out = *this;
  if (out.empty() && out.n_features_ == 0) out.n_features_ = other.n_features_;
  out.features_.insert(out.features_.end(), other.features_.begin(), other.features_.end());
  out.labels_.insert(out.labels_.end(), other.labels_.begin(), other.labels_.end());
  out.origins_.insert(out.origins_.end(), other.origins_.begin(), other.origins_.end());
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void parse_error(const std::string& source, std::size_t line, const std::string& msg) {
  throw std::runtime_error(source + ":" + std::to_string(line) + ": " + msg);
}

}  // namespace

LabeledDataset parse_csv(std::istream& in, const std::string& source) {
  LabeledDataset data;
  std::string line;
  std::size_t line_no = 0;
  std::size_t expected_cols = 0;
  std::vector<double> cells;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    cells.clear();
    std::string_view rest = line;
    std::size_t col = 0;
    for (;;) {
      ++col;
      const auto comma = rest.find(',');
      const auto cell = trim(rest.substr(0, comma));
      double value = 0.0;
      const auto* end = cell.data() + cell.size();
      const auto [ptr, ec] = std::from_chars(cell.data(), end, value);
      if (cell.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
        parse_error(source, line_no,
                    "row " + std::to_string(data.size() + 1) + ", column " + std::to_string(col) +
                        ": non-numeric cell '" + std::string(cell) + "'");
      }
      cells.push_back(value);
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    if (cells.size() < 2) parse_error(source, line_no, "need at least one feature and a label");
    if (expected_cols == 0) expected_cols = cells.size();
    if (cells.size() != expected_cols) {
      parse_error(source, line_no,
                  "expected " + std::to_string(expected_cols) + " columns, found " +
                      std::to_string(cells.size()));
    }
    const double cls = cells.back();
    if (cls != 0.0 && cls != 1.0) {
      parse_error(source, line_no, "class label must be 0 or 1");
    }
    data.add(std::span<const double>(cells.data(), cells.size() - 1), cls == 1.0 ? 1 : -1);
  }
  if (data.size() < 2) throw std::runtime_error(source + ": need at least 2 rows");
  return data;
}

LabeledDataset load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open data file: " + path.string());
  return parse_csv(in, path.string());
}

void apply_normalization(LabeledDataset& data, const NormStats& stats) {
  for (std::size_t i = 0; i < data.size(); ++i) {
    auto r = data.row(i);
    for (std::size_t c = 0; c < r.size(); ++c) r[c] = (r[c] - stats.mean[c]) / stats.scale[c];
  }
}

Split normalize_and_split(const LabeledDataset& data, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw std::invalid_argument("normalize_and_split: train_fraction must lie in (0,1)");
  }
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng::Engine engine(seed);
  rng::shuffle(order, engine);
  const auto n_train =
      static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(data.size())));
  const std::span<const std::size_t> all(order);
  Split split{data.subset(all.first(n_train)), data.subset(all.subspan(n_train)), {}};

  const std::size_t d = data.n_features();
  NormStats& stats = split.stats;
  stats.mean.assign(d, 0.0);
  stats.scale.assign(d, 1.0);
  const double n = static_cast<double>(split.train.size());
  for (std::size_t i = 0; i < split.train.size(); ++i) {
    const auto r = split.train.row(i);
    for (std::size_t c = 0; c < d; ++c) stats.mean[c] += r[c];
  }
  for (auto& m : stats.mean) m /= n;
  std::vector<double> var(d, 0.0);
  for (std::size_t i = 0; i < split.train.size(); ++i) {
    const auto r = split.train.row(i);
    for (std::size_t c = 0; c < d; ++c) var[c] += (r[c] - stats.mean[c]) * (r[c] - stats.mean[c]);
  }
  for (std::size_t c = 0; c < d; ++c) {
    const double sd = std::sqrt(var[c] / n);
    if (sd > 1e-12 * std::max(1.0, std::fabs(stats.mean[c]))) stats.scale[c] = sd;
  }
  apply_normalization(split.train, stats);
  apply_normalization(split.test, stats);
  return split;
}

}  // namespace poisongame
