#include "poisongame/curves.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <stdexcept>
#include <string_view>

#include "poisongame/attack.hpp"
#include "poisongame/game.hpp"
#include "poisongame/parallel.hpp"
#include "poisongame/rng.hpp"
#include "poisongame/text.hpp"

namespace poisongame {

PayoffCurve monotone_fit(std::span<const Knot> raw, Direction direction) {
  if (raw.size() < 2) throw std::invalid_argument("monotone_fit: need at least 2 points");
  std::vector<Knot> pts(raw.begin(), raw.end());
  std::sort(pts.begin(), pts.end(),
            [](const Knot& a, const Knot& b) { return a.percentile < b.percentile; });
  const double sign = direction == Direction::increasing ? 1.0 : -1.0;

  struct Block {
    double sum;
    std::size_t count;
    double mean() const { return sum / static_cast<double>(count); }
  };
  std::vector<Block> blocks;
  for (const auto& p : pts) {
    blocks.push_back({sign * p.value, 1});
    while (blocks.size() > 1 && blocks[blocks.size() - 2].mean() > blocks.back().mean()) {
      const Block top = blocks.back();
      blocks.pop_back();
      blocks.back().sum += top.sum;
      blocks.back().count += top.count;
    }
  }
  std::size_t i = 0;
  for (const auto& b : blocks) {
    const double v = sign * b.mean();
    for (std::size_t k = 0; k < b.count; ++k) pts[i++].value = v;
  }
  return PayoffCurve(std::move(pts));
}

std::vector<double> default_grid() { return uniform_grid(21); }

namespace {

void check_sweep(std::span<const double> grid, const SweepOptions& options) {
  if (grid.size() < 2) throw std::invalid_argument("sweep grid needs at least 2 points");
  if (!std::is_sorted(grid.begin(), grid.end())) {
    throw std::invalid_argument("sweep grid must be sorted");
  }
  if (options.trials < 1) throw std::invalid_argument("trials must be >= 1");
  options.trainer.validate();
}

TrainerConfig trial_trainer(const SweepOptions& options, std::size_t trial) {
  TrainerConfig cfg = options.trainer;
  cfg.seed = rng::derive_seed(options.seed, trial);
  return cfg;
}

// Baseline accuracy per trial, unfiltered and unpoisoned.
std::vector<double> baselines(const LabeledDataset& train, const LabeledDataset& test,
                              const SweepOptions& options) {
  return parallel_map(static_cast<std::size_t>(options.trials), options.jobs, [&](std::size_t t) {
    return accuracy(train_svm(train, trial_trainer(options, t)), test);
  });
}

}  // namespace

CurveEstimate estimate_gamma(const LabeledDataset& train, const LabeledDataset& test,
                             const ClassGeometry& geom, std::span<const double> grid,
                             const SweepOptions& options) {
  check_sweep(grid, options);
  const auto base = baselines(train, test, options);
  const auto trials = static_cast<std::size_t>(options.trials);
  const auto acc = parallel_map(grid.size() * trials, options.jobs, [&](std::size_t cell) {
    const std::size_t g = cell / trials;
    const std::size_t t = cell % trials;
    return accuracy(train_svm(filter(train, geom, grid[g]), trial_trainer(options, t)), test);
  });
  std::vector<Knot> raw;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    double drop = 0.0;
    for (std::size_t t = 0; t < trials; ++t) drop += base[t] - acc[g * trials + t];
    raw.push_back({grid[g], std::max(0.0, drop / static_cast<double>(trials))});
  }
  return {raw, monotone_fit(raw, Direction::decreasing)};
}

CurveEstimate estimate_e(const LabeledDataset& train, const LabeledDataset& test,
                         const ClassGeometry& geom, std::span<const double> grid,
                         std::int64_t n_poison, const SweepOptions& options) {
  if (n_poison <= 0) throw std::invalid_argument("estimate_e: n_poison must be > 0");
  check_sweep(grid, options);
  const auto base = baselines(train, test, options);
  const auto trials = static_cast<std::size_t>(options.trials);
  const auto acc = parallel_map(grid.size() * trials, options.jobs, [&](std::size_t cell) {
    const std::size_t g = cell / trials;
    const std::size_t t = cell % trials;
    const auto poisoned = craft_attack(train, geom, AttackPlan::single(grid[g], n_poison),
                                       rng::derive_seed(rng::derive_seed(options.seed, t), 2));
    return accuracy(train_svm(poisoned, trial_trainer(options, t)), test);
  });
  std::vector<Knot> raw;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    double drop = 0.0;
    for (std::size_t t = 0; t < trials; ++t) drop += base[t] - acc[g * trials + t];
    raw.push_back({grid[g], drop / static_cast<double>(trials) / static_cast<double>(n_poison)});
  }
  return {raw, monotone_fit(raw, Direction::increasing)};
}

void write_curve_csv(std::ostream& out, const PayoffCurve& curve) {
  out << "percentile,value\n";
  for (const auto& k : curve.knots()) {
    out << format_number(k.percentile) << ',' << format_number(k.value) << '\n';
  }
}

namespace {

double parse_cell(std::string_view cell, const std::string& source, std::size_t line) {
  while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) cell.remove_prefix(1);
  while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t' || cell.back() == '\r')) {
    cell.remove_suffix(1);
  }
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size()) {
    throw std::runtime_error(source + ":" + std::to_string(line) + ": bad number '" +
                             std::string(cell) + "'");
  }
  return v;
}

}  // namespace

PayoffCurve read_curve_csv(std::istream& in, const std::string& source) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(source + ": empty curve file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "percentile,value") {
    throw std::runtime_error(source + ":1: expected header 'percentile,value'");
  }
  std::vector<Knot> knots;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      throw std::runtime_error(source + ":" + std::to_string(line_no) + ": expected 2 columns");
    }
    const std::string_view view(line);
    knots.push_back({parse_cell(view.substr(0, comma), source, line_no),
                     parse_cell(view.substr(comma + 1), source, line_no)});
  }
  try {
    return PayoffCurve(std::move(knots));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(source + ": " + e.what());
  }
}

PayoffCurve load_curve_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open curve file: " + path.string());
  return read_curve_csv(in, path.string());
}

}  // namespace poisongame
