#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "poisongame/curve.hpp"
#include "poisongame/dataset.hpp"
#include "poisongame/geometry.hpp"
#include "poisongame/svm.hpp"

namespace poisongame {

enum class Direction { increasing, decreasing };

/// Least-squares monotone fit by pool-adjacent-violators. Percentiles are
/// kept as given. Needs at least 2 points with distinct percentiles.
PayoffCurve monotone_fit(std::span<const Knot> raw, Direction direction);

/// {0, 0.05, ..., 1}
std::vector<double> default_grid();

struct SweepOptions {
  TrainerConfig trainer;
  int trials = 5;
  std::uint64_t seed = 1;
  int jobs = 1;
};

struct CurveEstimate {
  std::vector<Knot> raw;  // trial means before fitting
  PayoffCurve fitted;
};

/// Gamma(theta): mean drop in test accuracy from filtering clean training
/// data at theta, clamped at 0, fitted non-increasing. Each trial trains the
/// filtered and unfiltered models with the same seed.
CurveEstimate estimate_gamma(const LabeledDataset& train, const LabeledDataset& test,
                             const ClassGeometry& geom, std::span<const double> grid,
                             const SweepOptions& options);

/// E(r): mean drop in test accuracy per poisoning point when n_poison points
/// are placed at percentile r and nothing is filtered, fitted non-decreasing.
CurveEstimate estimate_e(const LabeledDataset& train, const LabeledDataset& test,
                         const ClassGeometry& geom, std::span<const double> grid,
                         std::int64_t n_poison, const SweepOptions& options);

/// Two columns `percentile,value` after a one-line header.
void write_curve_csv(std::ostream& out, const PayoffCurve& curve);
PayoffCurve read_curve_csv(std::istream& in, const std::string& source);
PayoffCurve load_curve_csv(const std::filesystem::path& path);

}  // namespace poisongame
