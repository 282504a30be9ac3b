#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "poisongame/curves.hpp"
#include "poisongame/dataset.hpp"
#include "poisongame/equilibrium.hpp"
#include "poisongame/game.hpp"
#include "poisongame/geometry.hpp"
#include "poisongame/matrix_oracle.hpp"
#include "poisongame/scenario.hpp"

namespace poisongame::cli {

/// Data loaded once and shared by the simulation commands.
struct Experiment {
  Split split;
  ClassGeometry geometry;
};

Experiment load_experiment(const std::filesystem::path& data, std::uint64_t seed);

struct SweepRow {
  double removal_fraction;
  double accuracy_clean;
  double accuracy_attacked;
};

/// One row per grid radius theta, ordered by removal fraction 1 - theta.
/// The attacked column adds n_poison points at 0.99 * theta.
std::vector<SweepRow> run_sweep(const Experiment& ex, std::span<const double> grid,
                                std::int64_t n_poison, const SweepOptions& options);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

struct OracleComparison {
  double solver_loss;
  MatrixGameSolution oracle;
  /// Distance of solver_loss outside [value_lower, value_upper], relative to
  /// value_upper. Zero when inside.
  double relative_gap;
};

OracleComparison compare_with_oracle(const PayoffCurve& e, const PayoffCurve& gamma,
                                     const SolveReport& report, std::int64_t n_poison,
                                     std::size_t grid_size, std::int64_t iterations);

struct PureResult {
  double theta;
  ScenarioResult result;
};

struct Evaluation {
  ScenarioResult mixed;
  std::vector<PureResult> pure;

  double best_pure_accuracy() const;
};

/// Mixed defense against all points at 0.99 * its smallest radius, and each
/// pure grid radius theta against all points at 0.99 * theta.
Evaluation run_evaluation(const Experiment& ex, const MixedDefense& mix,
                          std::span<const double> pure_grid, std::int64_t n_poison,
                          const SweepOptions& options);
void write_evaluation_trials(std::ostream& out, const Evaluation& ev);
void write_evaluation_summary(std::ostream& out, const Evaluation& ev);

/// Full command-line entry point. Returns the process exit status: 0 on
/// success, 1 on a contract or threshold failure, 2 on a usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace poisongame::cli
