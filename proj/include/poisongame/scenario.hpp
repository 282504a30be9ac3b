#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <variant>
#include <vector>

#include "poisongame/dataset.hpp"
#include "poisongame/game.hpp"
#include "poisongame/geometry.hpp"
#include "poisongame/svm.hpp"

namespace poisongame {

using Defense = std::variant<std::monostate, DefenseRadius, MixedDefense>;

struct ScenarioOptions {
  std::optional<AttackPlan> attack;
  Defense defense;
  TrainerConfig trainer;
  int trials = 1;
  std::uint64_t seed = 1;
  int jobs = 1;
  /// realistic: the defender recomputes geometry from the poisoned set.
  GeometryMode defender_geometry = GeometryMode::clean;
};

struct TrialRecord {
  int trial;
  std::optional<double> theta;  // empty when no filter was applied
  bool attacked;
  double accuracy;
};

struct ScenarioResult {
  double mean_accuracy;
  std::vector<TrialRecord> trials;
};

/// Per trial: draw theta (mixed defense), add the attack, filter, train and
/// score on the untouched test set. Trial t uses seeds derived from
/// (seed, t) only, so results are independent of `jobs`.
ScenarioResult evaluate_scenario(const LabeledDataset& train, const LabeledDataset& test,
                                 const ClassGeometry& geom, const ScenarioOptions& options);

/// Header `trial,theta,attacked,accuracy`; theta is `none` without a filter.
void write_trial_csv(std::ostream& out, const std::vector<TrialRecord>& records);

}  // namespace poisongame
