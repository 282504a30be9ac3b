#pragma once

#include <cstdint>
#include <optional>

#include "poisongame/dataset.hpp"
#include "poisongame/game.hpp"
#include "poisongame/geometry.hpp"

namespace poisongame {

/// Builds the poisoning rows for `plan`. Labels alternate +1, -1, +1, ...
/// across all points. A point labeled y sits at exactly radius_at(y, r) from
/// y's centroid, in the direction of the opposite centroid tilted by a small
/// random tangential offset. Throws if the two centroids coincide.
LabeledDataset craft_poison(const ClassGeometry& geom, const AttackPlan& plan, std::uint64_t seed);

/// `train` followed by craft_poison(geom, plan, seed). Throws if the plan
/// exceeds `budget` when one is given.
LabeledDataset craft_attack(const LabeledDataset& train, const ClassGeometry& geom,
                            const AttackPlan& plan, std::uint64_t seed,
                            std::optional<std::int64_t> budget = std::nullopt);

}  // namespace poisongame
