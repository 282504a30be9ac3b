#include "poisongame/attack.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "poisongame/rng.hpp"

namespace poisongame {

namespace {

// Norm of the tangential offset relative to the unit attack direction.
constexpr double kTangentialJitter = 0.05;

std::vector<double> unit_direction(std::span<const double> from, std::span<const double> to) {
  std::vector<double> u(from.size());
  double norm = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    u[k] = to[k] - from[k];
    norm += u[k] * u[k];
  }
  norm = std::sqrt(norm);
  if (!(norm > 1e-12)) throw std::invalid_argument("craft_attack: class centroids coincide");
  for (auto& v : u) v /= norm;
  return u;
}

}  // namespace

LabeledDataset craft_poison(const ClassGeometry& geom, const AttackPlan& plan, std::uint64_t seed) {
  const std::size_t d = geom.centroid(1).size();
  const std::array<std::vector<double>, 2> toward = {
      unit_direction(geom.centroid(1), geom.centroid(-1)),
      unit_direction(geom.centroid(-1), geom.centroid(1))};
  rng::Engine engine(seed);
  LabeledDataset poison(d);
  std::vector<double> point(d), dir(d);
  std::int64_t index = 0;
  for (const auto& entry : plan.entries()) {
    for (std::int64_t k = 0; k < entry.count; ++k, ++index) {
      const int label = index % 2 == 0 ? 1 : -1;
      const auto& u = toward[label > 0 ? 0 : 1];
      const auto centroid = geom.centroid(label);
      const double radius = geom.radius_at(label, entry.radius);

      // Gaussian offset with its component along u removed.
      double along = 0.0;
      for (std::size_t c = 0; c < d; ++c) {
        dir[c] = rng::normal(engine);
        along += dir[c] * u[c];
      }
      double tangent_norm = 0.0;
      for (std::size_t c = 0; c < d; ++c) {
        dir[c] -= along * u[c];
        tangent_norm += dir[c] * dir[c];
      }
      tangent_norm = std::sqrt(tangent_norm);
      const double jitter = tangent_norm > 0.0 ? kTangentialJitter / tangent_norm : 0.0;
      double norm = 0.0;
      for (std::size_t c = 0; c < d; ++c) {
        dir[c] = u[c] + jitter * dir[c];
        norm += dir[c] * dir[c];
      }
      norm = std::sqrt(norm);
      for (std::size_t c = 0; c < d; ++c) point[c] = centroid[c] + radius * dir[c] / norm;
      poison.add(point, label, Origin::poison);
    }
  }
  return poison;
}

LabeledDataset craft_attack(const LabeledDataset& train, const ClassGeometry& geom,
                            const AttackPlan& plan, std::uint64_t seed,
                            std::optional<std::int64_t> budget) {
  if (budget && plan.total() > *budget) {
    throw std::invalid_argument("craft_attack: plan uses " + std::to_string(plan.total()) +
                                " points, budget is " + std::to_string(*budget));
  }
  return train.concat(craft_poison(geom, plan, seed));
}

}  // namespace poisongame
