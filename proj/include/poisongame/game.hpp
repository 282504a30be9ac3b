#pragma once

// Strategy types and payoff / best-response math of the attacker-defender
// poisoning game. All percentiles are genuine distance-to-centroid quantiles
// of the labeled class; 1.0 is the boundary B (maximum genuine distance).
//
// Survival rule: a poisoning point at percentile r survives a filter at theta
// iff theta >= r.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "poisongame/curve.hpp"

namespace poisongame {

struct PlanEntry {
  double radius;
  std::int64_t count;

  friend bool operator==(const PlanEntry&, const PlanEntry&) = default;
};

/// Attacker pure strategy: `count` points placed at each `radius` percentile.
class AttackPlan {
 public:
  /// Radii must lie in [0,1] and be strictly increasing; counts are
  /// non-negative and must sum to a positive total.
  explicit AttackPlan(std::vector<PlanEntry> entries);

  /// All `total` points at a single radius.
  static AttackPlan single(double radius, std::int64_t total);

  std::span<const PlanEntry> entries() const { return entries_; }
  std::int64_t total() const { return total_; }
  double min_radius() const { return entries_.front().radius; }

  friend bool operator==(const AttackPlan&, const AttackPlan&) = default;

 private:
  std::vector<PlanEntry> entries_;
  std::int64_t total_ = 0;
};

/// Defender pure strategy: filter radius as a percentile.
class DefenseRadius {
 public:
  explicit DefenseRadius(double theta);
  double theta() const { return theta_; }

  friend auto operator<=>(const DefenseRadius&, const DefenseRadius&) = default;

 private:
  double theta_;
};

struct SupportPoint {
  double theta;
  double prob;

  friend bool operator==(const SupportPoint&, const SupportPoint&) = default;
};

/// Defender mixed strategy with finite support, sorted by theta.
class MixedDefense {
 public:
  /// Probabilities must be non-negative and sum to 1 within 1e-12; thetas
  /// strictly increasing inside [0,1].
  explicit MixedDefense(std::vector<SupportPoint> support);

  static MixedDefense pure(double theta) { return MixedDefense({{theta, 1.0}}); }

  std::span<const SupportPoint> support() const { return support_; }

  /// Probability mass at exactly `theta`.
  double pdf(double theta) const;

  /// P(filter radius >= theta): mass counted from the boundary toward the
  /// centroid. Equals the survival probability of a point at `theta`.
  double cdf(double theta) const;

  /// Inverse-cdf draw given u in [0, 1).
  double sample(double u) const;

  double min_theta() const { return support_.front().theta; }

  friend bool operator==(const MixedDefense&, const MixedDefense&) = default;

 private:
  std::vector<SupportPoint> support_;
};

/// Attacker payoff U(S_a, theta) = sum_{r_i <= theta} E(r_i) n_i + Gamma(theta).
/// The defender's payoff is exactly the negation.
double pure_payoff(const AttackPlan& plan, DefenseRadius theta, const PayoffCurve& e,
                   const PayoffCurve& gamma);

inline double defender_payoff(const AttackPlan& plan, DefenseRadius theta,
                              const PayoffCurve& e, const PayoffCurve& gamma) {
  return -pure_payoff(plan, theta, e, gamma);
}

/// Expected attacker payoff of a pure plan against a mixed defense.
double expected_payoff(const AttackPlan& plan, const MixedDefense& mix, const PayoffCurve& e,
                       const PayoffCurve& gamma);

/// T_a: infimum of percentiles with E(p) > 0. Returns 0 when E is positive
/// everywhere and 1 when it never is.
double attacker_benefit_threshold(const PayoffCurve& e);

struct AttackResponse {
  AttackPlan plan;
  /// True when theta < T_a: no placement both survives and profits, and the
  /// plan is the canonical representative with every point at the boundary.
  bool blocked;
};

AttackResponse best_response_attacker(DefenseRadius theta, const PayoffCurve& e,
                                      std::int64_t n_total);

/// Exhaustive scan of `grid` for the filter radius minimizing the attacker's
/// payoff. Ties go to the larger theta.
DefenseRadius best_response_defender(const AttackPlan& plan, const PayoffCurve& e,
                                     const PayoffCurve& gamma, std::span<const double> grid);

struct PureEquilibrium {
  AttackPlan plan;
  DefenseRadius theta;
};

/// Searches grid pairs (single-radius plan, theta) that are mutual best
/// responses. Returns nullopt when the discretized game has no pure
/// equilibrium.
std::optional<PureEquilibrium> find_pure_ne(const PayoffCurve& e, const PayoffCurve& gamma,
                                            std::int64_t n_total, std::span<const double> grid);

/// `count` equally spaced percentiles from 0 to 1 inclusive.
std::vector<double> uniform_grid(std::size_t count);

}  // namespace poisongame
