#include "poisongame/game.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace poisongame {

namespace {

void require_percentile(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(what) + ": percentile " + std::to_string(p) +
                                " outside [0,1]");
  }
}

void require_grid(std::span<const double> grid, std::size_t min_size) {
  if (grid.size() < min_size) {
    throw std::invalid_argument("grid needs at least " + std::to_string(min_size) + " points");
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    require_percentile(grid[i], "grid");
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw std::invalid_argument("grid must be strictly increasing");
    }
  }
}

bool approx_le(double a, double b) {
  return a <= b + 1e-12 * std::max({1.0, std::fabs(a), std::fabs(b)});
}

}  // namespace

AttackPlan::AttackPlan(std::vector<PlanEntry> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw std::invalid_argument("AttackPlan: no entries");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    require_percentile(entries_[i].radius, "AttackPlan");
    if (entries_[i].count < 0) throw std::invalid_argument("AttackPlan: negative count");
    if (i > 0 && !(entries_[i].radius > entries_[i - 1].radius)) {
      throw std::invalid_argument("AttackPlan: radii must be strictly increasing");
    }
    total_ += entries_[i].count;
  }
  if (total_ <= 0) throw std::invalid_argument("AttackPlan: total count must be positive");
}

AttackPlan AttackPlan::single(double radius, std::int64_t total) {
  return AttackPlan({{radius, total}});
}

DefenseRadius::DefenseRadius(double theta) : theta_(theta) {
  require_percentile(theta, "DefenseRadius");
}

MixedDefense::MixedDefense(std::vector<SupportPoint> support) : support_(std::move(support)) {
  if (support_.empty()) throw std::invalid_argument("MixedDefense: empty support");
  double total = 0.0;
  for (std::size_t i = 0; i < support_.size(); ++i) {
    require_percentile(support_[i].theta, "MixedDefense");
    if (!(support_[i].prob >= 0.0)) {
      throw std::invalid_argument("MixedDefense: negative probability");
    }
    if (i > 0 && !(support_[i].theta > support_[i - 1].theta)) {
      throw std::invalid_argument("MixedDefense: thetas must be strictly increasing");
    }
    total += support_[i].prob;
  }
  if (std::fabs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("MixedDefense: probabilities sum to " + std::to_string(total));
  }
}

double MixedDefense::pdf(double theta) const {
  for (const auto& s : support_) {
    if (s.theta == theta) return s.prob;
  }
  return 0.0;
}

double MixedDefense::cdf(double theta) const {
  double mass = 0.0;
  for (auto it = support_.rbegin(); it != support_.rend() && it->theta >= theta; ++it) {
    mass += it->prob;
  }
  return mass;
}

double MixedDefense::sample(double u) const {
  double acc = 0.0;
  for (const auto& s : support_) {
    acc += s.prob;
    if (u < acc) return s.theta;
  }
  return support_.back().theta;
}

double pure_payoff(const AttackPlan& plan, DefenseRadius theta, const PayoffCurve& e,
                   const PayoffCurve& gamma) {
  double effect = 0.0;
  for (const auto& entry : plan.entries()) {
    if (theta.theta() >= entry.radius) {
      effect += e(entry.radius) * static_cast<double>(entry.count);
    }
  }
  return effect + gamma(theta.theta());
}

double expected_payoff(const AttackPlan& plan, const MixedDefense& mix, const PayoffCurve& e,
                       const PayoffCurve& gamma) {
  double effect = 0.0;
  for (const auto& entry : plan.entries()) {
    effect += static_cast<double>(entry.count) * e(entry.radius) * mix.cdf(entry.radius);
  }
  double cost = 0.0;
  for (const auto& s : mix.support()) cost += s.prob * gamma(s.theta);
  return effect + cost;
}

double attacker_benefit_threshold(const PayoffCurve& e) {
  const auto knots = e.knots();
  if (knots.front().value > 0.0) return 0.0;
  for (std::size_t i = 1; i < knots.size(); ++i) {
    const auto& a = knots[i - 1];
    const auto& b = knots[i];
    if (b.value > 0.0) {
      // a.value <= 0 < b.value: first crossing lies in this segment.
      const double t = -a.value / (b.value - a.value);
      return std::clamp(a.percentile + t * (b.percentile - a.percentile), 0.0, 1.0);
    }
  }
  return 1.0;
}

AttackResponse best_response_attacker(DefenseRadius theta, const PayoffCurve& e,
                                      std::int64_t n_total) {
  if (n_total <= 0) throw std::invalid_argument("best_response_attacker: n_total must be > 0");
  const double t_a = attacker_benefit_threshold(e);
  if (theta.theta() >= t_a) {
    return {AttackPlan::single(theta.theta(), n_total), false};
  }
  return {AttackPlan::single(1.0, n_total), true};
}

DefenseRadius best_response_defender(const AttackPlan& plan, const PayoffCurve& e,
                                     const PayoffCurve& gamma, std::span<const double> grid) {
  require_grid(grid, 1);
  double best_theta = grid.back();
  double best = pure_payoff(plan, DefenseRadius(best_theta), e, gamma);
  for (std::size_t k = grid.size() - 1; k-- > 0;) {
    const double value = pure_payoff(plan, DefenseRadius(grid[k]), e, gamma);
    if (value < best) {
      best = value;
      best_theta = grid[k];
    }
  }
  return DefenseRadius(best_theta);
}

std::optional<PureEquilibrium> find_pure_ne(const PayoffCurve& e, const PayoffCurve& gamma,
                                            std::int64_t n_total, std::span<const double> grid) {
  require_grid(grid, 2);
  if (n_total <= 0) throw std::invalid_argument("find_pure_ne: n_total must be > 0");
  const std::size_t n = grid.size();
  // payoff[i * n + j]: plan {(grid[i], N)} against theta = grid[j].
  std::vector<double> payoff(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto plan = AttackPlan::single(grid[i], n_total);
    for (std::size_t j = 0; j < n; ++j) {
      payoff[i * n + j] = pure_payoff(plan, DefenseRadius(grid[j]), e, gamma);
    }
  }
  std::vector<double> row_min(n, 0.0);  // defender's best value against row i
  std::vector<double> col_max(n, 0.0);  // attacker's best value against column j
  for (std::size_t i = 0; i < n; ++i) {
    row_min[i] = *std::min_element(payoff.begin() + static_cast<std::ptrdiff_t>(i * n),
                                   payoff.begin() + static_cast<std::ptrdiff_t>((i + 1) * n));
  }
  for (std::size_t j = 0; j < n; ++j) {
    double m = payoff[j];
    for (std::size_t i = 1; i < n; ++i) m = std::max(m, payoff[i * n + j]);
    col_max[j] = m;
  }
  // Larger thetas first so a degenerate game reports the no-filter equilibrium.
  for (std::size_t j = n; j-- > 0;) {
    for (std::size_t i = n; i-- > 0;) {
      const double v = payoff[i * n + j];
      if (approx_le(v, row_min[i]) && approx_le(col_max[j], v)) {
        return PureEquilibrium{AttackPlan::single(grid[i], n_total), DefenseRadius(grid[j])};
      }
    }
  }
  return std::nullopt;
}

std::vector<double> uniform_grid(std::size_t count) {
  if (count < 2) throw std::invalid_argument("uniform_grid: need at least 2 points");
  std::vector<double> grid(count);
  for (std::size_t k = 0; k < count; ++k) {
    grid[k] = static_cast<double>(k) / static_cast<double>(count - 1);
  }
  return grid;
}

}  // namespace poisongame
