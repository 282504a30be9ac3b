#pragma once

// Approximate defender equilibrium with a fixed number of filter radii.
//
// For sorted radii r_1 < ... < r_n with E(r_i) > 0, the attacker is
// indifferent across the support when E(r_i) * cdf(r_i) is constant, which
// pins the probabilities. The defender's loss against the best attack (all
// points stacked just inside r_1) is
//
//     f(r) = N * E(r_1) + sum_i p_i(r) * Gamma(r_i)
//
// and the radii are optimized by projected gradient descent.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "poisongame/curve.hpp"
#include "poisongame/game.hpp"

namespace poisongame {

/// Probabilities making the attacker indifferent over `radii`.
/// Throws std::invalid_argument if fewer than two radii, radii not strictly
/// increasing, any E(r_i) <= 0, or E decreasing between neighbours.
std::vector<double> find_percentage(std::span<const double> radii, const PayoffCurve& e);

double defender_loss(std::span<const double> radii, const PayoffCurve& e,
                     const PayoffCurve& gamma, std::int64_t n_poison);

/// Analytic gradient of defender_loss with respect to each radius, using
/// the curves' segment slopes (right-hand slope at knots).
std::vector<double> defender_loss_gradient(std::span<const double> radii, const PayoffCurve& e,
                                           const PayoffCurve& gamma, std::int64_t n_poison);

/// t_a + k (1 - t_a) / (n + 1) for k = 1..n.
std::vector<double> choose_initial_radius(int n_support, double t_a);

struct SolverOptions {
  int n_support = 3;
  std::int64_t n_poison = 644;
  double epsilon = 1e-7;
  double step = 0.05;
  int max_iter = 5000;
};

struct TracePoint {
  int iteration;
  double loss;
};

struct SolveReport {
  MixedDefense mix;
  double defender_loss;
  int iterations;
  std::vector<TracePoint> trace;
  bool converged;
  /// Radii merged during descent or pruned for negligible mass.
  bool support_shrunk = false;
  /// Fewer than two radii survived pruning.
  bool degenerate = false;

  std::vector<double> radii() const;
  std::vector<double> probs() const;
};

SolveReport solve(const PayoffCurve& e, const PayoffCurve& gamma, const SolverOptions& options);

/// JSON document with keys radii, probs, loss, iterations, converged, trace
/// (plus support_shrunk, degenerate).
std::string to_json(const SolveReport& report);
SolveReport solve_report_from_json(const std::string& text);

}  // namespace poisongame
