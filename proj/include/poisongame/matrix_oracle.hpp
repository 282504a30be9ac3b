#pragma once

// Discretized zero-sum matrix game solved by fictitious play, used as an
// independent check on the equilibrium solver. The attacker (rows) maximizes,
// the defender (columns) minimizes.

#include <cstdint>
#include <span>
#include <vector>

#include "poisongame/curve.hpp"

namespace poisongame {

struct GameMatrix {
  std::vector<double> attacker_radii;   // rows
  std::vector<double> defender_thetas;  // columns
  std::vector<double> payoff;           // row-major

  std::size_t rows() const { return attacker_radii.size(); }
  std::size_t cols() const { return defender_thetas.size(); }
  double operator()(std::size_t i, std::size_t j) const { return payoff[i * cols() + j]; }
};

/// entry(i, j) = N * E(r_i) * [theta_j >= r_i] + Gamma(theta_j), with rows
/// and columns both on `grid`.
GameMatrix build_matrix(const PayoffCurve& e, const PayoffCurve& gamma, std::int64_t n_poison,
                        std::span<const double> grid);

struct GapCheckpoint {
  std::int64_t iteration;
  double value_lower;
  double value_upper;
};

struct MatrixGameSolution {
  std::vector<double> attacker_mix;
  std::vector<double> defender_mix;
  /// min_j (attacker_mix^T M)_j: the attacker's guaranteed payoff.
  double value_lower;
  /// max_i (M defender_mix)_i: the defender's guaranteed loss cap.
  double value_upper;
  std::vector<GapCheckpoint> checkpoints;

  double gap() const { return value_upper - value_lower; }
};

/// Alternating fictitious play. Bounds are evaluated every
/// `checkpoint_interval` iterations and after the last one; the tightest
/// bound seen on each side is kept together with the mix that certifies it,
/// so the reported gap never widens between checkpoints.
MatrixGameSolution solve_matrix_game(const GameMatrix& m, std::int64_t iterations,
                                     std::int64_t checkpoint_interval = 10000);

}  // namespace poisongame
