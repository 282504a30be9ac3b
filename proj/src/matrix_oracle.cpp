#include "poisongame/matrix_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace poisongame {

GameMatrix build_matrix(const PayoffCurve& e, const PayoffCurve& gamma, std::int64_t n_poison,
                        std::span<const double> grid) {
  if (grid.empty()) throw std::invalid_argument("build_matrix: empty grid");
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (!(grid[k] > grid[k - 1])) throw std::invalid_argument("build_matrix: grid not sorted");
  }
  GameMatrix m;
  m.attacker_radii.assign(grid.begin(), grid.end());
  m.defender_thetas.assign(grid.begin(), grid.end());
  const std::size_t n = grid.size();
  m.payoff.resize(n * n);
  const double N = static_cast<double>(n_poison);
  for (std::size_t i = 0; i < n; ++i) {
    const double attack = N * e(grid[i]);
    for (std::size_t j = 0; j < n; ++j) {
      const double value = (grid[j] >= grid[i] ? attack : 0.0) + gamma(grid[j]);
      if (!std::isfinite(value)) throw std::invalid_argument("build_matrix: non-finite entry");
      m.payoff[i * n + j] = value;
    }
  }
  return m;
}

MatrixGameSolution solve_matrix_game(const GameMatrix& m, std::int64_t iterations,
                                     std::int64_t checkpoint_interval) {
  if (iterations < 1) throw std::invalid_argument("solve_matrix_game: iterations must be >= 1");
  if (checkpoint_interval < 1) checkpoint_interval = iterations;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  if (rows == 0 || cols == 0 || m.payoff.size() != rows * cols) {
    throw std::invalid_argument("solve_matrix_game: malformed matrix");
  }

  std::vector<std::int64_t> row_count(rows, 0), col_count(cols, 0);
  // row_value[i] = sum over defender plays of M(i, j); col_value[j] likewise.
  std::vector<double> row_value(rows, 0.0), col_value(cols, 0.0);

  MatrixGameSolution best;
  best.value_lower = -std::numeric_limits<double>::infinity();
  best.value_upper = std::numeric_limits<double>::infinity();

  auto normalize = [](const std::vector<std::int64_t>& counts, std::int64_t total) {
    std::vector<double> mix(counts.size());
    for (std::size_t k = 0; k < counts.size(); ++k) {
      mix[k] = static_cast<double>(counts[k]) / static_cast<double>(total);
    }
    return mix;
  };

  std::size_t row = 0;
  for (std::int64_t t = 1; t <= iterations; ++t) {
    ++row_count[row];
    for (std::size_t j = 0; j < cols; ++j) col_value[j] += m(row, j);
    const auto col = static_cast<std::size_t>(
        std::min_element(col_value.begin(), col_value.end()) - col_value.begin());
    ++col_count[col];
    for (std::size_t i = 0; i < rows; ++i) row_value[i] += m(i, col);
    row = static_cast<std::size_t>(std::max_element(row_value.begin(), row_value.end()) -
                                   row_value.begin());

    if (t % checkpoint_interval == 0 || t == iterations) {
      const double scale = static_cast<double>(t);
      const double lower = *std::min_element(col_value.begin(), col_value.end()) / scale;
      const double upper = *std::max_element(row_value.begin(), row_value.end()) / scale;
      if (lower > best.value_lower) {
        best.value_lower = lower;
        best.attacker_mix = normalize(row_count, t);
      }
      if (upper < best.value_upper) {
        best.value_upper = upper;
        best.defender_mix = normalize(col_count, t);
      }
      best.checkpoints.push_back({t, best.value_lower, best.value_upper});
    }
  }
  return best;
}

}  // namespace poisongame
