#include <doctest.h>

#include <cmath>
#include <numeric>

#include "poisongame/equilibrium.hpp"
#include "poisongame/game.hpp"
#include "poisongame/matrix_oracle.hpp"
#include "poisongame/rng.hpp"
#include "synthetic.hpp"

using namespace poisongame;

namespace {

GameMatrix square(std::vector<double> payoff, std::size_t n) {
  GameMatrix m;
  for (std::size_t k = 0; k < n; ++k) {
    m.attacker_radii.push_back(static_cast<double>(k));
    m.defender_thetas.push_back(static_cast<double>(k));
  }
  m.payoff = std::move(payoff);
  return m;
}

void check_distribution(const std::vector<double>& p) {
  for (double x : p) CHECK(x >= 0.0);
  CHECK(std::fabs(std::accumulate(p.begin(), p.end(), 0.0) - 1.0) <= 1e-12);
}

}  // namespace

TEST_SUITE("matrix_oracle") {

TEST_CASE("single cell matrix") {
  const PayoffCurve e = PayoffCurve::constant(0.002);
  const PayoffCurve gamma = PayoffCurve::constant(0.01);
  const auto m = build_matrix(e, gamma, 100, std::vector<double>{0.5});
  REQUIRE(m.payoff.size() == 1);
  CHECK(m(0, 0) == doctest::Approx(0.21));
  const auto s = solve_matrix_game(m, 10);
  CHECK(s.attacker_mix == std::vector<double>{1.0});
  CHECK(s.defender_mix == std::vector<double>{1.0});
  CHECK(s.value_lower == doctest::Approx(0.21));
  CHECK(s.value_upper == doctest::Approx(0.21));
}

TEST_CASE("entries match pure payoffs") {
  rng::Engine g(17);
  const auto e = synthetic::random_e(g);
  const auto gamma = synthetic::random_gamma(g);
  const auto grid = uniform_grid(23);
  const auto m = build_matrix(e, gamma, 100, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = 0; j < grid.size(); ++j) {
      CHECK(m(i, j) ==
            doctest::Approx(pure_payoff(AttackPlan::single(grid[i], 100), DefenseRadius(grid[j]),
                                        e, gamma)).epsilon(1e-14));
      if (grid[j] < grid[i]) CHECK(m(i, j) == gamma(grid[j]));
    }
  }
}

TEST_CASE("matching pennies") {
  const auto s = solve_matrix_game(square({1, 0, 0, 1}, 2), 100000);
  check_distribution(s.attacker_mix);
  check_distribution(s.defender_mix);
  CHECK(s.attacker_mix[0] == doctest::Approx(0.5).epsilon(0.02));
  CHECK(s.defender_mix[0] == doctest::Approx(0.5).epsilon(0.02));
  CHECK(s.value_lower <= 0.5);
  CHECK(s.value_upper >= 0.5);
  CHECK(s.gap() < 0.02);
}

TEST_CASE("bounds sandwich and tighten") {
  rng::Engine g(23);
  const auto [e, gamma] = synthetic::saturating_pair(g);
  const auto m = build_matrix(e, gamma, 100, uniform_grid(200));
  const auto s = solve_matrix_game(m, 100000);
  REQUIRE(s.checkpoints.size() == 10);
  for (std::size_t k = 0; k < s.checkpoints.size(); ++k) {
    CHECK(s.checkpoints[k].value_lower <= s.checkpoints[k].value_upper);
    if (k) {
      const double before = s.checkpoints[k - 1].value_upper - s.checkpoints[k - 1].value_lower;
      const double after = s.checkpoints[k].value_upper - s.checkpoints[k].value_lower;
      CHECK(after <= before + 1e-9);
    }
  }
  check_distribution(s.attacker_mix);
  check_distribution(s.defender_mix);

  // best single-row payoff against the defender mix is within the bounds
  double best_row = -1e300;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double v = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) v += m(i, j) * s.defender_mix[j];
    best_row = std::max(best_row, v);
  }
  CHECK(best_row <= s.value_upper + 1e-12);
  CHECK(best_row >= s.value_lower - 1e-12);
}

TEST_CASE("free filtering values") {
  const PayoffCurve e({{0.0, 0.001}, {1.0, 0.004}});
  const PayoffCurve zero = PayoffCurve::constant(0.0);
  const auto s = solve_matrix_game(build_matrix(e, zero, 100, uniform_grid(200)), 20000);
  SolverOptions opt;
  opt.n_poison = 100;
  const double f = solve(e, zero, opt).defender_loss;
  CHECK(s.value_upper == doctest::Approx(0.1).epsilon(1e-9));
  CHECK(s.value_lower == doctest::Approx(0.1).epsilon(1e-9));
  CHECK(f == doctest::Approx(0.1).epsilon(1e-9));
}

TEST_CASE("agrees with the solver on smooth curves") {
  rng::Engine g(31);
  for (int trial = 0; trial < 3; ++trial) {
    const auto [e, gamma] = synthetic::saturating_pair(g);
    SolverOptions opt;
    opt.n_support = 5;
    opt.n_poison = 100;
    const double f = solve(e, gamma, opt).defender_loss;
    const auto s = solve_matrix_game(build_matrix(e, gamma, 100, uniform_grid(200)), 200000);
    CHECK(s.gap() / s.value_upper < 0.01);
    CHECK(f >= s.value_lower * 0.98);
    CHECK(f <= s.value_upper * 1.02);
  }
}

TEST_CASE("malformed input") {
  CHECK_THROWS(build_matrix(PayoffCurve::constant(1), PayoffCurve::constant(0), 1,
                            std::vector<double>{}));
  CHECK_THROWS(build_matrix(PayoffCurve::constant(1), PayoffCurve::constant(0), 1,
                            std::vector<double>{0.5, 0.2}));
  CHECK_THROWS(solve_matrix_game(square({1}, 1), 0));
}

}
