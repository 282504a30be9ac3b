#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "poisongame/curve.hpp"

using namespace poisongame;

TEST_SUITE("curve") {

TEST_CASE("interpolates between knots and clamps outside") {
  const PayoffCurve c({{0.2, 1.0}, {0.6, 3.0}});
  CHECK(c(0.2) == 1.0);
  CHECK(c(0.6) == 3.0);
  CHECK(c(0.4) == doctest::Approx(2.0));
  CHECK(c(0.0) == 1.0);
  CHECK(c(1.0) == 3.0);
  CHECK(c.slope(0.3) == doctest::Approx(5.0));
  CHECK(c.slope(0.2) == doctest::Approx(5.0));
  CHECK(c.slope(0.1) == 0.0);
  CHECK(c.slope(0.6) == 0.0);
}

TEST_CASE("reproduces knot values exactly and is continuous") {
  const PayoffCurve c({{0.0, 0.5}, {0.1, 0.25}, {0.7, 0.3}, {1.0, -1.0}});
  for (const auto& k : c.knots()) CHECK(c(k.percentile) == k.value);
  for (const auto& k : c.knots()) {
    CHECK(std::fabs(c(std::nextafter(k.percentile, 2.0)) - k.value) < 1e-12);
    CHECK(std::fabs(c(std::nextafter(k.percentile, -1.0)) - k.value) < 1e-12);
  }
}

TEST_CASE("monotonicity queries") {
  CHECK(PayoffCurve({{0, 1}, {1, 2}}).is_non_decreasing());
  CHECK_FALSE(PayoffCurve({{0, 1}, {1, 2}}).is_non_increasing());
  CHECK(PayoffCurve::constant(3.0).is_non_decreasing());
  CHECK(PayoffCurve::constant(3.0).is_non_increasing());
}

TEST_CASE("rejects malformed knots") {
  CHECK_THROWS_AS(PayoffCurve({}), std::invalid_argument);
  CHECK_THROWS_AS(PayoffCurve({{0.5, 1}, {0.5, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(PayoffCurve({{0.6, 1}, {0.5, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(PayoffCurve({{-0.1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(PayoffCurve({{0.0, NAN}}), std::invalid_argument);
}

}
