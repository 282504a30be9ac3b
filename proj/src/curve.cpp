#include "poisongame/curve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace poisongame {

PayoffCurve::PayoffCurve(std::vector<Knot> knots) : knots_(std::move(knots)) {
  if (knots_.empty()) {
    throw std::invalid_argument("PayoffCurve: at least one knot required");
  }
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    const auto& k = knots_[i];
    if (!std::isfinite(k.percentile) || !std::isfinite(k.value)) {
      throw std::invalid_argument("PayoffCurve: non-finite knot at index " +
                                  std::to_string(i));
    }
    if (k.percentile < 0.0 || k.percentile > 1.0) {
      throw std::invalid_argument("PayoffCurve: knot percentile outside [0,1] at index " +
                                  std::to_string(i));
    }
    if (i > 0 && !(k.percentile > knots_[i - 1].percentile)) {
      throw std::invalid_argument(
          "PayoffCurve: knot percentiles must be strictly increasing (index " +
          std::to_string(i) + ")");
    }
  }
}

PayoffCurve PayoffCurve::constant(double value) {
  return PayoffCurve({{0.0, value}, {1.0, value}});
}

double PayoffCurve::operator()(double p) const {
  if (p <= knots_.front().percentile) return knots_.front().value;
  if (p >= knots_.back().percentile) return knots_.back().value;
  auto hi = std::upper_bound(knots_.begin(), knots_.end(), p,
                             [](double x, const Knot& k) { return x < k.percentile; });
  auto lo = hi - 1;
  if (p == lo->percentile) return lo->value;
  const double t = (p - lo->percentile) / (hi->percentile - lo->percentile);
  return lo->value + t * (hi->value - lo->value);
}

double PayoffCurve::slope(double p) const {
  if (knots_.size() < 2) return 0.0;
  if (p < knots_.front().percentile || p >= knots_.back().percentile) return 0.0;
  auto hi = std::upper_bound(knots_.begin(), knots_.end(), p,
                             [](double x, const Knot& k) { return x < k.percentile; });
  auto lo = hi - 1;
  return (hi->value - lo->value) / (hi->percentile - lo->percentile);
}

bool PayoffCurve::is_non_decreasing() const {
  return std::is_sorted(knots_.begin(), knots_.end(),
                        [](const Knot& a, const Knot& b) { return a.value < b.value; });
}

bool PayoffCurve::is_non_increasing() const {
  return std::is_sorted(knots_.begin(), knots_.end(),
                        [](const Knot& a, const Knot& b) { return a.value > b.value; });
}

}  // namespace poisongame
