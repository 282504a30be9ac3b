#pragma once

#include <span>
#include <vector>

namespace poisongame {

struct Knot {
  double percentile;
  double value;

  friend bool operator==(const Knot&, const Knot&) = default;
};

/// Piecewise-linear function over percentile space [0, 1].
///
/// Used for both E(p), the per-point damage of an unfiltered poisoning point
/// placed at percentile p, and Gamma(theta), the accuracy lost by filtering
/// genuine data at theta. Values between knots are linearly interpolated;
/// outside the knot range the endpoint value is held.
class PayoffCurve {
 public:
  /// Throws std::invalid_argument unless knots are non-empty, finite, inside
  /// [0, 1] and strictly increasing in percentile.
  explicit PayoffCurve(std::vector<Knot> knots);

  /// Constant curve.
  static PayoffCurve constant(double value);

  double operator()(double percentile) const;

  /// Slope of the segment containing `percentile`. At an interior knot the
  /// right-hand segment is used; outside the knot range the slope is zero.
  double slope(double percentile) const;

  std::span<const Knot> knots() const { return knots_; }

  bool is_non_decreasing() const;
  bool is_non_increasing() const;

  friend bool operator==(const PayoffCurve&, const PayoffCurve&) = default;

 private:
  std::vector<Knot> knots_;
};

}  // namespace poisongame
