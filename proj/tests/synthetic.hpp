#pragma once

// Random curve families shared by the unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "poisongame/curve.hpp"
#include "poisongame/dataset.hpp"
#include "poisongame/rng.hpp"

namespace synthetic {

using poisongame::Knot;
using poisongame::PayoffCurve;

// Interior knot percentiles plus both endpoints.
inline std::vector<double> knot_positions(poisongame::rng::Engine& g, int interior) {
  std::vector<double> p{0.0, 1.0};
  while (static_cast<int>(p.size()) < interior + 2) {
    const double x = std::round(poisongame::rng::uniform(g, 0.02, 0.98) * 1000.0) / 1000.0;
    if (std::find(p.begin(), p.end(), x) == p.end()) p.push_back(x);
  }
  std::sort(p.begin(), p.end());
  return p;
}

// Piecewise-linear E, strictly increasing with E(0) > 0, values ~1e-4..1e-3.
inline PayoffCurve random_e(poisongame::rng::Engine& g, int interior = 4) {
  std::vector<Knot> k;
  double v = poisongame::rng::uniform(g, 5e-5, 3e-4);
  for (double p : knot_positions(g, interior)) {
    k.push_back({p, v});
    v += poisongame::rng::uniform(g, 2e-5, 3e-4);
  }
  return PayoffCurve(std::move(k));
}

// Piecewise-linear Gamma, strictly decreasing to Gamma(1) = 0.
inline PayoffCurve random_gamma(poisongame::rng::Engine& g, int interior = 4) {
  const auto pos = knot_positions(g, interior);
  std::vector<Knot> k(pos.size());
  double v = 0.0;
  for (std::size_t i = pos.size(); i-- > 0;) {
    k[i] = {pos[i], v};
    v += poisongame::rng::uniform(g, 0.005, 0.06);
  }
  return PayoffCurve(std::move(k));
}

// Smooth saturating damage and polynomial filtering cost, sampled on 101 knots:
// E(r) = e0 + e1 (1 - exp(-r / tau)), Gamma(t) = c (1 - t)^q.
inline std::pair<PayoffCurve, PayoffCurve> saturating_pair(poisongame::rng::Engine& g) {
  using poisongame::rng::uniform;
  const double e0 = uniform(g, 0.0005, 0.002);
  const double e1 = uniform(g, 0.003, 0.01);
  const double tau = uniform(g, 0.05, 0.3);
  const double c = uniform(g, 0.02, 0.1);
  const double q = uniform(g, 1.0, 3.0);
  std::vector<Knot> e, gamma;
  for (int i = 0; i <= 100; ++i) {
    const double p = i / 100.0;
    e.push_back({p, e0 + e1 * (1.0 - std::exp(-p / tau))});
    gamma.push_back({p, c * std::pow(1.0 - p, q)});
  }
  return {PayoffCurve(std::move(e)), PayoffCurve(std::move(gamma))};
}

// Two Gaussian blobs at (+sep, 0, ...) and (-sep, 0, ...).
inline poisongame::LabeledDataset blobs(std::uint64_t seed, std::size_t per_class,
                                        std::size_t dims, double sep, double sd = 1.0) {
  poisongame::rng::Engine g(seed);
  poisongame::LabeledDataset d(dims);
  std::vector<double> x(dims);
  for (std::size_t i = 0; i < 2 * per_class; ++i) {
    const int y = i % 2 == 0 ? 1 : -1;
    for (std::size_t k = 0; k < dims; ++k) x[k] = poisongame::rng::normal(g) * sd;
    x[0] += y * sep;
    d.add(x, y);
  }
  return d;
}

}  // namespace synthetic
