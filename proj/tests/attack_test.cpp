#include <doctest.h>

#include <cmath>

#include "poisongame/attack.hpp"
#include "poisongame/geometry.hpp"
#include "synthetic.hpp"

using namespace poisongame;

TEST_SUITE("attack") {

TEST_CASE("points sit on the requested sphere") {
  const auto d = synthetic::blobs(21, 200, 5, 2.0);
  const auto g = class_geometry(d);
  const auto poison = craft_poison(g, AttackPlan({{0.3, 7}, {0.5, 10}}), 4);
  REQUIRE(poison.size() == 17);
  CHECK(poison.count(Origin::poison) == 17);
  for (std::size_t i = 0; i < poison.size(); ++i) {
    const int y = poison.label(i);
    CHECK(y == (i % 2 == 0 ? 1 : -1));
    const double want = g.radius_at(y, i < 7 ? 0.3 : 0.5);
    CHECK(std::fabs(euclidean_distance(poison.row(i), g.centroid(y)) - want) <= 1e-9 * want);
  }
}

TEST_CASE("points lean toward the opposite class") {
  const auto d = synthetic::blobs(22, 200, 3, 2.0);
  const auto g = class_geometry(d);
  const auto poison = craft_poison(g, AttackPlan::single(0.9, 40), 5);
  for (std::size_t i = 0; i < poison.size(); ++i) {
    const int y = poison.label(i);
    const auto c = g.centroid(y);
    const auto o = g.centroid(-y);
    double dot = 0, nu = 0, nv = 0;
    for (std::size_t k = 0; k < 3; ++k) {
      const double u = o[k] - c[k];
      const double v = poison.row(i)[k] - c[k];
      dot += u * v;
      nu += u * u;
      nv += v * v;
    }
    CHECK(dot / std::sqrt(nu * nv) > 0.99);
  }
}

TEST_CASE("survival matches the filter radius") {
  const auto d = synthetic::blobs(23, 150, 4, 2.0);
  const auto g = class_geometry(d);
  for (double r : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const auto attacked = craft_attack(d, g, AttackPlan::single(r, 20), 6);
    for (double theta : {0.0, 0.1, 0.25, 0.3, 0.5, 0.6, 0.75, 0.9, 1.0}) {
      const auto kept = filter(attacked, g, theta).count(Origin::poison);
      CHECK(kept == (theta >= r ? 20u : 0u));
    }
  }
}

TEST_CASE("budget and degenerate geometry") {
  const auto d = synthetic::blobs(24, 20, 2, 2.0);
  const auto g = class_geometry(d);
  CHECK_THROWS_AS(craft_attack(d, g, AttackPlan::single(0.5, 10), 1, 9), std::invalid_argument);
  CHECK(craft_attack(d, g, AttackPlan::single(0.5, 10), 1, 10).size() == d.size() + 10);
  const ClassGeometry same({{1.0, 1.0}, {1.0}}, {{1.0, 1.0}, {1.0}});
  CHECK_THROWS_AS(craft_poison(same, AttackPlan::single(0.5, 2), 1), std::invalid_argument);
}

TEST_CASE("crafting is deterministic") {
  const auto d = synthetic::blobs(25, 40, 3, 2.0);
  const auto g = class_geometry(d);
  const auto a = craft_poison(g, AttackPlan::single(0.6, 9), 8);
  const auto b = craft_poison(g, AttackPlan::single(0.6, 9), 8);
  CHECK(std::equal(a.features().begin(), a.features().end(), b.features().begin(),
                   b.features().end()));
}

}
