#include <doctest.h>

#include <cmath>

#include "poisongame/geometry.hpp"
#include "synthetic.hpp"

using namespace poisongame;

namespace {

LabeledDataset from_rows(const std::vector<std::vector<double>>& pos,
                         const std::vector<std::vector<double>>& neg) {
  LabeledDataset d(pos.front().size());
  for (const auto& r : pos) d.add(r, 1);
  for (const auto& r : neg) d.add(r, -1);
  return d;
}

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("median centroid resists outliers") {
  const auto d = from_rows({{0, 0}, {2, 0}, {100, 0}}, {{5, 5}});
  const auto g = class_geometry(d);
  CHECK(g.centroid(1)[0] == 2.0);
  CHECK(g.centroid(1)[1] == 0.0);
  CHECK(g.shape(-1).distances == std::vector<double>{0.0});
  CHECK(g.shape(1).distances == std::vector<double>{0.0, 2.0, 98.0});
}

TEST_CASE("quantile radius") {
  const ClassGeometry g({{0.0}, {1, 2, 3, 4}}, {{1.0}, {0.5}});
  CHECK(g.radius_at(1, 0.0) == 1.0);
  CHECK(g.radius_at(1, 1.0) == 4.0);
  CHECK(g.radius_at(1, 0.5) == 2.5);
  CHECK(g.radius_at(-1, 0.3) == 0.5);
  CHECK_THROWS(g.radius_at(1, 1.2));
}

TEST_CASE("filter keeps rows inside the quantile radius") {
  const auto d = synthetic::blobs(12, 500, 3, 3.0);
  const auto g = class_geometry(d);
  CHECK(filter(d, g, 1.0).size() == d.size());
  for (double theta : {0.8, 0.5, 0.2}) {
    const auto f = filter(d, g, theta);
    for (int label : {1, -1}) {
      const double n = static_cast<double>(d.count(label));
      const double removed = n - static_cast<double>(f.count(label));
      CHECK(removed <= (1.0 - theta) * n + 1.0);
      CHECK(removed >= (1.0 - theta) * n - 1.0);
    }
  }
  const ClassGeometry tiny({{0.0}, {1, 2}}, {{9.0}, {1, 2}});
  LabeledDataset far(1);
  far.add(std::vector<double>{5.0}, 1);
  far.add(std::vector<double>{9.5}, -1);
  CHECK_THROWS_AS(filter(far, tiny, 1.0), std::runtime_error);
}

TEST_CASE("clean and realistic geometry under contamination") {
  auto d = synthetic::blobs(13, 400, 2, 3.0);
  const auto clean = class_geometry(d);
  rng::Engine g(1);
  const std::size_t n_poison = d.size() / 5;
  for (std::size_t k = 0; k < n_poison; ++k) {
    const int y = k % 2 ? 1 : -1;
    d.add(std::vector<double>{-y * 40.0 + rng::normal(g), 30.0 + rng::normal(g)}, y,
          Origin::poison);
  }
  const auto after = class_geometry(d, GeometryMode::clean);
  const auto realistic = class_geometry(d, GeometryMode::realistic);
  for (int y : {1, -1}) {
    CHECK(std::vector<double>(after.centroid(y).begin(), after.centroid(y).end()) ==
          std::vector<double>(clean.centroid(y).begin(), clean.centroid(y).end()));
    // 20% contamination stays well under the median's breakdown point
    CHECK(euclidean_distance(realistic.centroid(y), clean.centroid(y)) < 1.5);
  }
}

TEST_CASE("empty class is rejected") {
  LabeledDataset d(1);
  d.add(std::vector<double>{1.0}, 1);
  CHECK_THROWS_AS(class_geometry(d), std::invalid_argument);
}

}
