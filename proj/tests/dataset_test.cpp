#include <doctest.h>

#include <cmath>
#include <sstream>

#include "poisongame/dataset.hpp"
#include "synthetic.hpp"

using namespace poisongame;

TEST_SUITE("dataset") {

TEST_CASE("parses rows and maps labels") {
  std::istringstream in("1.5, 2,1\n\n-3,4e-1,0\r\n");
  const auto d = parse_csv(in, "mem");
  REQUIRE(d.size() == 2);
  CHECK(d.n_features() == 2);
  CHECK(d.label(0) == 1);
  CHECK(d.label(1) == -1);
  CHECK(d.row(1)[1] == doctest::Approx(0.4));
  CHECK(d.count(Origin::genuine) == 2);
}

TEST_CASE("errors name the location") {
  std::istringstream bad("1,2,1\n3,x,0\n");
  CHECK_THROWS_WITH(parse_csv(bad, "f.csv"), doctest::Contains("f.csv:2: row 2, column 2"));
  std::istringstream ragged("1,2,1\n3,0\n");
  CHECK_THROWS_WITH(parse_csv(ragged, "f.csv"), doctest::Contains("f.csv:2"));
  std::istringstream label("1,2,3\n3,4,0\n");
  CHECK_THROWS_WITH(parse_csv(label, "f.csv"), doctest::Contains("0 or 1"));
  std::istringstream one("1,2,1\n");
  CHECK_THROWS(parse_csv(one, "f.csv"));
  CHECK_THROWS_WITH(load_csv("/nonexistent/spam.csv"), doctest::Contains("/nonexistent/spam.csv"));
}

TEST_CASE("split sizes follow the floor rule") {
  LabeledDataset d(1);
  for (int i = 0; i < 4601; ++i) d.add(std::vector<double>{double(i)}, i % 3 ? 1 : -1);
  const auto s = normalize_and_split(d, 0.7, 5);
  CHECK(s.train.size() == 3220);
  CHECK(s.test.size() == 1381);
  CHECK_THROWS(normalize_and_split(d, 1.0, 5));
  CHECK_THROWS(normalize_and_split(d, 0.0, 5));
}

TEST_CASE("normalization uses training statistics") {
  auto d = synthetic::blobs(3, 200, 4, 2.0, 3.0);
  for (std::size_t i = 0; i < d.size(); ++i) d.row(i)[3] = 7.0;  // constant column
  const auto s = normalize_and_split(d, 0.7, 9);
  for (std::size_t c = 0; c < 4; ++c) {
    double mean = 0, var = 0;
    for (std::size_t i = 0; i < s.train.size(); ++i) mean += s.train.row(i)[c];
    mean /= s.train.size();
    for (std::size_t i = 0; i < s.train.size(); ++i) {
      var += (s.train.row(i)[c] - mean) * (s.train.row(i)[c] - mean);
    }
    var /= s.train.size();
    CHECK(std::fabs(mean) <= 1e-9);
    if (c < 3) CHECK(std::fabs(std::sqrt(var) - 1.0) <= 1e-9);
  }
  CHECK(s.stats.scale[3] == 1.0);
  CHECK(s.test.row(0)[3] == 0.0);
}

TEST_CASE("same seed gives the same split") {
  const auto d = synthetic::blobs(4, 50, 3, 1.0);
  const auto a = normalize_and_split(d, 0.7, 77);
  const auto b = normalize_and_split(d, 0.7, 77);
  const auto c = normalize_and_split(d, 0.7, 78);
  CHECK(std::equal(a.train.features().begin(), a.train.features().end(),
                   b.train.features().begin(), b.train.features().end()));
  CHECK_FALSE(std::equal(a.train.features().begin(), a.train.features().end(),
                         c.train.features().begin(), c.train.features().end()));
}

TEST_CASE("spambase file") {
  const auto d = load_csv(POISONGAME_DATA_DIR "/spambase.data");
  CHECK(d.n_features() == 57);
  CHECK(d.size() > 4500);
}

}
