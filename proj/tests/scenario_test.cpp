#include <doctest.h>

#include <sstream>

#include "poisongame/scenario.hpp"
#include "synthetic.hpp"

using namespace poisongame;

namespace {

struct Fixture {
  Split split = normalize_and_split(synthetic::blobs(31, 300, 4, 1.0, 1.0), 0.7, 2);
  ClassGeometry geom = class_geometry(split.train);
};

}  // namespace

TEST_SUITE("scenario") {

TEST_CASE("no attack and no defense is the plain baseline") {
  Fixture f;
  ScenarioOptions o;
  o.trainer.epochs = 30;
  o.seed = 5;
  const auto r = evaluate_scenario(f.split.train, f.split.test, f.geom, o);
  TrainerConfig cfg = o.trainer;
  cfg.seed = rng::derive_seed(rng::derive_seed(5, 0), 3);
  CHECK(r.mean_accuracy == accuracy(train_svm(f.split.train, cfg), f.split.test));
  REQUIRE(r.trials.size() == 1);
  CHECK_FALSE(r.trials[0].theta.has_value());
}

TEST_CASE("results do not depend on the number of jobs") {
  Fixture f;
  ScenarioOptions o;
  o.trainer.epochs = 20;
  o.trials = 6;
  o.defense = MixedDefense({{0.6, 0.5}, {0.9, 0.5}});
  o.attack = AttackPlan::single(0.59, 60);
  const auto serial = evaluate_scenario(f.split.train, f.split.test, f.geom, o);
  o.jobs = 3;
  const auto parallel = evaluate_scenario(f.split.train, f.split.test, f.geom, o);
  std::ostringstream a, b;
  write_trial_csv(a, serial.trials);
  write_trial_csv(b, parallel.trials);
  CHECK(a.str() == b.str());
  CHECK(serial.mean_accuracy == parallel.mean_accuracy);
  for (const auto& t : serial.trials) {
    CHECK(t.attacked);
    CHECK((*t.theta == 0.6 || *t.theta == 0.9));
  }
}

TEST_CASE("trial csv format") {
  std::ostringstream out;
  write_trial_csv(out, {{0, std::nullopt, false, 0.5}, {1, 0.25, true, 0.75}});
  CHECK(out.str() == "trial,theta,attacked,accuracy\n0,none,0,0.5\n1,0.25,1,0.75\n");
}

TEST_CASE("realistic geometry mode runs") {
  Fixture f;
  ScenarioOptions o;
  o.trainer.epochs = 10;
  o.defense = DefenseRadius(0.8);
  o.attack = AttackPlan::single(0.79, 40);
  o.defender_geometry = GeometryMode::realistic;
  const auto r = evaluate_scenario(f.split.train, f.split.test, f.geom, o);
  CHECK(r.mean_accuracy > 0.5);
  o.trials = 0;
  CHECK_THROWS(evaluate_scenario(f.split.train, f.split.test, f.geom, o));
}

}
