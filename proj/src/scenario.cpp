#include "poisongame/scenario.hpp"

#include <ostream>
#include <stdexcept>

#include "poisongame/attack.hpp"
#include "poisongame/parallel.hpp"
#include "poisongame/rng.hpp"
#include "poisongame/text.hpp"

namespace poisongame {

ScenarioResult evaluate_scenario(const LabeledDataset& train, const LabeledDataset& test,
                                 const ClassGeometry& geom, const ScenarioOptions& options) {
  if (options.trials < 1) throw std::invalid_argument("evaluate_scenario: trials must be >= 1");
  options.trainer.validate();

  auto run_trial = [&](std::size_t t) {
    const std::uint64_t trial_seed = rng::derive_seed(options.seed, t);
    std::optional<double> theta;
    if (const auto* pure = std::get_if<DefenseRadius>(&options.defense)) {
      theta = pure->theta();
    } else if (const auto* mix = std::get_if<MixedDefense>(&options.defense)) {
      rng::Engine engine(rng::derive_seed(trial_seed, 1));
      theta = mix->sample(rng::uniform01(engine));
    }

    LabeledDataset data = options.attack ? craft_attack(train, geom, *options.attack,
                                                        rng::derive_seed(trial_seed, 2))
                                         : train;
    if (theta) {
      if (options.defender_geometry == GeometryMode::realistic) {
        data = filter(data, class_geometry(data, GeometryMode::realistic), *theta);
      } else {
        data = filter(data, geom, *theta);
      }
    }
    TrainerConfig cfg = options.trainer;
    cfg.seed = rng::derive_seed(trial_seed, 3);
    const auto model = train_svm(data, cfg);
    return TrialRecord{static_cast<int>(t), theta, options.attack.has_value(),
                       accuracy(model, test)};
  };

  ScenarioResult result{0.0, parallel_map(static_cast<std::size_t>(options.trials), options.jobs,
                                          run_trial)};
  double total = 0.0;
  for (const auto& r : result.trials) total += r.accuracy;
  result.mean_accuracy = total / static_cast<double>(result.trials.size());
  return result;
}

void write_trial_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  out << "trial,theta,attacked,accuracy\n";
  for (const auto& r : records) {
    out << r.trial << ',' << (r.theta ? format_number(*r.theta) : std::string("none")) << ','
        << (r.attacked ? 1 : 0) << ',' << format_number(r.accuracy) << '\n';
  }
}

}  // namespace poisongame
