#include "poisongame/svm.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "poisongame/rng.hpp"

namespace poisongame {

void TrainerConfig::validate() const {
  if (epochs <= 0) throw std::invalid_argument("TrainerConfig: epochs must be > 0");
  if (!(learning_rate > 0.0)) throw std::invalid_argument("TrainerConfig: learning_rate must be > 0");
  if (!(regularization >= 0.0)) {
    throw std::invalid_argument("TrainerConfig: regularization must be >= 0");
  }
  if (!(decay >= 0.0)) throw std::invalid_argument("TrainerConfig: decay must be >= 0");
}

double SvmModel::decision(std::span<const double> x) const {
  double s = bias;
  for (std::size_t k = 0; k < x.size(); ++k) s += weights[k] * x[k];
  return s;
}

double hinge_objective(const SvmModel& model, const LabeledDataset& data, double regularization) {
  double hinge = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    hinge += std::max(0.0, 1.0 - data.label(i) * model.decision(data.row(i)));
  }
  const double norm2 = std::inner_product(model.weights.begin(), model.weights.end(),
                                          model.weights.begin(), 0.0);
  return 0.5 * regularization * norm2 + hinge / static_cast<double>(data.size());
}

std::vector<double> hinge_subgradient(const SvmModel& model, const LabeledDataset& data,
                                      double regularization) {
  const std::size_t d = model.weights.size();
  std::vector<double> g(d + 1, 0.0);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const int y = data.label(i);
    if (y * model.decision(data.row(i)) < 1.0) {
      const auto x = data.row(i);
      for (std::size_t k = 0; k < d; ++k) g[k] -= y * x[k];
      g[d] -= y;
    }
  }
  const double n = static_cast<double>(data.size());
  for (auto& v : g) v /= n;
  for (std::size_t k = 0; k < d; ++k) g[k] += regularization * model.weights[k];
  return g;
}

SvmModel train_svm(const LabeledDataset& train, const TrainerConfig& cfg) {
  cfg.validate();
  if (train.count(1) == 0 || train.count(-1) == 0) {
    throw std::invalid_argument("train_svm: both classes must be present");
  }
  const std::size_t d = train.n_features();
  SvmModel model{std::vector<double>(d, 0.0), 0.0};
  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng::Engine engine(rng::derive_seed(cfg.seed, 0x5a5a));
  double* w = model.weights.data();

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    rng::shuffle(order, engine);
    const double eta = cfg.learning_rate / (1.0 + epoch * cfg.decay);
    const double shrink = 1.0 - eta * cfg.regularization;
    for (std::size_t i : order) {
      const auto x = train.row(i);
      const double y = train.label(i);
      const double margin = y * model.decision(x);
      if (margin < 1.0) {
        const double step = eta * y;
        for (std::size_t k = 0; k < d; ++k) w[k] = shrink * w[k] + step * x[k];
        model.bias += step;
      } else {
        for (std::size_t k = 0; k < d; ++k) w[k] *= shrink;
      }
    }
    if (!std::isfinite(model.bias) || !std::isfinite(w[0])) {
      throw std::runtime_error("train_svm: training diverged at epoch " + std::to_string(epoch));
    }
  }
  const double loss = hinge_objective(model, train, cfg.regularization);
  if (!std::isfinite(loss)) throw std::runtime_error("train_svm: non-finite final objective");
  return model;
}

double accuracy(const SvmModel& model, const LabeledDataset& data) {
  if (data.empty()) throw std::invalid_argument("accuracy: empty dataset");
  std::size_t correct = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (model.predict(data.row(i)) == data.label(i)) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(data.size());
}

}  // namespace poisongame
