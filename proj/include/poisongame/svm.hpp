#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "poisongame/dataset.hpp"

namespace poisongame {

struct TrainerConfig {
  int epochs = 5000;
  double learning_rate = 0.01;
  double regularization = 1e-4;
  double decay = 1e-3;
  std::uint64_t seed = 1;

  void validate() const;
};

struct SvmModel {
  std::vector<double> weights;
  double bias = 0.0;

  double decision(std::span<const double> x) const;
  int predict(std::span<const double> x) const { return decision(x) >= 0.0 ? 1 : -1; }
};

/// (regularization / 2) ||w||^2 + mean_i max(0, 1 - y_i (w . x_i + b))
double hinge_objective(const SvmModel& model, const LabeledDataset& data, double regularization);

/// A subgradient of hinge_objective. Rows with margin exactly 1 contribute
/// nothing. Returns d/dw in the first n_features entries and d/db last.
std::vector<double> hinge_subgradient(const SvmModel& model, const LabeledDataset& data,
                                      double regularization);

/// Stochastic subgradient descent: each epoch visits every row once in a
/// freshly shuffled order with step learning_rate / (1 + epoch * decay).
/// Throws std::runtime_error if the objective becomes non-finite.
SvmModel train_svm(const LabeledDataset& train, const TrainerConfig& cfg);

double accuracy(const SvmModel& model, const LabeledDataset& data);

}  // namespace poisongame
