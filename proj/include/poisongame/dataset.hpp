#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace poisongame {

enum class Origin : std::uint8_t { genuine, poison };

/// Dense binary-labeled dataset. Labels are +1 / -1.
class LabeledDataset {
 public:
  LabeledDataset() = default;
  explicit LabeledDataset(std::size_t n_features) : n_features_(n_features) {}

  std::size_t size() const { return labels_.size(); }
  std::size_t n_features() const { return n_features_; }
  bool empty() const { return labels_.empty(); }

  std::span<const double> row(std::size_t i) const {
    return {features_.data() + i * n_features_, n_features_};
  }
  std::span<double> row(std::size_t i) { return {features_.data() + i * n_features_, n_features_}; }
  int label(std::size_t i) const { return labels_[i]; }
  Origin origin(std::size_t i) const { return origins_[i]; }

  /// Throws std::invalid_argument on dimension mismatch, a label outside
  /// {+1, -1} or a non-finite feature.
  void add(std::span<const double> features, int label, Origin origin = Origin::genuine);

  std::size_t count(int label) const;
  std::size_t count(Origin origin) const;

  /// Rows at `indices`, in that order.
  LabeledDataset subset(std::span<const std::size_t> indices) const;

  /// This dataset followed by the rows of `other`.
  LabeledDataset concat(const LabeledDataset& other) const;

  std::span<const double> features() const { return features_; }

 private:
  std::size_t n_features_ = 0;
  std::vector<double> features_;
  std::vector<int> labels_;
  std::vector<Origin> origins_;
};

/// Comma-separated numeric rows, last column the 0/1 class, no header.
/// Class 1 maps to +1 and class 0 to -1. Whitespace around cells is ignored
/// and blank lines are skipped. Errors name the offending line and column.
LabeledDataset load_csv(const std::filesystem::path& path);
LabeledDataset parse_csv(std::istream& in, const std::string& source_name = "<stream>");

struct NormStats {
  std::vector<double> mean;
  std::vector<double> scale;  // population std; 1 for constant columns
};

struct Split {
  LabeledDataset train;
  LabeledDataset test;
  NormStats stats;
};

/// Seeded shuffle, floor(train_fraction * n) rows to train, then z-score
/// normalization with statistics from the training rows only.
Split normalize_and_split(const LabeledDataset& data, double train_fraction, std::uint64_t seed);

void apply_normalization(LabeledDataset& data, const NormStats& stats);

}  // namespace poisongame
