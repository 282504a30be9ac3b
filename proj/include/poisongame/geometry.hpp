#pragma once

#include <array>
#include <span>
#include <vector>

#include "poisongame/dataset.hpp"

namespace poisongame {

/// Which rows the defender uses to locate each class.
enum class GeometryMode {
  /// Genuine rows only: the filter is anchored on the original data.
  clean,
  /// Every row, as a defender who cannot tell poison from genuine data would.
  realistic,
};

struct ClassShape {
  std::vector<double> centroid;   // coordinate-wise median
  std::vector<double> distances;  // sorted ascending
};

class ClassGeometry {
 public:
  ClassGeometry(ClassShape positive, ClassShape negative)
      : shapes_{std::move(positive), std::move(negative)} {}

  const ClassShape& shape(int label) const { return shapes_[label > 0 ? 0 : 1]; }
  std::span<const double> centroid(int label) const { return shape(label).centroid; }

  /// Linear-interpolated quantile of the sorted distance list. Percentile 1
  /// is the boundary B, the largest distance.
  double radius_at(int label, double percentile) const;

 private:
  std::array<ClassShape, 2> shapes_;
};

ClassGeometry class_geometry(const LabeledDataset& train, GeometryMode mode = GeometryMode::clean);

double euclidean_distance(std::span<const double> a, std::span<const double> b);

/// Keeps rows within radius_at(label, theta) of their labeled class centroid
/// (with 1e-9 relative slack so points built at exactly that radius survive).
/// Throws std::runtime_error if a class would be emptied.
LabeledDataset filter(const LabeledDataset& data, const ClassGeometry& geom, double theta);

}  // namespace poisongame
