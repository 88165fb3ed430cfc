#pragma once

#include "eegdem/types.hpp"

namespace eegdem {

struct DegenerateData : Error { using Error::Error; };

struct PcaModel {
  Vec mean;                       // per input feature
  Mat components;                 // k x d, orthonormal rows
  Vec explained_variance_ratio;   // descending, sums to <= 1

  Eigen::Index n_components() const { return components.rows(); }
};

/// Centers X and keeps the smallest number of principal components whose
/// cumulative explained-variance ratio exceeds the threshold. Uses the Gram
/// matrix when there are fewer rows than columns.
PcaModel pca_fit(const Mat& x, double variance_threshold = 0.9);

Mat pca_transform(const PcaModel& model, const Mat& x);

/// Back-projection onto the kept components (for reconstruction checks).
Mat pca_inverse_transform(const PcaModel& model, const Mat& reduced);

}  // namespace eegdem
