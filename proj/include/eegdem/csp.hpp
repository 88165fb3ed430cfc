#pragma once

#include "eegdem/types.hpp"

namespace eegdem {

struct EmptyClass : Error { using Error::Error; };
struct NotPositiveDefinite : Error { using Error::Error; };

struct SpatialFilters {
  BandDef band;       // filled by the filter-bank layer
  Mat W;              // filters x channels; rows simultaneously diagonalize both classes
  Vec eigenvalues;    // per filter, in [0,1], sorted descending
  int n_pairs = 0;
};

/// Average of trace-normalized scatter matrices (X X^T per epoch), symmetrized,
/// plus a ridge of 1e-8 * trace / channels for positive definiteness.
Mat normalized_covariance(const std::vector<Mat>& scatters);

/// Per-class covariance from raw epochs.
Mat class_covariance(const std::vector<SampleMatrix>& epochs);

/// Solves cov_a w = lambda (cov_a + cov_b) w by whitening the composite and
/// eigendecomposing the whitened cov_a. Returns the n_pairs filters with the
/// largest eigenvalues and the n_pairs with the smallest. Filter rows are
/// normalized so w^T (cov_a + cov_b) w = 1; row signs are fixed by making the
/// largest-magnitude coefficient positive.
SpatialFilters csp_fit(const Mat& cov_a, const Mat& cov_b, int n_pairs = 2);

/// Log of each projected channel's variance share: log(var_i / sum_j var_j).
Vec csp_features(const SampleMatrix& epoch, const SpatialFilters& filters);

}  // namespace eegdem
