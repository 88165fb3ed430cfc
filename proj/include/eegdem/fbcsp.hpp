#pragma once

#include "eegdem/csp.hpp"
#include "eegdem/types.hpp"

namespace eegdem {

struct BadK : Error { using Error::Error; };

/// Second-order statistics of one band-filtered trial. Together with the
/// sample count they determine class covariances and projected variances for
/// any channel subset, so the filtered time series need not be kept around.
struct BandTrialStats {
  Mat scatter;            // X X^T, channels x channels
  Vec row_sum;            // X * 1
  std::int64_t n_samples = 0;
};

BandTrialStats reduce_trial(const SampleMatrix& filtered_epoch);

/// Per-band, per-trial statistics for a set of trials; fold-independent, so
/// cross-validation fits reuse one decomposition.
struct BandDecomposition {
  Montage montage;
  std::vector<BandDef> bands;
  std::vector<std::vector<BandTrialStats>> stats;  // [band][trial]
  std::vector<ClassLabel> labels;                  // per trial
  std::vector<std::string> subject_ids;            // per trial

  int n_trials() const { return static_cast<int>(labels.size()); }
  int band_index(const std::string& band_name) const;
};

/// Band-pass filters each epoch per band (tap count shrunk to fit the epoch
/// when needed) and reduces to per-trial statistics.
BandDecomposition decompose_epochs(const EpochSet& epochs,
                                   const std::vector<BandDef>& bands,
                                   int n_taps = 513);

/// Mutual information between a feature and binary labels, estimated with
/// equal-frequency binning into ceil(sqrt(n)) bins.
double mutual_information(const Vec& feature, const std::vector<int>& labels01);

/// Indices of the k features with the highest estimated I(feature; class),
/// ties broken toward the lower index; returned sorted ascending.
std::vector<int> mutual_information_select(const Mat& features,
                                           const std::vector<int>& labels01, int k);

struct FbcspConfig {
  int n_pairs = 2;
  int k = 4;
  int n_taps = 513;
};

struct FbcspModel {
  Montage montage;                          // channel space the model expects
  std::vector<BandDef> bands;               // bands retained in the filter bank
  std::vector<SpatialFilters> filters;      // aligned with bands
  std::vector<std::vector<int>> channels;   // per band: montage channel indices
  std::vector<std::string> feature_names;   // concatenated, pre-selection
  std::vector<int> selected;                // indices into feature_names
  int n_pairs = 0;
  int n_taps = 0;                           // taps used when filtering epochs
  bool fell_back_to_all_channels = false;

  int n_features_pre_selection() const { return static_cast<int>(feature_names.size()); }
};

/// Fits CSP per band on the given trials and picks the top-k features by
/// mutual information on the same trials. Each band's mask lists the montage
/// channels it may use; an empty mask drops the band, and passing no masks at
/// all runs every band on every channel. Bands left with fewer than two
/// channels are dropped; if nothing remains the fit falls back to all channels
/// (flagged on the model).
FbcspModel fbcsp_fit(const BandDecomposition& decomp, const std::vector<int>& trials,
                     const std::vector<std::vector<int>>& channel_mask_per_band,
                     const FbcspConfig& config);

/// Selected log-variance features for the given trials of a decomposition.
FeatureMatrix fbcsp_transform(const FbcspModel& model, const BandDecomposition& decomp,
                              const std::vector<int>& trials);

/// Convenience wrapper over decompose + fit + transform on a training set.
std::pair<FbcspModel, FeatureMatrix> fbcsp_fit_transform(
    const EpochSet& train_epochs, const std::vector<BandDef>& bands,
    const std::vector<std::vector<int>>& channel_mask_per_band,
    const FbcspConfig& config);

/// Applies a fitted model to new epochs. Takes no labels by design.
FeatureMatrix fbcsp_apply(const FbcspModel& model, const EpochSet& epochs);

}  // namespace eegdem
