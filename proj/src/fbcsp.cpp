#include "eegdem/fbcsp.hpp"

#include "eegdem/filters.hpp"
#include "eegdem/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <set>

namespace eegdem {

BandTrialStats reduce_trial(const SampleMatrix& filtered_epoch) {
  BandTrialStats s;
  s.scatter = filtered_epoch * filtered_epoch.transpose();
  s.row_sum = filtered_epoch.rowwise().sum();
  s.n_samples = filtered_epoch.cols();
  return s;
}

int BandDecomposition::band_index(const std::string& band_name) const {
  for (std::size_t b = 0; b < bands.size(); ++b)
    if (bands[b].name == band_name) return static_cast<int>(b);
  throw DimensionMismatch("decomposition has no band named " + band_name);
}

BandDecomposition decompose_epochs(const EpochSet& epochs,
                                   const std::vector<BandDef>& bands, int n_taps) {
  // filtfilt needs length > 3 * taps; shrink to the largest odd count that fits.
  const auto len = static_cast<int>(epochs.n_samples_per_trial());
  int taps = std::min(n_taps, (len - 1) / 3);
  if (taps % 2 == 0) --taps;
  if (taps < 31)
    throw SignalTooShort("epochs of " + std::to_string(len) +
                         " samples are too short for band filtering");

  BandDecomposition d;
  d.montage = epochs.montage;
  d.bands = bands;
  d.labels = epochs.labels;
  d.subject_ids = epochs.subject_ids;
  d.stats.resize(bands.size());

  const double fs = epochs.montage.fs;
  for (std::size_t b = 0; b < bands.size(); ++b) {
    const FilterKernel kernel = design_bandpass(bands[b].f_low, bands[b].f_high, fs, taps);
    auto& per_trial = d.stats[b];
    per_trial.resize(epochs.epochs.size());
    parallel_for(epochs.epochs.size(), [&](std::size_t t) {
      per_trial[t] = reduce_trial(filtfilt(epochs.epochs[t], kernel));
    });
  }
  return d;
}

double mutual_information(const Vec& feature, const std::vector<int>& labels01) {
  const auto n = static_cast<int>(feature.size());
  if (n != static_cast<int>(labels01.size()) || n == 0)
    throw DimensionMismatch("feature/label length mismatch");
  const int n_bins = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return feature[a] < feature[b]; });

  // joint[bin][class]
  std::vector<std::array<double, 2>> joint(n_bins, {0.0, 0.0});
  std::array<double, 2> class_count = {0.0, 0.0};
  for (int pos = 0; pos < n; ++pos) {
    const int bin = static_cast<int>((static_cast<long long>(pos) * n_bins) / n);
    const int y = labels01[order[pos]] ? 1 : 0;
    joint[bin][y] += 1.0;
    class_count[y] += 1.0;
  }
  double mi = 0.0;
  for (int b = 0; b < n_bins; ++b) {
    const double bin_count = joint[b][0] + joint[b][1];
    if (bin_count == 0.0) continue;
    for (int y = 0; y < 2; ++y) {
      if (joint[b][y] == 0.0 || class_count[y] == 0.0) continue;
      const double pxy = joint[b][y] / n;
      mi += pxy * std::log(pxy * n * n / (bin_count * class_count[y]));
    }
  }
  return mi;
}

std::vector<int> mutual_information_select(const Mat& features,
                                           const std::vector<int>& labels01, int k) {
  const auto n_feat = static_cast<int>(features.cols());
  if (k < 1 || k > n_feat)
    throw BadK("k = " + std::to_string(k) + " outside [1, " + std::to_string(n_feat) + "]");

  std::vector<std::pair<double, int>> scored(n_feat);
  for (int f = 0; f < n_feat; ++f)
    scored[f] = {mutual_information(features.col(f), labels01), f};
  std::stable_sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  std::vector<int> selected;
  for (int i = 0; i < k; ++i) selected.push_back(scored[i].second);
  std::sort(selected.begin(), selected.end());
  return selected;
}

namespace {

// Projected-variance features straight from the cached statistics:
// var(wX) = w'Sw/T - (w'm/T)^2.
Vec stats_features(const BandTrialStats& s, const std::vector<int>& channels,
                   const SpatialFilters& filters) {
  const auto n_ch = static_cast<Eigen::Index>(channels.size());
  Mat sub_scatter(n_ch, n_ch);
  Vec sub_sum(n_ch);
  for (Eigen::Index i = 0; i < n_ch; ++i) {
    sub_sum[i] = s.row_sum[channels[i]];
    for (Eigen::Index j = 0; j < n_ch; ++j)
      sub_scatter(i, j) = s.scatter(channels[i], channels[j]);
  }
  const double t = static_cast<double>(s.n_samples);
  Vec variances(filters.W.rows());
  for (Eigen::Index r = 0; r < filters.W.rows(); ++r) {
    const Vec w = filters.W.row(r);
    const double mean = w.dot(sub_sum) / t;
    variances[r] = w.dot(sub_scatter * w) / t - mean * mean;
  }
  const double total = variances.sum();
  return (variances / total).array().log();
}

Mat masked_covariance(const std::vector<BandTrialStats>& per_trial,
                      const std::vector<int>& trials, const std::vector<int>& channels) {
  std::vector<Mat> scatters;
  scatters.reserve(trials.size());
  const auto n_ch = static_cast<Eigen::Index>(channels.size());
  for (int t : trials) {
    Mat sub(n_ch, n_ch);
    for (Eigen::Index i = 0; i < n_ch; ++i)
      for (Eigen::Index j = 0; j < n_ch; ++j)
        sub(i, j) = per_trial[t].scatter(channels[i], channels[j]);
    scatters.push_back(std::move(sub));
  }
  return normalized_covariance(scatters);
}

// One row of concatenated per-band features for a trial.
Vec concatenated_features(const FbcspModel& model, const BandDecomposition& decomp,
                          int trial) {
  Vec full(model.feature_names.size());
  Eigen::Index col = 0;
  for (std::size_t b = 0; b < model.bands.size(); ++b) {
    const int db = decomp.band_index(model.bands[b].name);
    const Vec f =
        stats_features(decomp.stats[db][trial], model.channels[b], model.filters[b]);
    full.segment(col, f.size()) = f;
    col += f.size();
  }
  return full;
}

}  // namespace

FbcspModel fbcsp_fit(const BandDecomposition& decomp, const std::vector<int>& trials,
                     const std::vector<std::vector<int>>& channel_mask_per_band,
                     const FbcspConfig& config) {
  if (!channel_mask_per_band.empty() &&
      channel_mask_per_band.size() != decomp.bands.size())
    throw DimensionMismatch("one channel mask per band required");
  if (trials.empty()) throw EmptyClass("no training trials");

  // Two classes, ordered by severity; the less severe one drives the
  // large-eigenvalue side so fits are reproducible.
  std::set<ClassLabel> present;
  for (int t : trials) present.insert(decomp.labels[t]);
  if (present.size() != 2)
    throw EmptyClass("fbcsp_fit requires exactly two classes, got " +
                     std::to_string(present.size()));
  const ClassLabel class_a = *present.begin();

  std::vector<int> trials_a;
  std::vector<int> trials_b;
  for (int t : trials)
    (decomp.labels[t] == class_a ? trials_a : trials_b).push_back(t);

  std::vector<int> every_channel(decomp.montage.n_channels());
  std::iota(every_channel.begin(), every_channel.end(), 0);

  // A band's mask lists the montage channels it may use; an empty mask drops
  // the band. No masks at all means every band runs unrestricted.
  auto build = [&](bool unrestricted, FbcspModel& model) {
    for (std::size_t b = 0; b < decomp.bands.size(); ++b) {
      const std::vector<int>& channels =
          unrestricted || channel_mask_per_band.empty() ? every_channel
                                                        : channel_mask_per_band[b];
      const int pairs =
          std::min<int>(config.n_pairs, static_cast<int>(channels.size()) / 2);
      if (pairs < 1) continue;  // too few channels for spatial filtering

      const Mat cov_a = masked_covariance(decomp.stats[b], trials_a, channels);
      const Mat cov_b = masked_covariance(decomp.stats[b], trials_b, channels);
      SpatialFilters filters = csp_fit(cov_a, cov_b, pairs);
      filters.band = decomp.bands[b];

      for (int f = 0; f < 2 * pairs; ++f)
        model.feature_names.push_back(decomp.bands[b].name + ":csp" + std::to_string(f));
      model.bands.push_back(decomp.bands[b]);
      model.channels.push_back(channels);
      model.filters.push_back(std::move(filters));
    }
  };

  FbcspModel model;
  model.montage = decomp.montage;
  model.n_pairs = config.n_pairs;
  model.n_taps = config.n_taps;
  build(false, model);
  if (model.bands.empty()) {
    // Every band was starved of channels; retry unrestricted.
    model.fell_back_to_all_channels = true;
    build(true, model);
  }
  if (model.bands.empty())
    throw EmptyClass("no band has enough channels for CSP");

  Mat train_features(trials.size(), model.feature_names.size());
  std::vector<int> labels01;
  labels01.reserve(trials.size());
  for (std::size_t r = 0; r < trials.size(); ++r) {
    train_features.row(static_cast<Eigen::Index>(r)) =
        concatenated_features(model, decomp, trials[r]).transpose();
    labels01.push_back(decomp.labels[trials[r]] == class_a ? 0 : 1);
  }
  const int k = std::min<int>(config.k, static_cast<int>(model.feature_names.size()));
  model.selected = mutual_information_select(train_features, labels01, k);
  return model;
}

FeatureMatrix fbcsp_transform(const FbcspModel& model, const BandDecomposition& decomp,
                              const std::vector<int>& trials) {
  FeatureMatrix fm;
  for (int idx : model.selected) fm.names.push_back(model.feature_names[idx]);
  fm.values.resize(static_cast<Eigen::Index>(trials.size()),
                   static_cast<Eigen::Index>(model.selected.size()));
  for (std::size_t r = 0; r < trials.size(); ++r) {
    const Vec full = concatenated_features(model, decomp, trials[r]);
    for (std::size_t i = 0; i < model.selected.size(); ++i)
      fm.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i)) =
          full[model.selected[i]];
    fm.labels.push_back(decomp.labels[trials[r]]);
    fm.subject_ids.push_back(decomp.subject_ids[trials[r]]);
  }
  return fm;
}

std::pair<FbcspModel, FeatureMatrix> fbcsp_fit_transform(
    const EpochSet& train_epochs, const std::vector<BandDef>& bands,
    const std::vector<std::vector<int>>& channel_mask_per_band,
    const FbcspConfig& config) {
  const BandDecomposition decomp = decompose_epochs(train_epochs, bands, config.n_taps);
  std::vector<int> trials(decomp.n_trials());
  std::iota(trials.begin(), trials.end(), 0);
  FbcspModel model = fbcsp_fit(decomp, trials, channel_mask_per_band, config);
  FeatureMatrix features = fbcsp_transform(model, decomp, trials);
  return {std::move(model), std::move(features)};
}

FeatureMatrix fbcsp_apply(const FbcspModel& model, const EpochSet& epochs) {
  if (epochs.montage.channel_names != model.montage.channel_names)
    throw DimensionMismatch("epochs and model disagree on the channel set");
  const BandDecomposition decomp = decompose_epochs(epochs, model.bands, model.n_taps);
  std::vector<int> trials(decomp.n_trials());
  std::iota(trials.begin(), trials.end(), 0);
  return fbcsp_transform(model, decomp, trials);
}

}  // namespace eegdem
