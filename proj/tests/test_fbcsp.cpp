#include "eegdem/fbcsp.hpp"

#include "eegdem/filters.hpp"
#include "eegdem/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>

using namespace eegdem;

namespace {

// Two-class epochs where class B carries extra alpha-band (10 Hz) power on the
// first `hot_channels` channels.
EpochSet two_class_epochs(int trials_per_class, int n_channels = 8,
                          int n_samples = 1024, double alpha_boost = 3.0,
                          int hot_channels = 3, std::uint64_t seed = 99) {
  EpochSet e;
  e.montage.fs = 256.0;
  for (int c = 0; c < n_channels; ++c)
    e.montage.channel_names.push_back("CH" + std::to_string(c));

  const std::uint64_t key = derive_key(seed, "fbcsp-data");
  std::uint64_t counter = 0;
  for (int cls = 0; cls < 2; ++cls) {
    for (int t = 0; t < trials_per_class; ++t) {
      SampleMatrix m(n_channels, n_samples);
      for (int c = 0; c < n_channels; ++c) {
        const double phase = uniform01(key, counter++) * 2.0 * std::numbers::pi;
        for (int i = 0; i < n_samples; ++i) {
          double v = normal01(key, counter * 4096 + i);
          if (cls == 1 && c < hot_channels)
            v += alpha_boost * std::sin(2.0 * std::numbers::pi * 10.0 * i / 256.0 + phase);
          m(c, i) = v;
        }
        ++counter;
      }
      e.epochs.push_back(std::move(m));
      e.labels.push_back(cls == 0 ? ClassLabel::NC : ClassLabel::DEM);
      e.subject_ids.push_back((cls == 0 ? "NC0" : "DEM0") + std::to_string(t % 5));
    }
  }
  return e;
}

std::vector<int> iota_trials(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

}  // namespace

TEST_CASE("decompose_epochs reduces each band to per-trial statistics") {
  const EpochSet e = two_class_epochs(3);
  const BandDecomposition d = decompose_epochs(e, canonical_bands(), 513);
  CHECK(d.bands.size() == 4);
  CHECK(d.n_trials() == 6);
  for (const auto& per_band : d.stats) {
    REQUIRE(per_band.size() == 6);
    for (const auto& s : per_band) {
      CHECK(s.scatter.rows() == 8);
      CHECK(s.n_samples == 1024);
      CHECK((s.scatter - s.scatter.transpose()).cwiseAbs().maxCoeff() <= 1e-9);
    }
  }
  CHECK(d.band_index("alpha") == 2);
  CHECK_THROWS_AS(d.band_index("omega"), DimensionMismatch);
}

TEST_CASE("per-trial stats reproduce csp_features exactly") {
  const EpochSet e = two_class_epochs(4);
  const BandDecomposition d = decompose_epochs(e, canonical_bands(), 513);
  FbcspModel model = fbcsp_fit(d, iota_trials(8), {}, {2, 4, 513});

  // Reconstruct one trial's alpha-band features with the epoch-level path.
  const int band = d.band_index("alpha");
  const FilterKernel kernel = design_bandpass(8.0, 13.0, 256.0, 341);
  const SampleMatrix filtered = filtfilt(e.epochs[0], kernel);
  const auto band_pos =
      std::find_if(model.bands.begin(), model.bands.end(),
                   [](const BandDef& b) { return b.name == "alpha"; });
  REQUIRE(band_pos != model.bands.end());
  const auto bi = static_cast<std::size_t>(band_pos - model.bands.begin());
  const Vec direct = csp_features(filtered, model.filters[bi]);

  const FeatureMatrix all = fbcsp_transform(model, d, {0});
  // Compare the alpha:csp* features that survived selection.
  for (std::size_t i = 0; i < all.names.size(); ++i) {
    const auto& name = all.names[i];
    if (name.rfind("alpha:csp", 0) == 0) {
      const int f = name.back() - '0';
      CHECK(all.values(0, static_cast<Eigen::Index>(i)) ==
            doctest::Approx(direct[f]).epsilon(1e-9));
    }
  }
  (void)band;
}

TEST_CASE("mutual information ranks a label-equal feature first") {
  const std::uint64_t key = derive_key(303, "mi");
  const int n = 60;
  Mat features(n, 3);
  std::vector<int> labels;
  for (int i = 0; i < n; ++i) {
    const int y = i % 2;
    labels.push_back(y);
    features(i, 0) = normal01(key, 3 * i);                    // noise
    features(i, 1) = static_cast<double>(y);                  // equals the label
    features(i, 2) = normal01(key, 3 * i + 1) + 0.2 * y;      // weak signal
  }
  const auto top1 = mutual_information_select(features, labels, 1);
  CHECK(top1 == std::vector<int>{1});

  // A permuted (independent) feature scores near zero and below the separated one.
  const double mi_label = mutual_information(features.col(1), labels);
  const double mi_noise = mutual_information(features.col(0), labels);
  CHECK(mi_label > mi_noise + 0.2);
  CHECK(mi_noise <= 0.15);  // noise floor for n = 60
}

TEST_CASE("mutual information noise floor over repeated independent draws") {
  const std::uint64_t key = derive_key(307, "mi-floor");
  double acc = 0.0;
  const int reps = 50;
  for (int rep = 0; rep < reps; ++rep) {
    const int n = 100;
    Vec f(n);
    std::vector<int> labels;
    for (int i = 0; i < n; ++i) {
      f[i] = normal01(key, static_cast<std::uint64_t>(rep) * n + i);
      labels.push_back(i % 2);
    }
    acc += mutual_information(f, labels);
  }
  // Bias of the binned estimator under independence is roughly
  // (bins-1)(classes-1)/(2n); stay well under the separated-feature scale.
  CHECK(acc / reps <= 0.1);
}

TEST_CASE("mutual_information_select: k equal to feature count returns all, sorted") {
  const std::uint64_t key = derive_key(311, "mi-all");
  Mat features(20, 4);
  std::vector<int> labels;
  for (int i = 0; i < 20; ++i) {
    labels.push_back(i < 10 ? 0 : 1);
    for (int j = 0; j < 4; ++j)
      features(i, j) = normal01(key, static_cast<std::uint64_t>(i) * 4 + j);
  }
  CHECK(mutual_information_select(features, labels, 4) == std::vector<int>{0, 1, 2, 3});
  CHECK_THROWS_AS(mutual_information_select(features, labels, 5), BadK);
  CHECK_THROWS_AS(mutual_information_select(features, labels, 0), BadK);
}

TEST_CASE("fbcsp: 4 bands x 2 pairs yields 16 features, k = 4 selected") {
  const EpochSet e = two_class_epochs(10);
  const auto [model, features] =
      fbcsp_fit_transform(e, canonical_bands(), {}, {2, 4, 513});
  CHECK(model.n_features_pre_selection() == 16);
  CHECK(model.selected.size() == 4);
  CHECK(features.values.rows() == 20);
  CHECK(features.values.cols() == 4);
  // Selected indices unique and in range.
  for (std::size_t i = 1; i < model.selected.size(); ++i)
    CHECK(model.selected[i] > model.selected[i - 1]);
  CHECK(model.selected.back() < 16);
}

TEST_CASE("fbcsp_apply on the training set reproduces fit_transform bit-exactly") {
  const EpochSet e = two_class_epochs(6);
  const auto [model, features] =
      fbcsp_fit_transform(e, canonical_bands(), {}, {2, 4, 513});
  const FeatureMatrix again = fbcsp_apply(model, e);
  REQUIRE(again.values.rows() == features.values.rows());
  CHECK((again.values - features.values).cwiseAbs().maxCoeff() == 0.0);
  CHECK(again.names == features.names);
}

TEST_CASE("alpha-boosted class drives selection into the alpha band") {
  const EpochSet e = two_class_epochs(12, 8, 1024, 3.0, 5);
  const auto [model, features] =
      fbcsp_fit_transform(e, canonical_bands(), {}, {2, 4, 513});
  int alpha_selected = 0;
  for (int idx : model.selected)
    if (model.feature_names[idx].rfind("alpha:", 0) == 0) ++alpha_selected;
  CHECK(alpha_selected * 2 >= static_cast<int>(model.selected.size()));
}

TEST_CASE("channel masks restrict bands; empty masks drop them; full starvation falls back") {
  const EpochSet e = two_class_epochs(6);
  const BandDecomposition d = decompose_epochs(e, canonical_bands(), 513);
  const auto trials = iota_trials(12);

  // Restrict alpha to three channels, drop delta entirely.
  std::vector<std::vector<int>> masks(4);
  masks[0] = {};            // delta dropped
  masks[1] = {0, 1, 2, 3};  // theta
  masks[2] = {0, 1, 2};     // alpha: 3 channels -> 1 pair only
  masks[3] = {4, 5, 6, 7};  // beta
  const FbcspModel model = fbcsp_fit(d, trials, masks, {2, 4, 513});
  CHECK(model.bands.size() == 3);
  for (const auto& band : model.bands) CHECK(band.name != "delta");
  const auto alpha_pos = std::find_if(model.bands.begin(), model.bands.end(),
                                      [](const BandDef& b) { return b.name == "alpha"; });
  REQUIRE(alpha_pos != model.bands.end());
  CHECK(model.filters[alpha_pos - model.bands.begin()].W.rows() == 2);  // one pair
  CHECK_FALSE(model.fell_back_to_all_channels);

  // All bands starved: fall back to every channel.
  std::vector<std::vector<int>> starved(4);
  starved[1] = {3};
  const FbcspModel fallback = fbcsp_fit(d, trials, starved, {2, 4, 513});
  CHECK(fallback.fell_back_to_all_channels);
  CHECK(fallback.bands.size() == 4);
}

TEST_CASE("fbcsp_fit validates classes and trial lists") {
  const EpochSet e = two_class_epochs(3);
  const BandDecomposition d = decompose_epochs(e, canonical_bands(), 513);
  CHECK_THROWS_AS(fbcsp_fit(d, {}, {}, {2, 4, 513}), EmptyClass);
  CHECK_THROWS_AS(fbcsp_fit(d, {0, 1, 2}, {}, {2, 4, 513}), EmptyClass);  // one class
  CHECK_THROWS_AS(fbcsp_fit(d, iota_trials(6), {{0}, {0}}, {2, 4, 513}),
                  DimensionMismatch);  // wrong mask count
}

TEST_CASE("fbcsp_apply rejects mismatched channel sets and takes no labels") {
  const EpochSet e = two_class_epochs(4);
  const auto [model, features] = fbcsp_fit_transform(e, canonical_bands(), {}, {2, 4, 513});
  EpochSet other = e;
  other.montage.channel_names[0] = "XX";
  CHECK_THROWS_AS(fbcsp_apply(model, other), DimensionMismatch);

  // Scrambling labels cannot change apply's output: it never reads them.
  EpochSet scrambled = e;
  for (auto& l : scrambled.labels) l = ClassLabel::MCI;
  const FeatureMatrix out = fbcsp_apply(model, scrambled);
  CHECK((out.values - features.values).cwiseAbs().maxCoeff() == 0.0);
}
