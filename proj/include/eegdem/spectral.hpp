#pragma once

#include "eegdem/filters.hpp"
#include "eegdem/types.hpp"

namespace eegdem {

struct BandOutsideTotal : Error { using Error::Error; };
struct ZeroTotalPower : Error { using Error::Error; };
struct DuplicateFeatureName : Error { using Error::Error; };

struct PsdEstimate {
  Vec freqs;    // 0 .. fs/2, strictly increasing
  Mat power;    // channels x freqs, V^2/Hz, one-sided density
  double fs = 0.0;
  int window_len = 0;
  double overlap_fraction = 0.0;
};

/// Welch estimate for one channel: mean of Hamming-windowed, mean-detrended
/// modified periodograms over 50%-overlapping segments. Density-scaled so that
/// sum(power) * df approximates the signal variance.
PsdEstimate welch(const Vec& signal, double fs, int window_len = 256,
                  double overlap = 0.5);

/// Fraction of PSD mass inside the band relative to the total range (both
/// total endpoints included; band bins follow the half-open convention).
double relative_power(const PsdEstimate& psd, const BandDef& band,
                      std::pair<double, double> total_range = {1.0, 30.0},
                      Eigen::Index channel = 0);

struct BandPowerOptions {
  int window_len = 256;
  double overlap = 0.5;
  std::pair<double, double> total_range = {1.0, 30.0};
  std::vector<std::string> exclude = {"Fp1", "Fp2"};
};

/// One row per trial, one "CH:BAND" column per kept channel and band.
FeatureMatrix band_power_features(const EpochSet& epochs,
                                  const std::vector<BandDef>& bands,
                                  const BandPowerOptions& options = {});

}  // namespace eegdem
