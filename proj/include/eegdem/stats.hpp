#pragma once

#include "eegdem/types.hpp"

#include <cstdint>

namespace eegdem {

struct TooFewSamples : Error { using Error::Error; };
struct TooFewGroups : Error { using Error::Error; };
struct NoFeatureSurvives : Error { using Error::Error; };

enum class TestMethod { RankSumExact, RankSumNormal, KruskalWallis };

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  TestMethod method = TestMethod::RankSumNormal;
};

/// Two-sided Wilcoxon rank-sum. Exact enumeration of rank assignments when
/// n+m <= 12 and the pooled sample is tie-free; otherwise the normal
/// approximation with midranks, tie-corrected variance and continuity
/// correction. The statistic is the rank sum of x.
TestResult rank_sum(const std::vector<double>& x, const std::vector<double>& y);

/// Kruskal-Wallis H with tie correction; p from chi-squared with k-1 dof.
TestResult kruskal_wallis(const std::vector<std::vector<double>>& groups);

struct IntervalMask {
  std::vector<std::pair<int, int>> intervals;  // [start_sample, end_sample), disjoint, sorted
  double fs = 0.0;
  double alpha = 0.0;
  double min_len_ms = 0.0;

  bool covers(int sample) const {
    for (const auto& [lo, hi] : intervals)
      if (sample >= lo && sample < hi) return true;
    return false;
  }
  int total_samples() const {
    int n = 0;
    for (const auto& [lo, hi] : intervals) n += hi - lo;
    return n;
  }
};

/// Maximal runs of consecutive p < alpha, kept iff the run spans at least
/// ceil(min_len_ms/1000*fs) samples (8 samples at 256 Hz for 31 ms).
IntervalMask significant_intervals(const std::vector<double>& p_series, double fs,
                                   double alpha = 0.01, double min_len_ms = 31.0);

/// Names of features whose two-class rank-sum p is below alpha. Rows passed in
/// must already be restricted to the training portion of a fold.
/// Throws NoFeatureSurvives when the selection is empty.
std::vector<std::string> select_band_features(const FeatureMatrix& features,
                                              std::pair<ClassLabel, ClassLabel> classes,
                                              double alpha = 0.01);

/// Survival function of the chi-squared distribution (upper regularized gamma).
double chi_squared_sf(double x, double dof);

}  // namespace eegdem
