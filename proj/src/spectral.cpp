#include "eegdem/spectral.hpp"

#include "eegdem/parallel.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <numbers>
#include <unordered_set>

namespace eegdem {

PsdEstimate welch(const Vec& signal, double fs, int window_len, double overlap) {
  const Eigen::Index n = signal.size();
  if (n < window_len)
    throw SignalTooShort("signal length " + std::to_string(n) +
                         " below window length " + std::to_string(window_len));
  if (window_len < 2 || overlap < 0.0 || overlap >= 1.0 || fs <= 0.0)
    throw Error("bad welch parameters");

  // Periodic Hamming window (DFT-even), as spectral estimators use.
  Vec window(window_len);
  for (int i = 0; i < window_len; ++i)
    window[i] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * i / window_len);
  const double win_norm = fs * window.squaredNorm();  // density scaling

  const Eigen::Index hop =
      std::max<Eigen::Index>(1, static_cast<Eigen::Index>(std::llround(window_len * (1.0 - overlap))));
  const Eigen::Index n_segments = (n - window_len) / hop + 1;
  const Eigen::Index n_bins = window_len / 2 + 1;

  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::HalfSpectrum);

  Vec acc = Vec::Zero(n_bins);
  std::vector<double> buf(window_len);
  std::vector<std::complex<double>> spec;
  for (Eigen::Index s = 0; s < n_segments; ++s) {
    const Vec seg = signal.segment(s * hop, window_len);
    const double mean = seg.mean();
    for (int i = 0; i < window_len; ++i) buf[i] = (seg[i] - mean) * window[i];
    fft.fwd(spec, buf);
    for (Eigen::Index k = 0; k < n_bins; ++k) acc[k] += std::norm(spec[k]);
  }
  acc /= static_cast<double>(n_segments) * win_norm;
  // One-sided: double everything except DC and (for even lengths) Nyquist.
  for (Eigen::Index k = 1; k < n_bins - (window_len % 2 == 0 ? 1 : 0); ++k)
    acc[k] *= 2.0;

  PsdEstimate psd;
  psd.freqs.resize(n_bins);
  for (Eigen::Index k = 0; k < n_bins; ++k)
    psd.freqs[k] = static_cast<double>(k) * fs / window_len;
  psd.power = acc.transpose();
  psd.fs = fs;
  psd.window_len = window_len;
  psd.overlap_fraction = overlap;
  return psd;
}

double relative_power(const PsdEstimate& psd, const BandDef& band,
                      std::pair<double, double> total_range, Eigen::Index channel) {
  const auto [t_lo, t_hi] = total_range;
  if (band.f_low < t_lo || band.f_high > t_hi)
    throw BandOutsideTotal("band [" + std::to_string(band.f_low) + ", " +
                           std::to_string(band.f_high) + "] outside total range");
  if (psd.freqs.size() == 0 || psd.freqs[psd.freqs.size() - 1] < t_hi)
    throw BandOutsideTotal("PSD does not cover the total range");

  double band_sum = 0.0;
  double total_sum = 0.0;
  for (Eigen::Index k = 0; k < psd.freqs.size(); ++k) {
    const double f = psd.freqs[k];
    const double p = psd.power(channel, k);
    if (f >= t_lo && f <= t_hi) total_sum += p;
    if (band.contains(f)) band_sum += p;
  }
  if (total_sum <= 0.0)
    throw ZeroTotalPower("no power in the total range");
  return band_sum / total_sum;
}

FeatureMatrix band_power_features(const EpochSet& epochs,
                                  const std::vector<BandDef>& bands,
                                  const BandPowerOptions& options) {
  const EpochSet kept = exclude_channels(epochs, options.exclude);
  const int n_ch = kept.n_channels();
  const int n_bands = static_cast<int>(bands.size());
  const int n_trials = kept.n_trials();

  FeatureMatrix fm;
  fm.names.reserve(static_cast<std::size_t>(n_ch) * n_bands);
  std::unordered_set<std::string> seen;
  for (int c = 0; c < n_ch; ++c)
    for (int b = 0; b < n_bands; ++b) {
      std::string name = kept.montage.channel_names[c] + ":" + bands[b].name;
      if (!seen.insert(name).second)
        throw DuplicateFeatureName("duplicate feature name: " + name);
      fm.names.push_back(std::move(name));
    }

  fm.values.resize(n_trials, static_cast<Eigen::Index>(n_ch) * n_bands);
  fm.labels = kept.labels;
  fm.subject_ids = kept.subject_ids;

  parallel_for(static_cast<std::size_t>(n_trials), [&](std::size_t t) {
    for (int c = 0; c < n_ch; ++c) {
      const Vec channel = kept.epochs[t].row(c);
      const PsdEstimate psd = welch(channel, kept.montage.fs, options.window_len, options.overlap);
      for (int b = 0; b < n_bands; ++b)
        fm.values(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(c) * n_bands + b) =
            relative_power(psd, bands[b], options.total_range);
    }
  });
  return fm;
}

}  // namespace eegdem
