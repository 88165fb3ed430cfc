#include "eegdem/filters.hpp"

#include "eegdem/fft.hpp"
#include "eegdem/parallel.hpp"

#include <cmath>
#include <numbers>

namespace eegdem {

namespace {

double sinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

// Ideal low-pass taps at cutoff fc (Hz), centred on (n_taps-1)/2, with a
// symmetric Hamming window.
Vec windowed_lowpass(double fc, double fs, int n_taps) {
  const int mid = (n_taps - 1) / 2;
  const double norm = 2.0 * fc / fs;
  Vec taps(n_taps);
  for (int i = 0; i < n_taps; ++i) {
    const double w =
        0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * i / (n_taps - 1));
    taps[i] = norm * sinc(norm * (i - mid)) * w;
  }
  return taps;
}

void check_taps(int n_taps) {
  if (n_taps % 2 == 0)
    throw EvenTapCount("tap count must be odd, got " + std::to_string(n_taps));
  if (n_taps < 31)
    throw Error("tap count must be >= 31, got " + std::to_string(n_taps));
}

}  // namespace

FilterKernel design_bandpass(double f_low, double f_high, double fs, int n_taps) {
  check_taps(n_taps);
  if (!(0.0 < f_low && f_low < f_high && f_high < fs / 2.0))
    throw BadBandEdges("need 0 < f_low < f_high < fs/2, got [" +
                       std::to_string(f_low) + ", " + std::to_string(f_high) +
                       "] at fs " + std::to_string(fs));
  FilterKernel k;
  k.taps = windowed_lowpass(f_high, fs, n_taps) - windowed_lowpass(f_low, fs, n_taps);
  k.fs = fs;
  k.kind = FilterKernel::Kind::Bandpass;
  k.f_a = f_low;
  k.f_b = f_high;
  return k;
}

FilterKernel design_notch(double f0, double bandwidth, double fs, int n_taps) {
  check_taps(n_taps);
  if (!(bandwidth > 0.0 && f0 - bandwidth / 2.0 > 0.0 && f0 + bandwidth / 2.0 < fs / 2.0))
    throw BadBandEdges("notch band [" + std::to_string(f0 - bandwidth / 2.0) + ", " +
                       std::to_string(f0 + bandwidth / 2.0) + "] outside (0, fs/2)");
  FilterKernel pass = design_bandpass(f0 - bandwidth / 2.0, f0 + bandwidth / 2.0, fs, n_taps);
  FilterKernel k;
  k.taps = -pass.taps;
  k.taps[(n_taps - 1) / 2] += 1.0;  // delta minus band-pass
  k.fs = fs;
  k.kind = FilterKernel::Kind::Notch;
  k.f_a = f0;
  k.f_b = bandwidth;
  return k;
}

Vec filtfilt(const Vec& signal, const FilterKernel& kernel) {
  const Eigen::Index n = signal.size();
  const Eigen::Index m = kernel.taps.size();
  if (n <= 3 * m)
    throw SignalTooShort("signal length " + std::to_string(n) +
                         " must exceed 3 * n_taps = " + std::to_string(3 * m));

  // Odd reflection about both endpoints keeps the signal continuous in value
  // at the boundary, which limits filter start-up transients.
  const Eigen::Index pad = m;
  Vec padded(n + 2 * pad);
  for (Eigen::Index i = 0; i < pad; ++i)
    padded[i] = 2.0 * signal[0] - signal[pad - i];
  padded.segment(pad, n) = signal;
  for (Eigen::Index i = 0; i < pad; ++i)
    padded[pad + n + i] = 2.0 * signal[n - 1] - signal[n - 2 - i];

  Vec once = convolve_same(padded, kernel.taps);
  once.reverseInPlace();
  Vec twice = convolve_same(once, kernel.taps);
  twice.reverseInPlace();
  return twice.segment(pad, n);
}

SampleMatrix filtfilt(const SampleMatrix& signals, const FilterKernel& kernel) {
  SampleMatrix out(signals.rows(), signals.cols());
  parallel_for(static_cast<std::size_t>(signals.rows()), [&](std::size_t c) {
    const Vec row = signals.row(static_cast<Eigen::Index>(c));
    out.row(static_cast<Eigen::Index>(c)) = filtfilt(row, kernel).transpose();
  });
  return out;
}

}  // namespace eegdem
