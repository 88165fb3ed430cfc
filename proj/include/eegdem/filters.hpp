#pragma once

#include "eegdem/types.hpp"

namespace eegdem {

struct BadBandEdges : Error { using Error::Error; };
struct EvenTapCount : Error { using Error::Error; };
struct SignalTooShort : Error { using Error::Error; };

struct FilterKernel {
  enum class Kind { Bandpass, Notch };

  Vec taps;       // odd count, symmetric (linear phase)
  double fs = 0.0;
  Kind kind = Kind::Bandpass;
  double f_a = 0.0;  // bandpass: f_low / notch: f0
  double f_b = 0.0;  // bandpass: f_high / notch: bandwidth

  int n_taps() const { return static_cast<int>(taps.size()); }
};

/// Hamming-windowed-sinc linear-phase band-pass.
FilterKernel design_bandpass(double f_low, double f_high, double fs, int n_taps);

/// Band-stop (spectral inversion of a narrow band-pass) centred on f0.
FilterKernel design_notch(double f0, double bandwidth, double fs, int n_taps);

/// Forward-backward zero-phase filtering with odd-reflection edge padding.
/// Output length equals input length. Requires length > 3 * n_taps.
Vec filtfilt(const Vec& signal, const FilterKernel& kernel);

/// filtfilt applied to every channel (row) of a channels x time matrix.
SampleMatrix filtfilt(const SampleMatrix& signals, const FilterKernel& kernel);

}  // namespace eegdem
