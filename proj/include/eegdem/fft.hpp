#pragma once

#include "eegdem/types.hpp"

#include <complex>
#include <vector>

namespace eegdem {

/// One-sided DFT of a real signal: n/2+1 bins for length n.
std::vector<std::complex<double>> rfft(const Vec& x);

/// Inverse of rfft; n is the original real length.
Vec irfft(const std::vector<std::complex<double>>& spectrum, Eigen::Index n);

/// Linear convolution of x with a kernel, returning the central part with the
/// same length as x (kernel assumed odd-length; its group delay is removed).
/// Switches to FFT-based convolution when the direct product is large.
Vec convolve_same(const Vec& x, const Vec& kernel);

}  // namespace eegdem
