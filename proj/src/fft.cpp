#include "eegdem/fft.hpp"

#include <unsupported/Eigen/FFT>

namespace eegdem {

std::vector<std::complex<double>> rfft(const Vec& x) {
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::HalfSpectrum);
  std::vector<double> in(x.data(), x.data() + x.size());
  std::vector<std::complex<double>> out;
  fft.fwd(out, in);
  return out;
}

Vec irfft(const std::vector<std::complex<double>>& spectrum, Eigen::Index n) {
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::HalfSpectrum);
  std::vector<double> out;
  fft.inv(out, spectrum, static_cast<int>(n));
  return Eigen::Map<const Vec>(out.data(), n);
}

static Vec convolve_same_direct(const Vec& x, const Vec& h) {
  const Eigen::Index n = x.size();
  const Eigen::Index m = h.size();
  const Eigen::Index half = (m - 1) / 2;
  Vec y = Vec::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    // y[i] = sum_k h[k] * x[i - k + half]
    const Eigen::Index k_lo = std::max<Eigen::Index>(0, i + half - (n - 1));
    const Eigen::Index k_hi = std::min<Eigen::Index>(m - 1, i + half);
    double acc = 0.0;
    for (Eigen::Index k = k_lo; k <= k_hi; ++k) acc += h[k] * x[i - k + half];
    y[i] = acc;
  }
  return y;
}

static Eigen::Index next_pow2(Eigen::Index n) {
  Eigen::Index p = 1;
  while (p < n) p <<= 1;
  return p;
}

Vec convolve_same(const Vec& x, const Vec& kernel) {
  const Eigen::Index n = x.size();
  const Eigen::Index m = kernel.size();
  if (n == 0 || m == 0) return Vec::Zero(n);
  if (static_cast<double>(n) * static_cast<double>(m) < 1 << 18)
    return convolve_same_direct(x, kernel);

  const Eigen::Index full = n + m - 1;
  const Eigen::Index nfft = next_pow2(full);
  Vec xp = Vec::Zero(nfft);
  xp.head(n) = x;
  Vec hp = Vec::Zero(nfft);
  hp.head(m) = kernel;

  auto xf = rfft(xp);
  const auto hf = rfft(hp);
  for (std::size_t k = 0; k < xf.size(); ++k) xf[k] *= hf[k];
  const Vec y_full = irfft(xf, nfft);

  const Eigen::Index half = (m - 1) / 2;
  return y_full.segment(half, n);
}

}  // namespace eegdem
