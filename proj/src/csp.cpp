#include "eegdem/csp.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace eegdem {

Mat normalized_covariance(const std::vector<Mat>& scatters) {
  if (scatters.empty()) throw EmptyClass("no epochs for covariance");
  const Eigen::Index c = scatters.front().rows();
  Mat acc = Mat::Zero(c, c);
  for (const auto& s : scatters) {
    if (s.rows() != c || s.cols() != c)
      throw DimensionMismatch("scatter matrices disagree in size");
    const double tr = s.trace();
    if (!(tr > 0.0)) throw Error("zero-power epoch in covariance estimate");
    acc += s / tr;
  }
  acc /= static_cast<double>(scatters.size());
  Mat sym = 0.5 * (acc + acc.transpose());
  const double ridge = 1e-8 * sym.trace() / static_cast<double>(c);
  sym.diagonal().array() += ridge;
  return sym;
}

Mat class_covariance(const std::vector<SampleMatrix>& epochs) {
  if (epochs.empty()) throw EmptyClass("class has no epochs");
  std::vector<Mat> scatters;
  scatters.reserve(epochs.size());
  for (const auto& x : epochs) scatters.push_back(x * x.transpose());
  return normalized_covariance(scatters);
}

namespace {

void check_spd(const Mat& m, const char* which) {
  if (m.rows() != m.cols())
    throw DimensionMismatch(std::string(which) + " covariance is not square");
  const double scale = std::max(m.cwiseAbs().maxCoeff(), 1e-300);
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw NotPositiveDefinite(std::string(which) + " covariance is not symmetric");
  Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw NotPositiveDefinite(std::string(which) + " covariance is not positive definite");
}

// Make each row's largest-magnitude coefficient positive so the decomposition
// is reproducible across runs.
void fix_row_signs(Mat& w) {
  for (Eigen::Index r = 0; r < w.rows(); ++r) {
    Eigen::Index idx = 0;
    w.row(r).cwiseAbs().maxCoeff(&idx);
    if (w(r, idx) < 0.0) w.row(r) = -w.row(r);
  }
}

}  // namespace

SpatialFilters csp_fit(const Mat& cov_a, const Mat& cov_b, int n_pairs) {
  check_spd(cov_a, "first");
  check_spd(cov_b, "second");
  if (cov_a.rows() != cov_b.rows())
    throw DimensionMismatch("covariance sizes differ: " + std::to_string(cov_a.rows()) +
                            " vs " + std::to_string(cov_b.rows()));
  const Eigen::Index c = cov_a.rows();
  if (n_pairs < 1 || 2 * n_pairs > c)
    throw DimensionMismatch("need 1 <= 2*n_pairs <= channels, got n_pairs = " +
                            std::to_string(n_pairs) + " for " + std::to_string(c) +
                            " channels");

  const Mat composite = cov_a + cov_b;
  Eigen::SelfAdjointEigenSolver<Mat> comp_es(composite);
  const Vec lam = comp_es.eigenvalues();
  if (lam.minCoeff() <= 1e-14 * lam.maxCoeff())
    throw NotPositiveDefinite("composite covariance is numerically singular");

  // Whitening: P composite P^T = I.
  const Mat whitener =
      lam.cwiseSqrt().cwiseInverse().asDiagonal() * comp_es.eigenvectors().transpose();

  Mat s = whitener * cov_a * whitener.transpose();
  s = 0.5 * (s + s.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> es(s);  // eigenvalues ascending

  Mat all_filters = es.eigenvectors().transpose() * whitener;
  fix_row_signs(all_filters);

  SpatialFilters out;
  out.n_pairs = n_pairs;
  out.W.resize(2 * n_pairs, c);
  out.eigenvalues.resize(2 * n_pairs);
  // Largest eigenvalues first, then the smallest; vector stays descending.
  for (int i = 0; i < n_pairs; ++i) {
    out.W.row(i) = all_filters.row(c - 1 - i);
    out.eigenvalues[i] = es.eigenvalues()[c - 1 - i];
  }
  for (int i = 0; i < n_pairs; ++i) {
    out.W.row(n_pairs + i) = all_filters.row(n_pairs - 1 - i);
    out.eigenvalues[n_pairs + i] = es.eigenvalues()[n_pairs - 1 - i];
  }
  return out;
}

Vec csp_features(const SampleMatrix& epoch, const SpatialFilters& filters) {
  if (epoch.rows() != filters.W.cols())
    throw DimensionMismatch("epoch has " + std::to_string(epoch.rows()) +
                            " channels, filters expect " + std::to_string(filters.W.cols()));
  const Mat projected = filters.W * epoch;
  const Eigen::Index t = projected.cols();
  Vec variances(projected.rows());
  for (Eigen::Index r = 0; r < projected.rows(); ++r) {
    const double mean = projected.row(r).mean();
    variances[r] = projected.row(r).squaredNorm() / static_cast<double>(t) - mean * mean;
  }
  const double total = variances.sum();
  return (variances / total).array().log();
}

}  // namespace eegdem
