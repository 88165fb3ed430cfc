#include "eegdem/pca.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace eegdem {

namespace {

void fix_row_signs(Mat& w) {
  for (Eigen::Index r = 0; r < w.rows(); ++r) {
    Eigen::Index idx = 0;
    w.row(r).cwiseAbs().maxCoeff(&idx);
    if (w(r, idx) < 0.0) w.row(r) = -w.row(r);
  }
}

}  // namespace

PcaModel pca_fit(const Mat& x, double variance_threshold) {
  const Eigen::Index n = x.rows();
  const Eigen::Index d = x.cols();
  if (n < 2) throw Error("pca_fit needs at least 2 rows");
  if (!(variance_threshold > 0.0 && variance_threshold <= 1.0))
    throw Error("variance threshold must lie in (0, 1]");

  PcaModel model;
  model.mean = x.colwise().mean();
  const Mat centered = x.rowwise() - model.mean.transpose();

  const double total_variance = centered.squaredNorm() / static_cast<double>(n - 1);
  if (total_variance <= 0.0)
    throw DegenerateData("data has zero total variance");

  Vec eigenvalues;      // descending
  Mat components;       // rows
  const Eigen::Index rank_cap = std::min(n - 1, d);
  if (n <= d) {
    // Gram route: eigenvectors of X X^T / (n-1) lift to feature space.
    const Mat gram = centered * centered.transpose() / static_cast<double>(n - 1);
    Eigen::SelfAdjointEigenSolver<Mat> es(gram);
    eigenvalues.resize(rank_cap);
    components.resize(rank_cap, d);
    for (Eigen::Index i = 0; i < rank_cap; ++i) {
      const Eigen::Index src = n - 1 - i;  // ascending -> descending
      const double lambda = std::max(es.eigenvalues()[src], 0.0);
      eigenvalues[i] = lambda;
      if (lambda > 0.0)
        components.row(i) = (centered.transpose() * es.eigenvectors().col(src))
                                .transpose() /
                            std::sqrt(lambda * static_cast<double>(n - 1));
      else
        components.row(i).setZero();
    }
  } else {
    const Mat cov =
        centered.transpose() * centered / static_cast<double>(n - 1);
    Eigen::SelfAdjointEigenSolver<Mat> es(cov);
    eigenvalues.resize(rank_cap);
    components.resize(rank_cap, d);
    for (Eigen::Index i = 0; i < rank_cap; ++i) {
      const Eigen::Index src = d - 1 - i;
      eigenvalues[i] = std::max(es.eigenvalues()[src], 0.0);
      components.row(i) = es.eigenvectors().col(src).transpose();
    }
  }
  fix_row_signs(components);

  // Smallest k whose cumulative ratio exceeds the threshold.
  const Vec ratios = eigenvalues / total_variance;
  Eigen::Index k = rank_cap;
  double cumulative = 0.0;
  for (Eigen::Index i = 0; i < rank_cap; ++i) {
    cumulative += ratios[i];
    if (cumulative > variance_threshold || eigenvalues[i] <= 0.0) {
      k = eigenvalues[i] <= 0.0 ? i : i + 1;
      break;
    }
  }
  k = std::max<Eigen::Index>(k, 1);

  model.components = components.topRows(k);
  model.explained_variance_ratio = ratios.head(k);
  return model;
}

Mat pca_transform(const PcaModel& model, const Mat& x) {
  if (x.cols() != model.mean.size())
    throw Error("pca_transform: feature count mismatch");
  return (x.rowwise() - model.mean.transpose()) * model.components.transpose();
}

Mat pca_inverse_transform(const PcaModel& model, const Mat& reduced) {
  return (reduced * model.components).rowwise() + model.mean.transpose();
}

}  // namespace eegdem
