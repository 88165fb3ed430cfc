#pragma once

#include "eegdem/svm.hpp"

namespace eegdem {

struct HyperGrid {
  std::vector<Kernel::Type> kernels = {Kernel::Type::Rbf, Kernel::Type::Sigmoid,
                                       Kernel::Type::Linear};
  std::vector<double> C_set = {0.001, 0.01, 0.1, 1.0, 10.0, 100.0, 1000.0};
  std::vector<double> gamma_set = {1e-3, 1e-4, 1e-5, 1e-6};
};

struct GridPoint {
  Kernel::Type kernel = Kernel::Type::Linear;
  double C = 1.0;
  double gamma = 0.0;  // unused for linear
};

/// All candidates in tie-break order: kernels as listed, C ascending, gamma as
/// listed. Gamma is skipped for the linear kernel, so the default grid has
/// (2 kernels x 7 x 4) + 7 = 63 points.
std::vector<GridPoint> enumerate_grid(const HyperGrid& grid);

struct GridSearchResult {
  GridPoint best;
  double val_accuracy = 0.0;
  SvmModel model;  // trained on the training split at the winning point
  int n_candidates = 0;
  bool any_unconverged = false;
};

/// Trains one SVM per grid point on (x_train, y_train) and keeps the candidate
/// with the highest validation accuracy. Ties go to the earlier kernel, then
/// smaller C, then larger gamma; the outcome is independent of evaluation
/// order.
GridSearchResult grid_search(const Mat& x_train, const std::vector<int>& y_train,
                             const Mat& x_val, const std::vector<int>& y_val,
                             const HyperGrid& grid,
                             const SvmTrainOptions& options = {});

}  // namespace eegdem
