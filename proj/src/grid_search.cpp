#include "eegdem/grid_search.hpp"

#include <algorithm>

namespace eegdem {

std::vector<GridPoint> enumerate_grid(const HyperGrid& grid) {
  if (grid.kernels.empty() || grid.C_set.empty() || grid.gamma_set.empty())
    throw Error("hyperparameter grid has an empty dimension");
  std::vector<double> c_sorted = grid.C_set;
  std::sort(c_sorted.begin(), c_sorted.end());

  std::vector<GridPoint> points;
  for (Kernel::Type kernel : grid.kernels) {
    for (double c : c_sorted) {
      if (kernel == Kernel::Type::Linear) {
        points.push_back({kernel, c, 0.0});
      } else {
        for (double gamma : grid.gamma_set) points.push_back({kernel, c, gamma});
      }
    }
  }
  return points;
}

GridSearchResult grid_search(const Mat& x_train, const std::vector<int>& y_train,
                             const Mat& x_val, const std::vector<int>& y_val,
                             const HyperGrid& grid, const SvmTrainOptions& options) {
  if (x_val.rows() == 0) throw Error("validation set must be non-empty");
  if (x_val.rows() != static_cast<Eigen::Index>(y_val.size()))
    throw LengthMismatch("validation labels do not match rows");

  const std::vector<GridPoint> points = enumerate_grid(grid);

  // Rank of each kernel in the configured order, for the tie-break.
  auto kernel_rank = [&](Kernel::Type t) {
    for (std::size_t i = 0; i < grid.kernels.size(); ++i)
      if (grid.kernels[i] == t) return i;
    return grid.kernels.size();
  };
  // True when `a` wins over `b` regardless of evaluation order.
  auto beats = [&](double acc_a, const GridPoint& a, double acc_b, const GridPoint& b) {
    if (acc_a != acc_b) return acc_a > acc_b;
    if (kernel_rank(a.kernel) != kernel_rank(b.kernel))
      return kernel_rank(a.kernel) < kernel_rank(b.kernel);
    if (a.C != b.C) return a.C < b.C;
    return a.gamma > b.gamma;
  };

  GridSearchResult result;
  result.n_candidates = static_cast<int>(points.size());
  bool have_best = false;
  for (const GridPoint& point : points) {
    Kernel kernel;
    kernel.type = point.kernel;
    kernel.gamma = point.gamma;
    SvmModel model = svm_train(x_train, y_train, kernel, point.C, options);
    result.any_unconverged |= !model.converged;

    const std::vector<int> predicted = svm_predict(model, x_val);
    int correct = 0;
    for (std::size_t i = 0; i < y_val.size(); ++i)
      if (predicted[i] == y_val[i]) ++correct;
    const double accuracy = static_cast<double>(correct) / static_cast<double>(y_val.size());

    if (!have_best || beats(accuracy, point, result.val_accuracy, result.best)) {
      have_best = true;
      result.best = point;
      result.val_accuracy = accuracy;
      result.model = std::move(model);
    }
  }
  return result;
}

}  // namespace eegdem
