#pragma once

#include "eegdem/types.hpp"

namespace eegdem {

struct SingleClass : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };

struct Kernel {
  enum class Type { Linear, Rbf, Sigmoid };

  Type type = Type::Linear;
  double gamma = 0.0;   // rbf / sigmoid
  double coef0 = 0.0;   // sigmoid

  double operator()(const Vec& a, const Vec& b) const;
};

std::string to_string(Kernel::Type type);
Kernel::Type parse_kernel(const std::string& s);

struct SvmModel {
  Kernel kernel;
  double C = 1.0;
  Mat support_vectors;        // rows
  Vec alpha;                  // per support vector, in (0, C]
  Vec sv_y;                   // per support vector, +-1
  std::vector<int> sv_indices;  // rows of the training matrix
  double bias = 0.0;
  bool converged = true;
  ClassLabel pos_class = ClassLabel::DEM;  // mapping filled by the caller
  ClassLabel neg_class = ClassLabel::NC;

  Vec dual_coef() const { return alpha.cwiseProduct(sv_y); }
};

struct SvmTrainOptions {
  double tolerance = 1e-3;
  long max_iterations = 100000;
};

/// Soft-margin dual via SMO with maximal-violating-pair working-set selection
/// (ties resolved toward the lowest index). If the KKT gap is still above
/// tolerance at the iteration cap, the best iterate is returned with
/// converged = false.
SvmModel svm_train(const Mat& x, const std::vector<int>& y, const Kernel& kernel,
                   double C, const SvmTrainOptions& options = {});

/// Decision margins f(x) = sum_i alpha_i y_i K(x_i, x) + b.
Vec svm_decision(const SvmModel& model, const Mat& x);

/// sign(f) with ties mapped to +1.
std::vector<int> svm_predict(const SvmModel& model, const Mat& x);

/// Train/transform z-scoring; constant features get unit scale.
struct StandardScaler {
  Vec mean;
  Vec scale;

  static StandardScaler fit(const Mat& x);
  Mat transform(const Mat& x) const;
};

}  // namespace eegdem
