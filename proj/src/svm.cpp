#include "eegdem/svm.hpp"

#include <cmath>
#include <limits>

namespace eegdem {

double Kernel::operator()(const Vec& a, const Vec& b) const {
  switch (type) {
    case Type::Linear:
      return a.dot(b);
    case Type::Rbf:
      return std::exp(-gamma * (a - b).squaredNorm());
    case Type::Sigmoid:
      return std::tanh(gamma * a.dot(b) + coef0);
  }
  return 0.0;
}

std::string to_string(Kernel::Type type) {
  switch (type) {
    case Kernel::Type::Linear: return "linear";
    case Kernel::Type::Rbf: return "rbf";
    case Kernel::Type::Sigmoid: return "sigmoid";
  }
  return "?";
}

Kernel::Type parse_kernel(const std::string& s) {
  if (s == "linear") return Kernel::Type::Linear;
  if (s == "rbf") return Kernel::Type::Rbf;
  if (s == "sigmoid") return Kernel::Type::Sigmoid;
  throw Error("unknown kernel: " + s);
}

SvmModel svm_train(const Mat& x, const std::vector<int>& y, const Kernel& kernel,
                   double C, const SvmTrainOptions& options) {
  const Eigen::Index n = x.rows();
  if (n != static_cast<Eigen::Index>(y.size()))
    throw LengthMismatch("labels do not match rows");
  if (n < 2) throw Error("need at least 2 samples");
  if (!(C > 0.0)) throw Error("C must be positive");
  if (!x.allFinite()) throw Error("features must be finite");

  bool has_pos = false;
  bool has_neg = false;
  for (int label : y) {
    if (label == 1) has_pos = true;
    else if (label == -1) has_neg = true;
    else throw Error("labels must be +1 or -1");
  }
  if (!has_pos || !has_neg)
    throw SingleClass("both classes must be present");

  // Q_ij = y_i y_j K(x_i, x_j), kept dense; problems here are a few hundred rows.
  Mat q(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Vec xi = x.row(i);
    for (Eigen::Index j = i; j < n; ++j) {
      const double k = kernel(xi, x.row(j));
      const double val = y[i] * y[j] * k;
      q(i, j) = val;
      q(j, i) = val;
    }
  }

  Vec alpha = Vec::Zero(n);
  Vec grad = Vec::Constant(n, -1.0);  // gradient of 1/2 a'Qa - e'a at a = 0

  const double tol = options.tolerance;
  bool converged = false;
  for (long iter = 0; iter < options.max_iterations; ++iter) {
    // Maximal violating pair over -y*grad: i from the set that can grow along
    // +y, j from the set that can shrink.
    Eigen::Index best_i = -1;
    Eigen::Index best_j = -1;
    double m_up = -std::numeric_limits<double>::infinity();
    double m_low = std::numeric_limits<double>::infinity();
    for (Eigen::Index t = 0; t < n; ++t) {
      const double v = -y[t] * grad[t];
      const bool in_up = (y[t] == 1 && alpha[t] < C) || (y[t] == -1 && alpha[t] > 0.0);
      const bool in_low = (y[t] == 1 && alpha[t] > 0.0) || (y[t] == -1 && alpha[t] < C);
      if (in_up && v > m_up) {
        m_up = v;
        best_i = t;
      }
      if (in_low && v < m_low) {
        m_low = v;
        best_j = t;
      }
    }
    if (best_i < 0 || best_j < 0 || m_up - m_low <= tol) {
      converged = true;
      break;
    }

    const Eigen::Index i = best_i;
    const Eigen::Index j = best_j;
    double curvature = q(i, i) + q(j, j) - 2.0 * y[i] * y[j] * q(i, j);
    if (curvature <= 1e-12) curvature = 1e-12;  // sigmoid kernels can be indefinite
    double step = (m_up - m_low) / curvature;

    // Box limits along the feasible direction (d_i = +y_i, d_j = -y_j).
    const double limit_i = y[i] == 1 ? C - alpha[i] : alpha[i];
    const double limit_j = y[j] == 1 ? alpha[j] : C - alpha[j];
    step = std::min(step, std::min(limit_i, limit_j));

    const double delta_i = y[i] * step;
    const double delta_j = -y[j] * step;
    alpha[i] = std::clamp(alpha[i] + delta_i, 0.0, C);
    alpha[j] = std::clamp(alpha[j] + delta_j, 0.0, C);
    grad += q.col(i) * delta_i + q.col(j) * delta_j;
  }

  SvmModel model;
  model.kernel = kernel;
  model.C = C;
  model.converged = converged;

  // Bias from unbounded support vectors (-y*grad equals it exactly there);
  // otherwise the midpoint of the violating-pair bounds.
  double bias_acc = 0.0;
  int bias_count = 0;
  const double margin = 1e-8 * C;
  double m_up = -std::numeric_limits<double>::infinity();
  double m_low = std::numeric_limits<double>::infinity();
  for (Eigen::Index t = 0; t < n; ++t) {
    const double v = -y[t] * grad[t];
    if (alpha[t] > margin && alpha[t] < C - margin) {
      bias_acc += v;
      ++bias_count;
    }
    const bool in_up = (y[t] == 1 && alpha[t] < C) || (y[t] == -1 && alpha[t] > 0.0);
    const bool in_low = (y[t] == 1 && alpha[t] > 0.0) || (y[t] == -1 && alpha[t] < C);
    if (in_up) m_up = std::max(m_up, v);
    if (in_low) m_low = std::min(m_low, v);
  }
  model.bias = bias_count > 0 ? bias_acc / bias_count : 0.5 * (m_up + m_low);

  std::vector<int> sv;
  for (Eigen::Index t = 0; t < n; ++t)
    if (alpha[t] > 0.0) sv.push_back(static_cast<int>(t));
  model.support_vectors.resize(sv.size(), x.cols());
  model.alpha.resize(sv.size());
  model.sv_y.resize(sv.size());
  for (std::size_t s = 0; s < sv.size(); ++s) {
    model.support_vectors.row(static_cast<Eigen::Index>(s)) = x.row(sv[s]);
    model.alpha[static_cast<Eigen::Index>(s)] = alpha[sv[s]];
    model.sv_y[static_cast<Eigen::Index>(s)] = y[sv[s]];
  }
  model.sv_indices = std::move(sv);
  return model;
}

Vec svm_decision(const SvmModel& model, const Mat& x) {
  if (x.cols() != model.support_vectors.cols() && model.support_vectors.rows() > 0)
    throw DimensionMismatch("feature count differs from the trained model");
  Vec out(x.rows());
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    const Vec point = x.row(r);
    double acc = model.bias;
    for (Eigen::Index s = 0; s < model.support_vectors.rows(); ++s)
      acc += model.alpha[s] * model.sv_y[s] *
             model.kernel(model.support_vectors.row(s), point);
    out[r] = acc;
  }
  return out;
}

std::vector<int> svm_predict(const SvmModel& model, const Mat& x) {
  const Vec decisions = svm_decision(model, x);
  std::vector<int> labels(decisions.size());
  for (Eigen::Index i = 0; i < decisions.size(); ++i)
    labels[i] = decisions[i] >= 0.0 ? 1 : -1;
  return labels;
}

StandardScaler StandardScaler::fit(const Mat& x) {
  StandardScaler s;
  s.mean = x.colwise().mean();
  const Mat centered = x.rowwise() - s.mean.transpose();
  s.scale =
      (centered.array().square().colwise().sum() / std::max<double>(1.0, x.rows() - 1))
          .sqrt()
          .transpose();
  for (Eigen::Index i = 0; i < s.scale.size(); ++i)
    if (s.scale[i] <= 0.0) s.scale[i] = 1.0;
  return s;
}

Mat StandardScaler::transform(const Mat& x) const {
  return (x.rowwise() - mean.transpose()).array().rowwise() /
         scale.transpose().array();
}

}  // namespace eegdem
