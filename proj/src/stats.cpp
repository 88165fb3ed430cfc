#include "eegdem/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace eegdem {

namespace {

// Midranks of the pooled sample (1-based; ties share the average rank).
std::vector<double> midranks(const std::vector<double>& pooled) {
  const std::size_t n = pooled.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return pooled[a] < pooled[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) ++j;
    const double shared = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
    i = j + 1;
  }
  return ranks;
}

double tie_term(const std::vector<double>& pooled) {
  std::map<double, int> counts;
  for (double v : pooled) ++counts[v];
  double t = 0.0;
  for (const auto& [value, c] : counts)
    t += static_cast<double>(c) * c * c - c;
  return t;
}

bool has_ties(const std::vector<double>& pooled) {
  std::vector<double> sorted = pooled;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

double normal_sf_two_sided(double z) {
  return std::erfc(std::abs(z) / std::sqrt(2.0));
}

// Number of ways to pick k ranks out of {1..n_total} with each possible sum.
// Returns count[k][s]; sums fit easily for n_total <= 12.
std::vector<std::vector<double>> rank_sum_counts(int n_total, int k) {
  const int max_sum = n_total * (n_total + 1) / 2;
  std::vector<std::vector<double>> count(
      k + 1, std::vector<double>(max_sum + 1, 0.0));
  count[0][0] = 1.0;
  for (int r = 1; r <= n_total; ++r)
    for (int kk = std::min(k, r); kk >= 1; --kk)
      for (int s = max_sum; s >= r; --s)
        if (count[kk - 1][s - r] > 0.0) count[kk][s] += count[kk - 1][s - r];
  return count;
}

}  // namespace

TestResult rank_sum(const std::vector<double>& x, const std::vector<double>& y) {
  const int n = static_cast<int>(x.size());
  const int m = static_cast<int>(y.size());
  if (n < 2 || m < 2)
    throw TooFewSamples("rank_sum needs at least 2 samples per group");

  std::vector<double> pooled = x;
  pooled.insert(pooled.end(), y.begin(), y.end());
  const int N = n + m;
  const std::vector<double> ranks = midranks(pooled);
  double w = 0.0;
  for (int i = 0; i < n; ++i) w += ranks[i];

  TestResult res;
  res.statistic = w;

  if (N <= 12 && !has_ties(pooled)) {
    // Exact two-sided p over all C(N, n) equally likely rank assignments:
    // the tail mass at least as far from the mean as the observed sum.
    const auto count = rank_sum_counts(N, n);
    const int max_sum = N * (N + 1) / 2;
    const int twice_mean = n * (N + 1);
    const int observed_dev = std::abs(2 * static_cast<int>(std::llround(w)) - twice_mean);
    double extreme = 0.0;
    double total = 0.0;
    for (int s = 0; s <= max_sum; ++s) {
      const double c = count[n][s];
      if (c == 0.0) continue;
      total += c;
      if (std::abs(2 * s - twice_mean) >= observed_dev) extreme += c;
    }
    res.p_value = extreme / total;
    res.method = TestMethod::RankSumExact;
    return res;
  }

  const double mean = n * (N + 1) / 2.0;
  const double tie = tie_term(pooled);
  const double var =
      (static_cast<double>(n) * m / 12.0) *
      ((N + 1) - tie / (static_cast<double>(N) * (N - 1)));
  if (var <= 0.0) {  // every pooled value identical
    res.p_value = 1.0;
    res.method = TestMethod::RankSumNormal;
    return res;
  }
  double diff = w - mean;
  // Continuity correction toward the mean.
  if (diff > 0.5) diff -= 0.5;
  else if (diff < -0.5) diff += 0.5;
  else diff = 0.0;
  res.p_value = normal_sf_two_sided(diff / std::sqrt(var));
  res.method = TestMethod::RankSumNormal;
  return res;
}

TestResult kruskal_wallis(const std::vector<std::vector<double>>& groups) {
  const int k = static_cast<int>(groups.size());
  if (k < 3) throw TooFewGroups("kruskal_wallis needs at least 3 groups");
  std::vector<double> pooled;
  for (const auto& g : groups) {
    if (g.size() < 2)
      throw TooFewSamples("kruskal_wallis needs at least 2 samples per group");
    pooled.insert(pooled.end(), g.begin(), g.end());
  }
  const int N = static_cast<int>(pooled.size());
  const std::vector<double> ranks = midranks(pooled);

  double h = 0.0;
  std::size_t offset = 0;
  for (const auto& g : groups) {
    double sum = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) sum += ranks[offset + i];
    h += sum * sum / static_cast<double>(g.size());
    offset += g.size();
  }
  h = 12.0 / (static_cast<double>(N) * (N + 1)) * h - 3.0 * (N + 1);

  const double correction =
      1.0 - tie_term(pooled) / (static_cast<double>(N) * N * N - N);
  TestResult res;
  res.method = TestMethod::KruskalWallis;
  if (correction <= 0.0) {  // all observations tied
    res.statistic = 0.0;
    res.p_value = 1.0;
    return res;
  }
  res.statistic = h / correction;
  res.p_value = chi_squared_sf(res.statistic, k - 1.0);
  return res;
}

IntervalMask significant_intervals(const std::vector<double>& p_series, double fs,
                                   double alpha, double min_len_ms) {
  for (double p : p_series)
    if (!(p >= 0.0 && p <= 1.0)) throw Error("p values must lie in [0,1]");
  const int min_len = static_cast<int>(std::ceil(min_len_ms / 1000.0 * fs));

  IntervalMask mask;
  mask.fs = fs;
  mask.alpha = alpha;
  mask.min_len_ms = min_len_ms;

  const int n = static_cast<int>(p_series.size());
  int run_start = -1;
  for (int i = 0; i <= n; ++i) {
    const bool sig = i < n && p_series[i] < alpha;
    if (sig && run_start < 0) run_start = i;
    if (!sig && run_start >= 0) {
      if (i - run_start >= min_len) mask.intervals.emplace_back(run_start, i);
      run_start = -1;
    }
  }
  return mask;
}

std::vector<std::string> select_band_features(const FeatureMatrix& features,
                                              std::pair<ClassLabel, ClassLabel> classes,
                                              double alpha) {
  std::vector<Eigen::Index> rows_a;
  std::vector<Eigen::Index> rows_b;
  for (Eigen::Index r = 0; r < features.n_samples(); ++r) {
    if (features.labels[r] == classes.first) rows_a.push_back(r);
    else if (features.labels[r] == classes.second) rows_b.push_back(r);
    else throw Error("feature matrix contains a class outside the requested pair");
  }
  if (rows_a.empty() || rows_b.empty())
    throw Error("both classes of the pair must be present");

  std::vector<std::string> selected;
  for (Eigen::Index c = 0; c < features.n_features(); ++c) {
    std::vector<double> a;
    std::vector<double> b;
    a.reserve(rows_a.size());
    b.reserve(rows_b.size());
    for (Eigen::Index r : rows_a) a.push_back(features.values(r, c));
    for (Eigen::Index r : rows_b) b.push_back(features.values(r, c));
    if (rank_sum(a, b).p_value < alpha)
      selected.push_back(features.names[c]);
  }
  if (selected.empty())
    throw NoFeatureSurvives("no feature significant at alpha = " + std::to_string(alpha));
  return selected;
}

// Upper regularized incomplete gamma via series / continued fraction.
static double gamma_series_p(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int i = 1; i < 500; ++i) {
    term *= x / (a + i);
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

static double gamma_cf_q(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -static_cast<double>(i) * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-15) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double chi_squared_sf(double x, double dof) {
  if (x <= 0.0) return 1.0;
  const double a = dof / 2.0;
  const double xx = x / 2.0;
  if (xx < a + 1.0) return 1.0 - gamma_series_p(a, xx);
  return gamma_cf_q(a, xx);
}

}  // namespace eegdem
