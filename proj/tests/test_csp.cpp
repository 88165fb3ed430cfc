#include "eegdem/csp.hpp"

#include "eegdem/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace eegdem;

namespace {

Mat random_spd(int n, std::uint64_t key, double ridge = 0.5) {
  Mat a(n, n);
  std::uint64_t counter = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = normal01(key, counter++);
  Mat spd = a * a.transpose() / n;
  spd.diagonal().array() += ridge;
  return spd;
}

SampleMatrix random_epoch(int channels, int samples, std::uint64_t key) {
  SampleMatrix x(channels, samples);
  std::uint64_t counter = 0;
  for (int c = 0; c < channels; ++c)
    for (int t = 0; t < samples; ++t) x(c, t) = normal01(key, counter++);
  return x;
}

}  // namespace

TEST_CASE("class covariance of identical rows is rank-1 plus ridge") {
  SampleMatrix epoch(3, 50);
  Vec base(50);
  for (int i = 0; i < 50; ++i) base[i] = std::sin(0.3 * i);
  for (int c = 0; c < 3; ++c) epoch.row(c) = base.transpose();

  const Mat cov = class_covariance({epoch});
  CHECK((cov - cov.transpose()).cwiseAbs().maxCoeff() == 0.0);
  Eigen::SelfAdjointEigenSolver<Mat> es(cov);
  const Vec lam = es.eigenvalues();
  CHECK(lam[2] > 0.9);                                         // dominant direction
  CHECK(lam[0] == doctest::Approx(1e-8 / 3.0).epsilon(0.01));  // ridge floor
  CHECK(lam[1] == doctest::Approx(lam[0]).epsilon(0.01));
}

TEST_CASE("covariance of iid white noise approaches I/channels") {
  std::vector<SampleMatrix> epochs;
  for (int e = 0; e < 30; ++e)
    epochs.push_back(random_epoch(30, 10000, derive_key(501 + e, "cov-noise")));
  const Mat cov = class_covariance(epochs);
  const Mat target = Mat::Identity(30, 30) / 30.0;
  for (int i = 0; i < 30; ++i)
    for (int j = 0; j < 30; ++j) {
      if (i == j) CHECK(cov(i, j) == doctest::Approx(target(i, j)).epsilon(0.05));
      else CHECK(std::abs(cov(i, j)) <= 0.05 / 30.0);
    }
}

TEST_CASE("class covariance is symmetric and rejects empty input") {
  const Mat cov = class_covariance({random_epoch(5, 200, derive_key(77, "cov-sym"))});
  CHECK((cov - cov.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(class_covariance({}), EmptyClass);
}

TEST_CASE("csp on equal covariances gives all eigenvalues 1/2") {
  const Mat cov = random_spd(6, derive_key(601, "csp-eq"));
  const SpatialFilters f = csp_fit(cov, cov, 2);
  for (Eigen::Index i = 0; i < f.eigenvalues.size(); ++i)
    CHECK(f.eigenvalues[i] == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("hand-solved 2x2 diagonal problem: eigenvalues 2/3 and 1/3, axis filters") {
  // cov_a = diag(2,1), cov_b = diag(1,2): composite diag(3,3); whitened cov_a
  // is diag(2/3, 1/3) so the filters align with the coordinate axes.
  Vec diag_a(2);
  diag_a << 2.0, 1.0;
  Vec diag_b(2);
  diag_b << 1.0, 2.0;
  const Mat cov_a = diag_a.asDiagonal();
  const Mat cov_b = diag_b.asDiagonal();
  const SpatialFilters f = csp_fit(cov_a, cov_b, 1);
  REQUIRE(f.W.rows() == 2);
  CHECK(f.eigenvalues[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-8));
  CHECK(f.eigenvalues[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-8));
  // Row 0 along e0, row 1 along e1 (up to scale; sign fixed positive).
  CHECK(std::abs(f.W(0, 1)) <= 1e-8 * std::abs(f.W(0, 0)));
  CHECK(std::abs(f.W(1, 0)) <= 1e-8 * std::abs(f.W(1, 1)));
  CHECK(f.W(0, 0) > 0.0);
  CHECK(f.W(1, 1) > 0.0);
}

TEST_CASE("simultaneous diagonalization and eigenvalue pairing on 100 random SPD pairs") {
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 4 + rep % 5;
    const Mat cov_a = random_spd(n, derive_key(700 + rep, "csp-a"));
    const Mat cov_b = random_spd(n, derive_key(800 + rep, "csp-b"));
    const int pairs = std::max(1, n / 2 - 1);
    const SpatialFilters f = csp_fit(cov_a, cov_b, pairs);

    const Mat da = f.W * cov_a * f.W.transpose();
    const Mat db = f.W * cov_b * f.W.transpose();
    const double diag_energy = da.diagonal().cwiseAbs().sum() + db.diagonal().cwiseAbs().sum();
    double off_energy = 0.0;
    for (Eigen::Index i = 0; i < da.rows(); ++i)
      for (Eigen::Index j = 0; j < da.cols(); ++j)
        if (i != j) off_energy += std::abs(da(i, j)) + std::abs(db(i, j));
    CHECK(off_energy <= 1e-8 * diag_energy);

    // Per filter: variance shares under a and b sum to 1, and match the
    // reported eigenvalue.
    for (Eigen::Index i = 0; i < f.W.rows(); ++i) {
      CHECK(da(i, i) + db(i, i) == doctest::Approx(1.0).epsilon(1e-8));
      CHECK(da(i, i) == doctest::Approx(f.eigenvalues[i]).epsilon(1e-8));
    }
    // Eigenvalues descending.
    for (Eigen::Index i = 1; i < f.eigenvalues.size(); ++i)
      CHECK(f.eigenvalues[i] <= f.eigenvalues[i - 1] + 1e-12);
  }
}

TEST_CASE("csp_fit input validation") {
  const Mat spd3 = random_spd(3, derive_key(901, "csp-val"));
  const Mat spd4 = random_spd(4, derive_key(902, "csp-val"));
  CHECK_THROWS_AS(csp_fit(spd3, spd4, 1), DimensionMismatch);
  CHECK_THROWS_AS(csp_fit(spd4, spd4, 3), DimensionMismatch);  // 2*3 > 4

  Mat asym = spd4;
  asym(0, 1) += 1.0;
  CHECK_THROWS_AS(csp_fit(asym, spd4, 1), NotPositiveDefinite);

  Mat indefinite = spd4;
  indefinite(0, 0) = -5.0;
  CHECK_THROWS_AS(csp_fit(indefinite, spd4, 1), NotPositiveDefinite);
}

TEST_CASE("csp_features: equal projected variances give log(1/2) each") {
  SpatialFilters f;
  f.W = Mat::Identity(2, 2);
  f.eigenvalues = Vec::Constant(2, 0.5);
  f.n_pairs = 1;
  SampleMatrix epoch(2, 1000);
  const std::uint64_t key = derive_key(911, "feat-eq");
  for (int t = 0; t < 1000; ++t) {
    epoch(0, t) = normal01(key, t);
    epoch(1, t) = -epoch(0, t);  // same variance
  }
  const Vec features = csp_features(epoch, f);
  CHECK(features[0] == doctest::Approx(std::log(0.5)).epsilon(1e-12));
  CHECK(features[1] == doctest::Approx(std::log(0.5)).epsilon(1e-12));
}

TEST_CASE("csp_features: variances 3 and 1 give log(3/4), log(1/4)") {
  SpatialFilters f;
  f.W = Mat::Identity(2, 2);
  f.eigenvalues = Vec::Constant(2, 0.5);
  f.n_pairs = 1;
  // Deterministic epochs with exact population variances 3 and 1.
  const int n = 4;
  SampleMatrix epoch(2, n);
  epoch.row(0) << std::sqrt(3.0), -std::sqrt(3.0), std::sqrt(3.0), -std::sqrt(3.0);
  epoch.row(1) << 1.0, -1.0, 1.0, -1.0;
  const Vec features = csp_features(epoch, f);
  CHECK(features[0] == doctest::Approx(std::log(0.75)).epsilon(1e-12));
  CHECK(features[1] == doctest::Approx(std::log(0.25)).epsilon(1e-12));
}

TEST_CASE("csp_features is scale-invariant and checks dimensions") {
  const Mat cov_a = random_spd(4, derive_key(921, "feat-scale"));
  const Mat cov_b = random_spd(4, derive_key(922, "feat-scale"));
  const SpatialFilters f = csp_fit(cov_a, cov_b, 2);
  const SampleMatrix epoch = random_epoch(4, 300, derive_key(923, "feat-scale"));
  const Vec base = csp_features(epoch, f);
  const SampleMatrix scaled = 7.3 * epoch;
  const Vec same = csp_features(scaled, f);
  for (Eigen::Index i = 0; i < base.size(); ++i)
    CHECK(base[i] == doctest::Approx(same[i]).epsilon(1e-10));

  CHECK_THROWS_AS(csp_features(random_epoch(5, 300, derive_key(1, "x")), f),
                  DimensionMismatch);
}

TEST_CASE("filters are invariant to a common linear mixing (via log-variance features)") {
  const int n = 6;
  // Two classes of epochs with different per-channel variances.
  std::vector<SampleMatrix> epochs_a;
  std::vector<SampleMatrix> epochs_b;
  for (int e = 0; e < 12; ++e) {
    SampleMatrix xa = random_epoch(n, 2000, derive_key(1000 + e, "mix-a"));
    SampleMatrix xb = random_epoch(n, 2000, derive_key(2000 + e, "mix-b"));
    for (int c = 0; c < n; ++c) {
      xa.row(c) *= 1.0 + 0.4 * c;        // class a louder on high channels
      xb.row(c) *= 1.0 + 0.4 * (n - c);  // class b the opposite
    }
    epochs_a.push_back(std::move(xa));
    epochs_b.push_back(std::move(xb));
  }

  // Random orthogonal mixing applied to every epoch of both classes. The
  // per-trial trace normalization inside class_covariance is exactly invariant
  // under orthogonal maps, which keeps this a sharp 1e-6 check; a general
  // invertible mixing would add O(1/sqrt(T)) trace-reweighting noise on top.
  Mat seed_mat(n, n);
  std::uint64_t counter = 0;
  const std::uint64_t key = derive_key(3000, "mixing");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      seed_mat(i, j) = normal01(key, counter++) + (i == j ? 2.0 : 0.0);
  const Mat mixing = Eigen::HouseholderQR<Mat>(seed_mat).householderQ();

  auto fit_features = [&](bool mixed) {
    std::vector<SampleMatrix> ma;
    std::vector<SampleMatrix> mb;
    for (const auto& x : epochs_a) ma.push_back(mixed ? SampleMatrix(mixing * x) : x);
    for (const auto& x : epochs_b) mb.push_back(mixed ? SampleMatrix(mixing * x) : x);
    const SpatialFilters f = csp_fit(class_covariance(ma), class_covariance(mb), 2);
    return csp_features(ma.front(), f);
  };

  const Vec plain = fit_features(false);
  const Vec mixed = fit_features(true);
  for (Eigen::Index i = 0; i < plain.size(); ++i)
    CHECK(plain[i] == doctest::Approx(mixed[i]).epsilon(1e-6));
}
