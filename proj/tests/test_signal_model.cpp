#include "eegdem/types.hpp"

#include "eegdem/rng.hpp"

#include <doctest.h>

using namespace eegdem;

namespace {

Recording make_recording(int n_channels = 32, int n_samples = 2000) {
  Recording r;
  r.montage = canonical_montage();
  r.montage.channel_names.resize(n_channels);
  r.samples = SampleMatrix::Zero(n_channels, n_samples);
  const std::uint64_t key = derive_key(7, "recording");
  for (int c = 0; c < n_channels; ++c)
    for (int t = 0; t < n_samples; ++t)
      r.samples(c, t) = normal01(key, static_cast<std::uint64_t>(c) * n_samples + t);
  r.events = {{200, 0}, {900, 1}, {1600, 2}};
  r.subject_id = "NC01";
  r.label = ClassLabel::NC;
  r.task = TaskKind::Fixation;
  return r;
}

}  // namespace

TEST_CASE("canonical montage has 32 unique channels incl. Fp1/Fp2") {
  const Montage m = canonical_montage();
  CHECK(m.n_channels() == 32);
  CHECK(m.fs == 256.0);
  CHECK(m.has_channel("Fp1"));
  CHECK(m.has_channel("Fp2"));
  CHECK(m.has_channel("Pz"));
  CHECK_NOTHROW(validate(make_recording()));
}

TEST_CASE("canonical bands tile [1,30] with no overlap or gap") {
  const auto bands = canonical_bands();
  REQUIRE(bands.size() == 4);
  // Pairwise disjoint and tiling, probed on a fine grid under the half-open
  // convention (beta closed at 30).
  for (double f = 1.0; f <= 30.0; f += 0.125) {
    int owners = 0;
    for (const auto& b : bands) owners += b.contains(f) ? 1 : 0;
    CHECK(owners == 1);
  }
  CHECK(bands.front().f_low == 1.0);
  CHECK(bands.back().f_high == 30.0);
  CHECK(bands.back().include_high);
}

TEST_CASE("validate flags events at n_samples") {
  Recording r = make_recording();
  r.events.push_back({r.n_samples(), 3});
  CHECK_THROWS_AS(validate(r), EventOutOfRange);
}

TEST_CASE("validate names the offending NaN sample") {
  Recording r = make_recording();
  r.samples(3, 100) = std::numeric_limits<double>::quiet_NaN();
  try {
    validate(r);
    FAIL("expected NonFiniteSample");
  } catch (const NonFiniteSample& e) {
    CHECK(std::string(e.what()).find("channel 3") != std::string::npos);
    CHECK(std::string(e.what()).find("sample 100") != std::string::npos);
  }
}

TEST_CASE("validate rejects montage/sample mismatch and duplicate names") {
  Recording r = make_recording();
  r.montage.channel_names.pop_back();
  CHECK_THROWS_AS(validate(r), InvalidMontage);

  Recording dup = make_recording();
  dup.montage.channel_names[1] = dup.montage.channel_names[0];
  CHECK_THROWS_AS(validate(dup), InvalidMontage);
}

static EpochSet make_epochs(int n_trials = 4, int n_samples = 128) {
  EpochSet e;
  e.montage = canonical_montage();
  const std::uint64_t key = derive_key(11, "epochs");
  for (int t = 0; t < n_trials; ++t) {
    SampleMatrix m(32, n_samples);
    for (int c = 0; c < 32; ++c)
      for (int s = 0; s < n_samples; ++s)
        m(c, s) = normal01(key, (static_cast<std::uint64_t>(t) * 32 + c) * n_samples + s);
    e.epochs.push_back(m);
    e.labels.push_back(ClassLabel::NC);
    e.subject_ids.push_back("NC01");
  }
  return e;
}

TEST_CASE("exclude_channels drops Fp1/Fp2 leaving 30") {
  const EpochSet e = make_epochs();
  const EpochSet reduced = exclude_channels(e, {"Fp1", "Fp2"});
  CHECK(reduced.n_channels() == 30);
  CHECK(reduced.n_trials() == e.n_trials());
  CHECK_FALSE(reduced.montage.has_channel("Fp1"));
  CHECK(e.n_channels() == 32);  // original untouched

  // Kept channels carry their data across unchanged.
  const int pz_old = e.montage.index_of("Pz");
  const int pz_new = reduced.montage.index_of("Pz");
  CHECK(reduced.epochs[0].row(pz_new) == e.epochs[0].row(pz_old));
}

TEST_CASE("exclude_channels with empty set is the identity") {
  const EpochSet e = make_epochs();
  const EpochSet same = exclude_channels(e, {});
  CHECK(same.n_channels() == 32);
  CHECK(same.epochs[1] == e.epochs[1]);
}

TEST_CASE("exclude_channels rejects unknown names") {
  CHECK_THROWS_AS(exclude_channels(make_epochs(), {"Fq9"}), UnknownChannel);
}

TEST_CASE("disjoint exclusions commute") {
  const EpochSet e = make_epochs();
  const EpochSet ab = exclude_channels(exclude_channels(e, {"Fp1", "F3"}), {"Oz", "Pz"});
  const EpochSet ba = exclude_channels(exclude_channels(e, {"Oz", "Pz"}), {"Fp1", "F3"});
  CHECK(ab.montage.channel_names == ba.montage.channel_names);
  for (int t = 0; t < ab.n_trials(); ++t) CHECK(ab.epochs[t] == ba.epochs[t]);
}

TEST_CASE("label and task vocabulary round-trips") {
  for (auto l : {ClassLabel::NC, ClassLabel::MCI, ClassLabel::DEM})
    CHECK(parse_class_label(to_string(l)) == l);
  for (auto t : {TaskKind::Fixation, TaskKind::MentalImagery, TaskKind::SymbolRecognition,
                 TaskKind::VERP, TaskKind::Combined4})
    CHECK(parse_task_kind(to_string(t)) == t);
  CHECK(severity(ClassLabel::NC) < severity(ClassLabel::MCI));
  CHECK(severity(ClassLabel::MCI) < severity(ClassLabel::DEM));
}
