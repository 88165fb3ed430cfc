#include "eegdem/epochs.hpp"

#include <cmath>

namespace eegdem {

EpochSet extract_epochs(const Recording& recording, double pre_ms, double post_ms,
                        std::pair<double, double> baseline_ms) {
  const double fs = recording.montage.fs;
  const auto to_samples = [fs](double ms) {
    return static_cast<std::int64_t>(std::llround(ms / 1000.0 * fs));
  };
  const std::int64_t pre = to_samples(pre_ms);
  const std::int64_t post = to_samples(post_ms);
  const std::int64_t len = pre + post + 1;
  const std::int64_t n = recording.n_samples();

  // Baseline indices relative to epoch start, clamped to the epoch.
  const std::int64_t b_lo = std::max<std::int64_t>(0, pre + to_samples(baseline_ms.first));
  const std::int64_t b_hi = std::min<std::int64_t>(len - 1, pre + to_samples(baseline_ms.second));
  if (b_hi < b_lo)
    throw Error("empty baseline window");

  EpochSet out;
  out.montage = recording.montage;
  out.t0_offset_samples = static_cast<int>(pre);
  out.task = recording.task;
  out.epochs.reserve(recording.events.size());

  for (std::size_t i = 0; i < recording.events.size(); ++i) {
    const std::int64_t onset = recording.events[i].onset_sample;
    const std::int64_t start = onset - pre;
    if (start < 0 || start + len > n)
      throw EpochOutOfBounds("trial " + std::to_string(i) + ": epoch [" +
                             std::to_string(start) + ", " + std::to_string(start + len) +
                             ") outside recording of " + std::to_string(n) + " samples");
    SampleMatrix epoch = recording.samples.middleCols(start, len);
    const Vec baseline_mean =
        epoch.middleCols(b_lo, b_hi - b_lo + 1).rowwise().mean();
    epoch.colwise() -= baseline_mean;
    out.epochs.push_back(std::move(epoch));
    out.labels.push_back(recording.label);
    out.subject_ids.push_back(recording.subject_id);
  }
  return out;
}

EpochSet drop_leading_trials(const EpochSet& epochs, int k) {
  if (k < 0) throw Error("k must be non-negative");
  if (epochs.n_trials() <= k)
    throw TooFewTrials("cannot drop " + std::to_string(k) + " of " +
                       std::to_string(epochs.n_trials()) + " trials");
  EpochSet out = epochs;
  out.epochs.erase(out.epochs.begin(), out.epochs.begin() + k);
  out.labels.erase(out.labels.begin(), out.labels.begin() + k);
  out.subject_ids.erase(out.subject_ids.begin(), out.subject_ids.begin() + k);
  return out;
}

EpochSet average_consecutive(const EpochSet& epochs, int group_size) {
  if (group_size <= 0) throw Error("group size must be positive");
  const int n = epochs.n_trials();
  if (n == 0 || n % group_size != 0)
    throw IndivisibleTrialCount(std::to_string(n) + " trials not divisible by " +
                                std::to_string(group_size));
  for (int i = 1; i < n; ++i)
    if (epochs.subject_ids[i] != epochs.subject_ids[0] || epochs.labels[i] != epochs.labels[0])
      throw MixedMetadata("trials mix subjects or labels; group per subject first");

  EpochSet out;
  out.montage = epochs.montage;
  out.t0_offset_samples = epochs.t0_offset_samples;
  out.task = epochs.task;
  const int n_groups = n / group_size;
  for (int g = 0; g < n_groups; ++g) {
    SampleMatrix avg = epochs.epochs[g * group_size];
    for (int j = 1; j < group_size; ++j) avg += epochs.epochs[g * group_size + j];
    avg /= static_cast<double>(group_size);
    out.epochs.push_back(std::move(avg));
    out.labels.push_back(epochs.labels[0]);
    out.subject_ids.push_back(epochs.subject_ids[0]);
  }
  return out;
}

}  // namespace eegdem
