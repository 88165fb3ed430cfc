#include "eegdem/types.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace eegdem {

std::string to_string(ClassLabel label) {
  switch (label) {
    case ClassLabel::NC: return "NC";
    case ClassLabel::MCI: return "MCI";
    case ClassLabel::DEM: return "DEM";
  }
  return "?";
}

std::string to_string(TaskKind task) {
  switch (task) {
    case TaskKind::Fixation: return "Fixation";
    case TaskKind::MentalImagery: return "MentalImagery";
    case TaskKind::SymbolRecognition: return "SymbolRecognition";
    case TaskKind::VERP: return "VERP";
    case TaskKind::Combined4: return "Combined4";
  }
  return "?";
}

ClassLabel parse_class_label(const std::string& s) {
  if (s == "NC") return ClassLabel::NC;
  if (s == "MCI") return ClassLabel::MCI;
  if (s == "DEM") return ClassLabel::DEM;
  throw Error("unknown class label: " + s);
}

TaskKind parse_task_kind(const std::string& s) {
  if (s == "Fixation" || s == "FIX") return TaskKind::Fixation;
  if (s == "MentalImagery" || s == "MI") return TaskKind::MentalImagery;
  if (s == "SymbolRecognition" || s == "SR") return TaskKind::SymbolRecognition;
  if (s == "VERP") return TaskKind::VERP;
  if (s == "Combined4" || s == "ALL") return TaskKind::Combined4;
  throw Error("unknown task: " + s);
}

int Montage::index_of(const std::string& name) const {
  auto it = std::find(channel_names.begin(), channel_names.end(), name);
  if (it == channel_names.end())
    throw UnknownChannel("unknown channel: " + name);
  return static_cast<int>(it - channel_names.begin());
}

bool Montage::has_channel(const std::string& name) const {
  return std::find(channel_names.begin(), channel_names.end(), name) !=
         channel_names.end();
}

Montage canonical_montage(double fs) {
  // 10-20 names; the ones the analysis refers to (Fp1/Fp2, F7-F10, CP3/CPz/CP4,
  // Pz/POz/Oz, P6-P9) plus standard fill to 32.
  return Montage{
      {"Fp1", "Fp2", "F7",  "F3",  "Fz",  "F4",  "F8",  "F9",
       "F10", "FC5", "FC1", "FC2", "FC6", "T7",  "C3",  "Cz",
       "C4",  "T8",  "CP5", "CP3", "CP1", "CPz", "CP2", "CP4",
       "CP6", "P7",  "P9",  "Pz",  "P6",  "P8",  "POz", "Oz"},
      fs};
}

std::vector<BandDef> canonical_bands() {
  return {{"delta", 1.0, 4.0, false},
          {"theta", 4.0, 8.0, false},
          {"alpha", 8.0, 13.0, false},
          {"beta", 13.0, 30.0, true}};
}

const Recording& validate(const Recording& recording) {
  const auto& m = recording.montage;
  if (m.fs <= 0.0)
    throw InvalidMontage("sampling rate must be positive");
  if (m.channel_names.empty())
    throw InvalidMontage("montage has no channels");
  std::unordered_set<std::string> seen;
  for (const auto& name : m.channel_names)
    if (!seen.insert(name).second)
      throw InvalidMontage("duplicate channel name: " + name);
  if (recording.samples.rows() != m.n_channels())
    throw InvalidMontage("sample rows (" + std::to_string(recording.samples.rows()) +
                         ") do not match montage channel count (" +
                         std::to_string(m.n_channels()) + ")");

  const std::int64_t n = recording.n_samples();
  std::int64_t prev = -1;
  for (std::size_t i = 0; i < recording.events.size(); ++i) {
    const auto& e = recording.events[i];
    if (e.onset_sample < 0 || e.onset_sample >= n)
      throw EventOutOfRange("event " + std::to_string(i) + " onset " +
                            std::to_string(e.onset_sample) + " outside [0, " +
                            std::to_string(n) + ")");
    if (e.onset_sample < prev)
      throw EventOutOfRange("event " + std::to_string(i) + " not sorted ascending");
    prev = e.onset_sample;
  }

  for (Eigen::Index c = 0; c < recording.samples.rows(); ++c)
    for (Eigen::Index t = 0; t < recording.samples.cols(); ++t)
      if (!std::isfinite(recording.samples(c, t)))
        throw NonFiniteSample("non-finite sample at channel " + std::to_string(c) +
                              ", sample " + std::to_string(t));
  return recording;
}

EpochSet exclude_channels(const EpochSet& epochs, const std::vector<std::string>& names) {
  std::vector<int> drop;
  drop.reserve(names.size());
  for (const auto& name : names) drop.push_back(epochs.montage.index_of(name));

  std::vector<int> keep;
  for (int c = 0; c < epochs.n_channels(); ++c)
    if (std::find(drop.begin(), drop.end(), c) == drop.end()) keep.push_back(c);

  EpochSet out;
  out.montage.fs = epochs.montage.fs;
  for (int c : keep) out.montage.channel_names.push_back(epochs.montage.channel_names[c]);
  out.t0_offset_samples = epochs.t0_offset_samples;
  out.labels = epochs.labels;
  out.subject_ids = epochs.subject_ids;
  out.task = epochs.task;
  out.epochs.reserve(epochs.epochs.size());
  for (const auto& e : epochs.epochs) {
    SampleMatrix reduced(static_cast<Eigen::Index>(keep.size()), e.cols());
    for (std::size_t i = 0; i < keep.size(); ++i) reduced.row(static_cast<Eigen::Index>(i)) = e.row(keep[i]);
    out.epochs.push_back(std::move(reduced));
  }
  return out;
}

}  // namespace eegdem
