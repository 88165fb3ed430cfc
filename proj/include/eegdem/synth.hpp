#pragma once

#include "eegdem/types.hpp"

#include <cstdint>
#include <map>

namespace eegdem {

struct BadProfile : Error { using Error::Error; };

/// A stimulus-locked Gaussian deflection, planted per trial on the listed
/// channels.
struct ErpTemplate {
  std::string name;
  double latency_ms = 300.0;   // peak, relative to onset
  double width_ms = 50.0;      // gaussian sigma
  double amplitude_uv = 5.0;   // peak magnitude, > 0
  int polarity = 1;            // +1 or -1
  std::map<std::string, double> channel_gains;  // montage name -> gain
};

struct ClassProfile {
  std::map<std::string, double> band_targets;  // band name -> relative power, sums to 1
  std::vector<ErpTemplate> erps;
};

struct TaskModifiers {
  double erp_scale = 1.0;
  double power_contrast = 1.0;  // scales class deviations from a uniform band mix
};

struct DatasetProfile {
  std::map<ClassLabel, ClassProfile> classes;
  std::map<TaskKind, TaskModifiers> tasks;
  std::vector<BandDef> bands;            // noise synthesis bands
  double band_noise_total_uv = 10.0;     // std of the summed band-limited noise
  double sensor_noise_uv = 2.0;          // white sensor noise std
  double subject_power_jitter = 0.08;    // relative, per band target
  double subject_erp_jitter = 0.12;      // relative, per ERP amplitude
  double subject_latency_jitter_ms = 8.0;
  double trial_spacing_ms = 6000.0;
  double lead_in_ms = 1000.0;
  int n_taps = 513;
};

/// Class signatures used throughout the tests: theta share grows and alpha
/// shrinks with severity, ERP deflections shrink with severity.
DatasetProfile default_profile();

/// All three classes identical; downstream classification sits at chance.
DatasetProfile null_profile();

void validate_profile(const DatasetProfile& profile);

/// One subject's recording for one task: band-limited noise mixed to the
/// class's relative-power targets, stimulus-locked ERP templates, and white
/// sensor noise. Samples are quantized to float32 so the on-disk container
/// round-trips losslessly. Fully determined by the seed.
Recording generate_subject(ClassLabel cls, TaskKind task, const DatasetProfile& profile,
                           const Montage& montage, const std::string& subject_id,
                           int n_trials, std::uint64_t seed);

struct Dataset {
  std::vector<Recording> recordings;

  std::vector<std::string> subjects_with_label(ClassLabel label) const;
  const Recording& find(const std::string& subject_id, TaskKind task) const;
};

/// n_per_class subjects per class for each requested task. Per-subject seeds
/// derive from (seed, class, subject index, task).
Dataset generate_dataset(int n_per_class, const DatasetProfile& profile,
                         const std::vector<TaskKind>& tasks, std::uint64_t seed);

/// Deterministic per-subject seed, shared by the in-memory and on-disk paths.
std::uint64_t subject_seed(std::uint64_t dataset_seed, ClassLabel cls, int subject_index,
                           TaskKind task);

std::string make_subject_id(ClassLabel cls, int subject_index);

}  // namespace eegdem
