#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace eegdem {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

/// Channels x time storage. Row-major so each channel is contiguous for filtering.
using SampleMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidMontage : Error { using Error::Error; };
struct EventOutOfRange : Error { using Error::Error; };
struct NonFiniteSample : Error { using Error::Error; };
struct UnknownChannel : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };

enum class ClassLabel { NC, MCI, DEM };

enum class TaskKind { Fixation, MentalImagery, SymbolRecognition, VERP, Combined4 };

std::string to_string(ClassLabel label);
std::string to_string(TaskKind task);
ClassLabel parse_class_label(const std::string& s);
TaskKind parse_task_kind(const std::string& s);

/// Severity ordering NC < MCI < DEM.
inline int severity(ClassLabel label) { return static_cast<int>(label); }

struct Montage {
  std::vector<std::string> channel_names;
  double fs = 0.0;

  int n_channels() const { return static_cast<int>(channel_names.size()); }

  /// Index of a named channel; throws UnknownChannel.
  int index_of(const std::string& name) const;
  bool has_channel(const std::string& name) const;
};

/// The 32-channel montage used throughout; analysis views drop Fp1/Fp2.
Montage canonical_montage(double fs = 256.0);

struct Event {
  std::int64_t onset_sample = 0;
  int trial_index = 0;
};

struct Recording {
  Montage montage;
  SampleMatrix samples;  // channels x time, volts
  std::vector<Event> events;
  std::string subject_id;
  ClassLabel label = ClassLabel::NC;
  TaskKind task = TaskKind::Fixation;

  std::int64_t n_samples() const { return samples.cols(); }
};

/// Checks all Recording invariants and returns the input unchanged.
/// Throws InvalidMontage, EventOutOfRange or NonFiniteSample naming the
/// offending channel/sample/event.
const Recording& validate(const Recording& recording);

struct EpochSet {
  Montage montage;
  std::vector<SampleMatrix> epochs;  // per trial, channels x time
  int t0_offset_samples = 0;         // samples before stimulus onset
  std::vector<ClassLabel> labels;      // per trial
  std::vector<std::string> subject_ids;  // per trial
  TaskKind task = TaskKind::Fixation;

  int n_trials() const { return static_cast<int>(epochs.size()); }
  int n_channels() const { return montage.n_channels(); }
  std::int64_t n_samples_per_trial() const {
    return epochs.empty() ? 0 : epochs.front().cols();
  }
};

/// Returns a copy without the named channels. Order of kept channels is preserved.
EpochSet exclude_channels(const EpochSet& epochs, const std::vector<std::string>& names);

struct BandDef {
  std::string name;
  double f_low = 0.0;   // Hz
  double f_high = 0.0;  // Hz
  bool include_high = false;  // half-open [f_low, f_high) unless set

  bool contains(double f) const {
    return f >= f_low && (f < f_high || (include_high && f == f_high));
  }
};

/// delta [1,4), theta [4,8), alpha [8,13), beta [13,30]. The four bands
/// partition [1,30] Hz under the half-open convention (beta closed at 30).
std::vector<BandDef> canonical_bands();

struct FeatureMatrix {
  std::vector<std::string> names;     // per column, unique
  Mat values;                         // samples x features
  std::vector<ClassLabel> labels;     // per row
  std::vector<std::string> subject_ids;  // per row

  Eigen::Index n_samples() const { return values.rows(); }
  Eigen::Index n_features() const { return values.cols(); }
};

}  // namespace eegdem
