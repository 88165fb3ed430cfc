#pragma once

#include "eegdem/fbcsp.hpp"
#include "eegdem/grid_search.hpp"
#include "eegdem/pca.hpp"
#include "eegdem/stats.hpp"
#include "eegdem/synth.hpp"

#include <cstdint>
#include <map>

namespace eegdem {

struct TooFewSubjects : Error { using Error::Error; };
struct SubjectMismatch : Error { using Error::Error; };
struct Empty : Error { using Error::Error; };

enum class PipelineKind { Frequency, Time };

std::string to_string(PipelineKind kind);
PipelineKind parse_pipeline(const std::string& s);

// ------------------------------------------------------------------ folds

struct Fold {
  std::vector<std::string> test_subjects;   // one per class
  std::vector<std::string> val_subjects;    // one per class
  std::vector<std::string> train_subjects;  // everyone else
};

struct FoldPlan {
  std::vector<Fold> folds;
};

/// Leave-two-subjects-out: fold i tests subject i of each class after a seeded
/// shuffle; one seeded-random remaining subject per class validates; the rest
/// train (13:1:1 per class at full size). Requires equal class sizes >= 3.
FoldPlan plan_ltocv(const std::vector<std::vector<std::string>>& subjects_by_class,
                    std::uint64_t seed);

// ------------------------------------------------------------------ metrics

struct Metrics {
  double accuracy = 0.0;
  double f1 = 0.0;
};

/// Accuracy and F1 for the given positive class; F1 is 0 when precision and
/// recall are both undefined.
Metrics metrics(const std::vector<ClassLabel>& predicted,
                const std::vector<ClassLabel>& truth, ClassLabel positive);

// ------------------------------------------------------------------ config

struct PipelineConfig {
  std::vector<BandDef> bands = canonical_bands();
  std::vector<std::string> excluded_channels = {"Fp1", "Fp2"};

  // preprocessing
  int n_taps = 513;
  double notch_hz = 50.0;
  double notch_bandwidth = 2.0;
  std::pair<double, double> bandpass_freq = {1.0, 40.0};  // frequency pipeline
  std::pair<double, double> bandpass_time = {1.0, 30.0};  // time pipeline
  double pre_ms_freq = 500.0;
  std::map<TaskKind, double> post_ms_freq = {{TaskKind::Fixation, 5000.0},
                                             {TaskKind::MentalImagery, 5000.0},
                                             {TaskKind::SymbolRecognition, 5000.0},
                                             {TaskKind::VERP, 5000.0}};
  double pre_ms_time = 200.0;
  double post_ms_time = 800.0;
  int time_points = 205;  // from stimulus onset onward
  int drop_leading = 3;
  int average_group = 3;

  // features & statistics
  int welch_window = 256;
  double welch_overlap = 0.5;
  std::pair<double, double> total_power_range = {1.0, 30.0};
  double selection_alpha = 0.01;
  double interval_alpha = 0.01;
  double min_interval_ms = 31.0;
  bool average_band_power_per_subject = false;  // selection statistics on subject means

  // models
  FbcspConfig fbcsp;
  double pca_threshold = 0.9;
  HyperGrid grid;
  SvmTrainOptions svm;

  // protocol
  bool paper_faithful = false;  // selection masks from all rows, as the paper did
  bool subject_vote = false;    // majority vote per test subject
};

// ------------------------------------------------------------------ data access

/// Where recordings come from: an in-memory dataset, on-demand synthesis, or
/// disk. Load order never affects results.
class RecordingSource {
 public:
  virtual ~RecordingSource() = default;
  virtual std::vector<std::string> subjects(ClassLabel label) const = 0;
  virtual Recording load(const std::string& subject_id, TaskKind task) const = 0;
};

class InMemorySource final : public RecordingSource {
 public:
  explicit InMemorySource(const Dataset& dataset) : dataset_(dataset) {}
  std::vector<std::string> subjects(ClassLabel label) const override {
    return dataset_.subjects_with_label(label);
  }
  Recording load(const std::string& subject_id, TaskKind task) const override {
    return dataset_.find(subject_id, task);
  }

 private:
  const Dataset& dataset_;
};

/// Generates recordings on demand; recordings match generate_dataset's output
/// for the same seed.
class SynthSource final : public RecordingSource {
 public:
  SynthSource(DatasetProfile profile, int n_per_class, std::uint64_t seed);
  std::vector<std::string> subjects(ClassLabel label) const override;
  Recording load(const std::string& subject_id, TaskKind task) const override;

 private:
  DatasetProfile profile_;
  int n_per_class_;
  std::uint64_t seed_;
};

// ------------------------------------------------------------ fold-level API

/// Everything fold-independent about one task: per-trial feature rows plus,
/// for the frequency pipeline, the per-band trial statistics. Rows are grouped
/// by subject in deterministic order.
struct TaskData {
  TaskKind task = TaskKind::Fixation;
  PipelineKind pipeline = PipelineKind::Frequency;
  Montage analysis_montage;     // after channel exclusion
  FeatureMatrix features;       // band powers (freq) or temporal amplitudes (time)
  BandDecomposition decomp;     // frequency pipeline only
  int time_points = 0;          // time pipeline only
};

TaskData prepare_task_data(const RecordingSource& source,
                           const std::vector<std::string>& subjects, TaskKind task,
                           PipelineKind pipeline, const PipelineConfig& config);

/// Fold-fitted stages of one task's feature path.
struct TaskStage {
  TaskKind task = TaskKind::Fixation;
  std::vector<std::string> selected;  // surviving feature names (pre-model)
  bool selection_fell_back = false;
  FbcspModel fbcsp;  // frequency pipeline
  PcaModel pca;      // time pipeline
};

struct FittedFold {
  std::vector<TaskStage> stages;  // one per task; several for Combined4
  StandardScaler scaler;
  GridPoint chosen;
  double val_accuracy = 0.0;
  SvmModel svm;
  std::vector<std::string> warnings;
};

/// Fits every fold-dependent stage on the fold's train rows (grid search uses
/// the validation rows). Test rows are never touched.
FittedFold fit_fold(const std::vector<TaskData>& tasks, const Fold& fold,
                    std::pair<ClassLabel, ClassLabel> pair, const PipelineConfig& config);

/// Applies a fitted fold to the subjects listed and scores against the truth.
Metrics score_fold(const FittedFold& fitted, const std::vector<TaskData>& tasks,
                   const std::vector<std::string>& subjects,
                   std::pair<ClassLabel, ClassLabel> pair, const PipelineConfig& config);

// ------------------------------------------------------------------ reports

struct FoldOutcome {
  Metrics test;
  GridPoint chosen;
  double val_accuracy = 0.0;
  std::vector<std::string> warnings;
};

struct EvalReport {
  std::pair<ClassLabel, ClassLabel> pair;
  TaskKind task = TaskKind::Fixation;
  PipelineKind pipeline = PipelineKind::Frequency;
  std::uint64_t seed = 0;
  std::vector<FoldOutcome> folds;
  double accuracy_mean = 0.0;
  double accuracy_se = 0.0;
  double f1_mean = 0.0;
  double f1_se = 0.0;
  std::vector<std::string> warnings;
};

/// Full leave-two-subjects-out evaluation of one class pair on one task (or
/// Combined4). The positive class for F1 is the more severe one.
EvalReport run_pair(const RecordingSource& source,
                    std::pair<ClassLabel, ClassLabel> pair, TaskKind task,
                    PipelineKind pipeline, const PipelineConfig& config,
                    std::uint64_t seed);

/// Column-wise concatenation with task-prefixed names; rows must agree on
/// subject and label throughout.
FeatureMatrix combine_tasks(const std::vector<FeatureMatrix>& per_task,
                            const std::vector<TaskKind>& tasks);

}  // namespace eegdem
