#include "eegdem/synth.hpp"

#include "eegdem/filters.hpp"
#include "eegdem/parallel.hpp"
#include "eegdem/rng.hpp"

#include <algorithm>
#include <cmath>

namespace eegdem {

namespace {

ErpTemplate p300_like(double amplitude_uv) {
  ErpTemplate t;
  t.name = "p300";
  t.latency_ms = 450.0;
  t.width_ms = 60.0;
  t.amplitude_uv = amplitude_uv;
  t.polarity = 1;
  t.channel_gains = {{"CP3", 0.7}, {"CP1", 0.8}, {"CPz", 1.0}, {"CP2", 0.8},
                     {"CP4", 0.7}, {"Pz", 1.0},  {"POz", 0.8}, {"P6", 0.5},
                     {"Oz", 0.4}};
  return t;
}

ErpTemplate n200_like(double amplitude_uv) {
  ErpTemplate t;
  t.name = "n200";
  t.latency_ms = 200.0;
  t.width_ms = 30.0;
  t.amplitude_uv = amplitude_uv;
  t.polarity = -1;
  t.channel_gains = {{"P7", 0.8}, {"P9", 0.7}, {"P6", 0.6}, {"P8", 0.7},
                     {"POz", 0.6}, {"Oz", 0.5}, {"Pz", 0.4}};
  return t;
}

ClassProfile class_profile(double delta, double theta, double alpha, double beta,
                           double p300_uv, double n200_uv) {
  ClassProfile p;
  p.band_targets = {{"delta", delta}, {"theta", theta}, {"alpha", alpha}, {"beta", beta}};
  p.erps = {p300_like(p300_uv), n200_like(n200_uv)};
  return p;
}

std::map<TaskKind, TaskModifiers> default_task_modifiers() {
  return {{TaskKind::Fixation, {0.8, 1.0}},
          {TaskKind::MentalImagery, {1.0, 1.2}},
          {TaskKind::SymbolRecognition, {1.2, 1.0}},
          {TaskKind::VERP, {1.0, 0.8}}};
}

}  // namespace

DatasetProfile default_profile() {
  DatasetProfile p;
  // Theta share grows with severity, alpha shrinks; deflections shrink.
  p.classes[ClassLabel::NC] = class_profile(0.30, 0.18, 0.34, 0.18, 9.0, 6.0);
  p.classes[ClassLabel::MCI] = class_profile(0.32, 0.26, 0.26, 0.16, 6.5, 5.0);
  p.classes[ClassLabel::DEM] = class_profile(0.34, 0.36, 0.17, 0.13, 3.5, 2.5);
  p.tasks = default_task_modifiers();
  p.bands = canonical_bands();
  return p;
}

DatasetProfile null_profile() {
  DatasetProfile p = default_profile();
  p.classes[ClassLabel::MCI] = p.classes[ClassLabel::NC];
  p.classes[ClassLabel::DEM] = p.classes[ClassLabel::NC];
  return p;
}

void validate_profile(const DatasetProfile& profile) {
  if (profile.classes.size() != 3)
    throw BadProfile("profile must define NC, MCI and DEM");
  if (profile.bands.empty()) throw BadProfile("profile has no synthesis bands");
  for (const auto& [cls, cp] : profile.classes) {
    double sum = 0.0;
    for (const auto& band : profile.bands) {
      const auto it = cp.band_targets.find(band.name);
      if (it == cp.band_targets.end())
        throw BadProfile(to_string(cls) + " lacks a target for band " + band.name);
      if (it->second < 0.0)
        throw BadProfile(to_string(cls) + " has a negative target for " + band.name);
      sum += it->second;
    }
    if (std::abs(sum - 1.0) > 1e-6)
      throw BadProfile(to_string(cls) + " band targets sum to " + std::to_string(sum) +
                       ", expected 1");
    const double epoch_end_ms = profile.trial_spacing_ms;
    for (const auto& erp : cp.erps) {
      if (erp.amplitude_uv < 0.0 || erp.width_ms <= 0.0)
        throw BadProfile("bad ERP shape for " + erp.name);
      if (erp.polarity != 1 && erp.polarity != -1)
        throw BadProfile("ERP polarity must be +1 or -1");
      if (erp.latency_ms < 0.0 || erp.latency_ms > epoch_end_ms)
        throw BadProfile("ERP latency outside the trial window");
    }
  }
  if (profile.band_noise_total_uv < 0.0 || profile.sensor_noise_uv < 0.0 ||
      profile.trial_spacing_ms <= 0.0 || profile.lead_in_ms < 0.0)
    throw BadProfile("negative noise level or degenerate timing");
}

std::uint64_t subject_seed(std::uint64_t dataset_seed, ClassLabel cls, int subject_index,
                           TaskKind task) {
  return derive_key(dataset_seed, "synth-subject", static_cast<std::uint64_t>(cls),
                    static_cast<std::uint64_t>(subject_index),
                    static_cast<std::uint64_t>(task));
}

std::string make_subject_id(ClassLabel cls, int subject_index) {
  const std::string num = std::to_string(subject_index + 1);
  return to_string(cls) + (num.size() < 2 ? "0" + num : num);
}

Recording generate_subject(ClassLabel cls, TaskKind task, const DatasetProfile& profile,
                           const Montage& montage, const std::string& subject_id,
                           int n_trials, std::uint64_t seed) {
  validate_profile(profile);
  const auto cls_it = profile.classes.find(cls);
  if (cls_it == profile.classes.end()) throw BadProfile("no profile for " + to_string(cls));
  const ClassProfile& cp = cls_it->second;
  const TaskModifiers mods = [&] {
    const auto it = profile.tasks.find(task);
    return it == profile.tasks.end() ? TaskModifiers{} : it->second;
  }();

  const double fs = montage.fs;
  const auto ms_to_samples = [fs](double ms) {
    return static_cast<std::int64_t>(std::llround(ms / 1000.0 * fs));
  };
  const std::int64_t n =
      ms_to_samples(2.0 * profile.lead_in_ms + n_trials * profile.trial_spacing_ms);

  Recording rec;
  rec.montage = montage;
  rec.subject_id = subject_id;
  rec.label = cls;
  rec.task = task;
  for (int i = 0; i < n_trials; ++i)
    rec.events.push_back(
        {ms_to_samples(profile.lead_in_ms + i * profile.trial_spacing_ms), i});
  rec.samples.resize(montage.n_channels(), n);

  // Subject-level draws: jittered band mix (contrast applied around a uniform
  // mix) and jittered ERP shapes, shared across channels.
  const std::uint64_t subj_key = derive_key(seed, "subject-level");
  std::vector<double> weights;
  {
    std::uint64_t counter = 0;
    const double uniform = 1.0 / static_cast<double>(profile.bands.size());
    double sum = 0.0;
    for (const auto& band : profile.bands) {
      const double target = cp.band_targets.at(band.name);
      double w = uniform + mods.power_contrast * (target - uniform);
      w *= 1.0 + profile.subject_power_jitter * normal01(subj_key, counter++);
      w = std::max(w, 0.02);
      weights.push_back(w);
      sum += w;
    }
    for (double& w : weights) w /= sum;
  }
  struct DrawnErp {
    double amplitude_uv;
    double latency_ms;
    double width_ms;
    int polarity;
    const std::map<std::string, double>* gains;
  };
  std::vector<DrawnErp> erps;
  {
    std::uint64_t counter = 1000;
    for (const auto& erp : cp.erps) {
      DrawnErp d;
      d.amplitude_uv = erp.amplitude_uv * mods.erp_scale *
                       std::max(0.2, 1.0 + profile.subject_erp_jitter *
                                               normal01(subj_key, counter++));
      d.latency_ms =
          erp.latency_ms + profile.subject_latency_jitter_ms * normal01(subj_key, counter++);
      d.width_ms = erp.width_ms;
      d.polarity = erp.polarity;
      d.gains = &erp.channel_gains;
      erps.push_back(d);
    }
  }

  // Band kernels once; filtering dominates, so channels run in parallel.
  std::vector<FilterKernel> kernels;
  for (const auto& band : profile.bands)
    kernels.push_back(design_bandpass(band.f_low, band.f_high, fs, profile.n_taps));

  parallel_for(static_cast<std::size_t>(montage.n_channels()), [&](std::size_t c) {
    const std::uint64_t chan_key = derive_key(seed, "channel", c);
    Vec accum = Vec::Zero(n);

    for (std::size_t b = 0; b < kernels.size(); ++b) {
      const std::uint64_t noise_key = derive_key(chan_key, "band-noise", b);
      Vec white(n);
      for (std::int64_t i = 0; i < n; ++i)
        white[i] = normal01(noise_key, static_cast<std::uint64_t>(i));
      Vec shaped = filtfilt(white, kernels[b]);
      const double sd = std::sqrt(shaped.squaredNorm() / static_cast<double>(n) -
                                  std::pow(shaped.mean(), 2));
      if (sd > 0.0) shaped *= std::sqrt(weights[b]) / sd;
      accum += shaped;
    }
    accum *= profile.band_noise_total_uv;

    if (profile.sensor_noise_uv > 0.0) {
      const std::uint64_t sensor_key = derive_key(chan_key, "sensor-noise");
      for (std::int64_t i = 0; i < n; ++i)
        accum[i] += profile.sensor_noise_uv * normal01(sensor_key, static_cast<std::uint64_t>(i));
    }

    const std::string& name = montage.channel_names[c];
    for (const auto& erp : erps) {
      const auto gain_it = erp.gains->find(name);
      if (gain_it == erp.gains->end()) continue;
      const double peak = erp.polarity * erp.amplitude_uv * gain_it->second;
      const double sigma = erp.width_ms / 1000.0 * fs;
      const double lat = erp.latency_ms / 1000.0 * fs;
      for (const Event& event : rec.events) {
        const double center = static_cast<double>(event.onset_sample) + lat;
        const auto lo = std::max<std::int64_t>(0, static_cast<std::int64_t>(center - 5.0 * sigma));
        const auto hi = std::min<std::int64_t>(n - 1, static_cast<std::int64_t>(center + 5.0 * sigma));
        for (std::int64_t i = lo; i <= hi; ++i) {
          const double z = (static_cast<double>(i) - center) / sigma;
          accum[i] += peak * std::exp(-0.5 * z * z);
        }
      }
    }

    // Microvolts to volts, quantized to float32 so files round-trip exactly.
    for (std::int64_t i = 0; i < n; ++i)
      rec.samples(static_cast<Eigen::Index>(c), i) =
          static_cast<double>(static_cast<float>(accum[i] * 1e-6));
  });

  return rec;
}

std::vector<std::string> Dataset::subjects_with_label(ClassLabel label) const {
  std::vector<std::string> out;
  for (const auto& rec : recordings)
    if (rec.label == label &&
        std::find(out.begin(), out.end(), rec.subject_id) == out.end())
      out.push_back(rec.subject_id);
  return out;
}

const Recording& Dataset::find(const std::string& subject_id, TaskKind task) const {
  for (const auto& rec : recordings)
    if (rec.subject_id == subject_id && rec.task == task) return rec;
  throw Error("no recording for " + subject_id + " / " + to_string(task));
}

Dataset generate_dataset(int n_per_class, const DatasetProfile& profile,
                         const std::vector<TaskKind>& tasks, std::uint64_t seed) {
  if (n_per_class < 3) throw Error("need at least 3 subjects per class");
  validate_profile(profile);
  const Montage montage = canonical_montage();

  Dataset out;
  for (const ClassLabel cls : {ClassLabel::NC, ClassLabel::MCI, ClassLabel::DEM})
    for (int s = 0; s < n_per_class; ++s)
      for (const TaskKind task : tasks) {
        if (task == TaskKind::Combined4)
          throw Error("Combined4 is a feature-level view, not a recordable task");
        out.recordings.push_back(generate_subject(
            cls, task, profile, montage, make_subject_id(cls, s), 30,
            subject_seed(seed, cls, s, task)));
      }
  return out;
}

}  // namespace eegdem
