#pragma once

#include "eegdem/types.hpp"

namespace eegdem {

struct EpochOutOfBounds : Error { using Error::Error; };
struct TooFewTrials : Error { using Error::Error; };
struct IndivisibleTrialCount : Error { using Error::Error; };
struct MixedMetadata : Error { using Error::Error; };

/// Cuts stimulus-locked epochs of pre_ms before / post_ms after each event and
/// subtracts the per-channel mean over the baseline window (ms relative to
/// onset, endpoints included). Epoch length is round(pre)+round(post)+1 samples.
EpochSet extract_epochs(const Recording& recording, double pre_ms, double post_ms,
                        std::pair<double, double> baseline_ms);

/// Removes the first k trials (the familiarization runs).
EpochSet drop_leading_trials(const EpochSet& epochs, int k = 3);

/// Averages every group_size consecutive trials. All trials must share one
/// subject and label, and the trial count must divide evenly.
EpochSet average_consecutive(const EpochSet& epochs, int group_size = 3);

}  // namespace eegdem
