#pragma once

#include <string>
#include <vector>

#include "scghr/beats.hpp"
#include "scghr/phase_hr.hpp"

namespace scghr {

inline constexpr double kLimitsMultiplier = 1.96;

struct AgreementPair {
  std::string label;
  double hr_a_bpm = 0.0;
  double hr_b_bpm = 0.0;

  bool operator==(const AgreementPair&) const = default;
};

// Bland-Altman summary of differences a - b.
struct AgreementReport {
  std::vector<AgreementPair> pairs;
  double bias_bpm = 0.0;
  double sd_bpm = 0.0;
  double loa_low_bpm = 0.0;
  double loa_high_bpm = 0.0;
  double multiplier = kLimitsMultiplier;
};

// Throws NoDataError with fewer than 2 pairs.
AgreementReport bland_altman(std::vector<AgreementPair> pairs, double multiplier = kLimitsMultiplier);

// ECG reference HR through the same classify -> pairwise -> combine path as
// SCG, so the comparison isolates the sensing modality.
double ecg_combined_hr(const std::vector<BeatEvent>& ecg_events, const LungVolume& lv,
                       const GateConfig& cfg = {});

// Mean of 60/RR over every consecutive R-R interval, no phase split and no
// gate. Throws NoDataError with fewer than 2 events.
double ecg_all_pairs_hr(const std::vector<BeatEvent>& ecg_events);

}  // namespace scghr
