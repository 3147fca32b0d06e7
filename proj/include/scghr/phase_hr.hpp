#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scghr/beats.hpp"
#include "scghr/waveform.hpp"

namespace scghr {

struct GateConfig {
  // Pairs below this rate span two separate cycles of the same phase.
  double hr_min_bpm = 50.0;
  // |LV| at or below this is neither phase. 0 gives the strict sign test.
  double lv_zero_epsilon = 0.0;

  void validate() const;
  bool operator==(const GateConfig&) const = default;
};

inline constexpr const char* kBelowGate = "below-gate";

struct HrSample {
  double pair_time = 0.0;  // midpoint of the two events, seconds
  double hr_bpm = 0.0;

  bool operator==(const HrSample&) const = default;
};

struct DiscardedHrSample {
  double pair_time = 0.0;
  double hr_bpm = 0.0;
  std::string reason;

  bool operator==(const DiscardedHrSample&) const = default;
};

struct PhaseHrSeries {
  Phase phase = Phase::unassigned;
  std::vector<HrSample> samples;
  std::vector<DiscardedHrSample> discarded;

  bool operator==(const PhaseHrSeries&) const = default;
};

// Events split by the sign of lung volume at each event time.
struct PhaseGroups {
  std::vector<BeatEvent> llv;
  std::vector<BeatEvent> hlv;
  std::vector<BeatEvent> dropped_at_zero;
};

// Throws std::invalid_argument when an event lies outside the LV span or the
// events are not sorted.
PhaseGroups classify_events(const std::vector<BeatEvent>& events, const LungVolume& lv,
                            const GateConfig& cfg = {});

// HR (bpm) for each consecutive pair of a phase group, gated at hr_min_bpm.
PhaseHrSeries pairwise_hr(const std::vector<BeatEvent>& group, const GateConfig& cfg = {});

// Mean of all retained samples of both series. Throws NoDataError when both
// are empty.
double combined_hr(const PhaseHrSeries& llv, const PhaseHrSeries& hlv);

struct PhaseStats {
  std::optional<double> mean_bpm;
  // Sample SD (n - 1). Reported as 0 with sd_undefined set when count == 1.
  std::optional<double> sd_bpm;
  std::size_t count = 0;
  bool sd_undefined = false;

  bool operator==(const PhaseStats&) const = default;
};

PhaseStats phase_stats(const PhaseHrSeries& series);

struct PhaseSummary {
  PhaseStats llv;
  PhaseStats hlv;
  std::optional<double> combined_bpm;
  std::optional<double> ratio_hlv_llv;

  bool operator==(const PhaseSummary&) const = default;
};

// HLV mean over LLV mean. Throws NoDataError if either mean is missing or the
// LLV mean is not positive.
double hlv_llv_ratio(const PhaseSummary& summary);

PhaseSummary summarize(const PhaseHrSeries& llv, const PhaseHrSeries& hlv);

// The whole gated pipeline over one event list.
struct PhaseAnalysis {
  PhaseGroups groups;
  PhaseHrSeries llv;
  PhaseHrSeries hlv;
  PhaseSummary summary;
};

PhaseAnalysis analyze_phases(const std::vector<BeatEvent>& events, const LungVolume& lv,
                             const GateConfig& cfg = {});

}  // namespace scghr
