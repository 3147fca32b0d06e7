#pragma once

#include <string_view>
#include <vector>

#include "scghr/waveform.hpp"

namespace scghr {

enum class BeatSource { scg, ecg };
enum class Phase { unassigned, llv, hlv };

std::string_view to_string(BeatSource s) noexcept;
std::string_view to_string(Phase p) noexcept;

// One heartbeat fiducial. `time` is in the source waveform's time base.
struct BeatEvent {
  double time = 0.0;
  BeatSource source = BeatSource::scg;
  double amplitude = 0.0;
  Phase phase = Phase::unassigned;

  bool operator==(const BeatEvent&) const = default;
};

struct DetectorConfig {
  double refractory_s = 0.3;
  double envelope_smooth_s = 0.05;
  // Region threshold, as a multiple of the envelope median.
  double threshold_factor = 2.0;
  double edge_exclude_s = 0.5;
  // A region's peak must reach this multiple of the envelope median to count
  // as a beat; rejects noise-only excursions past the region threshold.
  double min_peak_factor = 5.0;
  // Lower bound on the region threshold as a fraction of the envelope's 99th
  // percentile. Only matters when the median is ~0 (noise-free input).
  double floor_fraction = 0.05;

  // Throws std::invalid_argument on non-positive fields or refractory >= 2 s.
  void validate() const;

  bool operator==(const DetectorConfig&) const = default;
};

// Centred moving average of x^2 over ~envelope_smooth_s.
std::vector<double> energy_envelope(const Waveform& w, double smooth_s);
// Centred moving average of the squared central difference.
std::vector<double> derivative_envelope(const Waveform& w, double smooth_s);

// Generic detector over a precomputed envelope of `w`: supra-threshold
// regions, one candidate per region, refractory suppression keeping the
// stronger region. The candidate sits at the maximum of `fiducial` within the
// region (the envelope itself when `fiducial` is empty), refined to sub-sample
// precision by a parabola through the neighbouring samples.
std::vector<BeatEvent> detect_on_envelope(const Waveform& w, const std::vector<double>& envelope,
                                          BeatSource source, const DetectorConfig& cfg,
                                          const std::vector<double>& fiducial = {});

// SCG heartbeats at the peak of the smoothed energy envelope.
std::vector<BeatEvent> detect_scg_events(const Waveform& scg, const DetectorConfig& cfg = {});

// ECG R-peaks: regions from the smoothed squared-derivative envelope, each
// placed at the largest absolute deflection of the signal inside it.
std::vector<BeatEvent> detect_ecg_rpeaks(const Waveform& ecg, const DetectorConfig& cfg = {});

}  // namespace scghr
