#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scghr/beats.hpp"
#include "scghr/waveform.hpp"

namespace scghr {

// Synthetic cardiorespiratory recording parameters. Defaults follow the
// controlled-breathing protocol (12 breaths/min, I:E 1:3) at the analysis
// rate of 320 Hz. Amplitudes are in arbitrary signal units.
struct SynthConfig {
  std::string label = "synth";
  double duration_s = 60.0;
  double sample_rate = 320.0;
  double resp_rate_bpm = 12.0;
  double ie_inspiratory = 1.0;
  double ie_expiratory = 3.0;
  double base_hr_bpm = 70.0;
  // Target HR_HLV / HR_LLV.
  double rsa_ratio = 1.09;
  // Additive white noise level relative to the beat-train power; nullopt
  // means noise-free.
  std::optional<double> snr_db = 20.0;
  std::uint64_t seed = 0;
  double flow_amplitude = 1.0;
  double scg_amplitude = 1.0;
  double ecg_amplitude = 1.0;
  // Peak amplitude of 120-160 Hz sine bursts added to SCG (0 disables).
  // Needs sample_rate well above 320 Hz to be representable.
  double hf_burst_amplitude = 0.0;

  void validate() const;
  bool operator==(const SynthConfig&) const = default;
};

struct GroundTruth {
  std::vector<double> beat_times;
  std::vector<Phase> beat_phases;
  // Instantaneous rates of the generating model.
  double rate_llv_bpm = 0.0;
  double rate_hlv_bpm = 0.0;
  // Gated consecutive-pair HR recomputed from beat_times and labels.
  double true_hr_llv_bpm = 0.0;
  double true_hr_hlv_bpm = 0.0;
  double true_combined_bpm = 0.0;
  // Fraction of time with LV > 0.
  double hlv_duty = 0.0;
};

// SCG wavelet: Gaussian-windowed 20 Hz cosine, ~0.1 s wide.
inline constexpr double kScgWaveletHz = 20.0;
inline constexpr double kScgWaveletSigma = 0.02;
// ECG R-spike: triangle of 20 ms base.
inline constexpr double kEcgSpikeHalfWidth = 0.01;
// Gate used for the ground-truth HR recomputation.
inline constexpr double kTruthGateBpm = 50.0;

// Half-sine inspiratory and expiratory lobes with equal area per breath.
Waveform gen_flow(const SynthConfig& cfg);

// Integrate-and-fire beats over a rate that switches with the sign of `lv`.
GroundTruth gen_beat_times(const SynthConfig& cfg, const LungVolume& lv);

Waveform gen_scg(const GroundTruth& truth, const SynthConfig& cfg);
Waveform gen_ecg(const GroundTruth& truth, const SynthConfig& cfg);

struct SynthRecording {
  Recording recording;  // scg_z, ecg, flow
  LungVolume lv;        // detrended, at cfg.sample_rate
  GroundTruth truth;
};

SynthRecording gen_recording(const SynthConfig& cfg);

}  // namespace scghr
