#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "scghr/agreement.hpp"
#include "scghr/beats.hpp"
#include "scghr/csv_io.hpp"
#include "scghr/phase_hr.hpp"
#include "scghr/synth.hpp"

namespace scghr {

inline constexpr const char* kToolVersion = "scghr 1.0.0";
inline constexpr double kDefaultTargetRate = 320.0;
inline constexpr double kDefaultCutoff = 100.0;

struct RunConfig {
  std::vector<std::filesystem::path> inputs;
  // Recordings to generate instead of (or in addition to) ingesting files.
  std::vector<SynthConfig> synth;
  ChannelMapping mapping;
  double target_rate = kDefaultTargetRate;
  double lowpass_cutoff = kDefaultCutoff;
  GateConfig gate;
  DetectorConfig detector;
  std::filesystem::path out_dir = ".";
  bool emit_text = true;
  bool emit_json = true;
  unsigned jobs = 1;

  void validate() const;
  // "name=value" for every setting that differs from its default.
  std::vector<std::string> overrides() const;
};

// Everything computed for one recording.
struct RecordingResult {
  std::string label;
  bool ok = false;
  std::string error;

  double input_rate = 0.0;
  double duration_s = 0.0;
  std::size_t scg_events = 0;
  PhaseAnalysis scg;

  bool has_ecg = false;
  std::size_t ecg_events = 0;
  std::optional<double> ecg_combined_bpm;
  std::optional<double> ecg_all_pairs_bpm;
};

struct RunReport {
  std::string tool_version = kToolVersion;
  RunConfig config;
  std::vector<RecordingResult> recordings;
  // Present when at least two recordings yield both SCG and ECG combined HR.
  // Differences are ECG - SCG.
  std::optional<AgreementReport> agreement;

  std::size_t failed() const;
};

// Conditioned signals for one recording at the analysis rate.
struct Conditioned {
  Waveform scg;
  std::optional<Waveform> ecg;
  LungVolume lv;
};

// resample -> low-pass (SCG, ECG) and resample -> integrate -> detrend (flow).
Conditioned condition(const Recording& rec, double target_rate, double cutoff_hz);

// Full single-recording analysis. Throws on any module error.
RecordingResult analyze_recording(const Recording& rec, const RunConfig& cfg, std::string label);

// Runs every recording (concurrently when cfg.jobs > 1) and assembles the
// report in input order. A failing recording is reported, not rethrown.
// Throws std::invalid_argument when there is nothing to process.
RunReport run_pipeline(const RunConfig& cfg);
RunReport run_pipeline(const std::vector<Recording>& recordings, const RunConfig& cfg);

}  // namespace scghr
