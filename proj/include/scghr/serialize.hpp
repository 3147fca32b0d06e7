#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "scghr/pipeline.hpp"

namespace scghr {

// Table-shaped plain text: per-phase mean ± SD, combined HR, HLV/LLV ratio,
// audit counts and Bland-Altman agreement. No timestamps, so identical runs
// produce identical bytes.
std::string render_text(const RunReport& report);

// One structured document per run, full double precision.
nlohmann::ordered_json report_json(const RunReport& report);

// Cell text used by the per-phase table, e.g. "55.9 ± 2.9".
std::string format_mean_sd(const PhaseStats& st);

// Retained and discarded HR samples of one recording:
// phase,pair_time_s,hr_bpm,status,reason
void write_hr_samples_csv(std::ostream& out, const RecordingResult& r);

// label,hr_ecg_bpm,hr_scg_bpm,mean_bpm,difference_bpm
void write_agreement_csv(std::ostream& out, const AgreementReport& a);
// bias_bpm,sd_bpm,loa_low_bpm,loa_high_bpm,multiplier,n
void write_agreement_limits_csv(std::ostream& out, const AgreementReport& a);

std::string hr_samples_filename(std::size_t index, const std::string& label);

// Writes every enabled output into report.config.out_dir; returns the paths.
std::vector<std::filesystem::path> write_run_outputs(const RunReport& report);

SynthConfig synth_config_from_json(const nlohmann::json& j);
nlohmann::ordered_json synth_config_to_json(const SynthConfig& cfg);
// Accepts a single object, an array of objects, or {"recordings": [...]}.
std::vector<SynthConfig> synth_configs_from_json(const nlohmann::json& j);

}  // namespace scghr
