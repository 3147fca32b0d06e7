// scghr: heart rate per lung-volume phase from SCG, with ECG agreement.
//
// Exit codes: 0 success, 1 usage/config error, 2 data error (one or more
// recordings failed), 3 internal error.

#include <algorithm>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "scghr/pipeline.hpp"
#include "scghr/serialize.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

scghr::ChannelMapping parse_mapping(const std::vector<std::string>& items) {
  scghr::ChannelMapping m;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == item.size())
      throw UsageError(fmt::format("--map expects channel=column, got '{}'", item));
    const std::string key = item.substr(0, eq);
    const std::string column = item.substr(eq + 1);
    if (key == "time") {
      m.time_column = column;
      continue;
    }
    const auto channel = scghr::parse_channel(key);
    if (!channel) throw UsageError(fmt::format("--map: unknown channel '{}'", key));
    m.columns[*channel] = column;
  }
  return m;
}

std::vector<scghr::SynthConfig> load_synth(const std::string& path, std::optional<std::uint64_t> seed) {
  std::ifstream in(path);
  if (!in) throw UsageError(fmt::format("cannot open synth config '{}'", path));
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(fmt::format("synth config '{}': {}", path, e.what()));
  }
  auto configs = scghr::synth_configs_from_json(j);
  if (seed)
    for (std::size_t i = 0; i < configs.size(); ++i) configs[i].seed = *seed + i;
  return configs;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heart rate during low and high lung volume from seismocardiography"};

  std::vector<std::string> inputs;
  std::vector<std::string> map_items;
  std::string synth_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir = "scghr_out";
  std::vector<std::string> formats = {"text", "json"};
  std::string write_synth_dir;
  bool quiet = false;
  scghr::RunConfig cfg;

  app.add_option("--input,-i", inputs, "Input CSV recording(s) with a time column")->check(CLI::ExistingFile);
  app.add_option("--map", map_items, "Column mapping, e.g. scg_z=acc_z ecg=lead2 flow=rfr time=t");
  app.add_option("--target-rate", cfg.target_rate, "Analysis sampling rate (Hz)");
  app.add_option("--cutoff", cfg.lowpass_cutoff, "SCG/ECG low-pass cutoff (Hz)");
  app.add_option("--hr-min", cfg.gate.hr_min_bpm, "Minimum retained HR (bpm)");
  app.add_option("--lv-epsilon", cfg.gate.lv_zero_epsilon, "LV band around zero assigned to neither phase");
  app.add_option("--refractory", cfg.detector.refractory_s, "Detector refractory period (s)");
  app.add_option("--edge-exclude", cfg.detector.edge_exclude_s, "Seconds excluded at each record edge");
  app.add_option("--out,-o", out_dir, "Output directory");
  app.add_option("--synth", synth_path, "Generate recordings from a JSON synth config instead of ingesting")
      ->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "Seed for synthetic recordings (recording k uses seed + k)");
  app.add_option("--format", formats, "Report formats to emit: text, json")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--jobs,-j", cfg.jobs, "Recordings processed concurrently")->check(CLI::PositiveNumber);
  app.add_option("--write-synth-csv", write_synth_dir, "Also write generated recordings as CSV into this directory");
  app.add_flag("--quiet,-q", quiet, "Do not print the text report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    for (const auto& p : inputs) cfg.inputs.emplace_back(p);
    cfg.mapping = parse_mapping(map_items);
    cfg.out_dir = out_dir;
    cfg.emit_text = std::find(formats.begin(), formats.end(), "text") != formats.end();
    cfg.emit_json = std::find(formats.begin(), formats.end(), "json") != formats.end();
    if (!synth_path.empty()) cfg.synth = load_synth(synth_path, seed);
    if (cfg.inputs.empty() && cfg.synth.empty()) throw UsageError("no input: pass --input FILE... or --synth CONFIG");
    cfg.validate();
  } catch (const std::exception& e) {
    std::cerr << "scghr: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (!write_synth_dir.empty()) {
      std::filesystem::create_directories(write_synth_dir);
      for (const auto& s : cfg.synth)
        scghr::write_recording_csv(std::filesystem::path(write_synth_dir) / (s.label + ".csv"),
                                   scghr::gen_recording(s).recording);
    }
    const auto report = scghr::run_pipeline(cfg);
    scghr::write_run_outputs(report);
    if (!quiet) std::cout << scghr::render_text(report);
    if (report.failed() > 0) {
      for (const auto& r : report.recordings)
        if (!r.ok) std::cerr << "scghr: " << r.label << ": " << r.error << "\n";
      return kExitData;
    }
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "scghr: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
