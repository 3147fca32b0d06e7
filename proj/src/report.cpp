#include "scghr/serialize.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>

namespace scghr {

namespace {

using ojson = nlohmann::ordered_json;

std::string opt_fixed(const std::optional<double>& v, int decimals) {
  return v ? fmt::format("{:.{}f}", *v, decimals) : std::string("n/a");
}

ojson opt_json(const std::optional<double>& v) { return v ? ojson(*v) : ojson(nullptr); }

ojson stats_json(const PhaseStats& st) {
  return ojson{{"mean_bpm", opt_json(st.mean_bpm)},
               {"sd_bpm", opt_json(st.sd_bpm)},
               {"count", st.count},
               {"sd_undefined", st.sd_undefined}};
}

std::string sanitize(const std::string& label) {
  std::string out;
  for (char c : label)
    out.push_back((std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_');
  return out.empty() ? "recording" : out;
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
  out << body;
}

}  // namespace

std::string format_mean_sd(const PhaseStats& st) {
  if (!st.mean_bpm) return "n/a";
  return fmt::format("{:.1f} ± {:.1f}{}", *st.mean_bpm, st.sd_bpm.value_or(0.0), st.sd_undefined ? "*" : "");
}

std::string render_text(const RunReport& report) {
  const RunConfig& cfg = report.config;
  std::string s;
  auto out = std::back_inserter(s);
  fmt::format_to(out, "{} report\n", report.tool_version);
  fmt::format_to(out,
                 "config: target_rate={} Hz, lowpass_cutoff={} Hz, hr_min={} bpm, lv_zero_epsilon={}, "
                 "refractory={} s, envelope_smooth={} s, threshold_factor={}, edge_exclude={} s\n",
                 cfg.target_rate, cfg.lowpass_cutoff, cfg.gate.hr_min_bpm, cfg.gate.lv_zero_epsilon,
                 cfg.detector.refractory_s, cfg.detector.envelope_smooth_s, cfg.detector.threshold_factor,
                 cfg.detector.edge_exclude_s);
  const auto overrides = cfg.overrides();
  fmt::format_to(out, "overrides: {}\n", overrides.empty() ? "none" : fmt::format("{}", fmt::join(overrides, ", ")));
  fmt::format_to(out, "recordings: {} ({} failed)\n\n", report.recordings.size(), report.failed());

  fmt::format_to(out, "Heart rate during low and high lung volume (bpm, mean ± SD; sample SD, * = single sample)\n");
  fmt::format_to(out, "{:<24} {:>16} {:>16} {:>7} {:>7}\n", "recording", "LLV", "HLV", "n_LLV", "n_HLV");
  for (const auto& r : report.recordings) {
    if (!r.ok) continue;
    const auto& sm = r.scg.summary;
    fmt::format_to(out, "{:<24} {:>16} {:>16} {:>7} {:>7}\n", r.label, format_mean_sd(sm.llv),
                   format_mean_sd(sm.hlv), sm.llv.count, sm.hlv.count);
  }

  fmt::format_to(out, "\nCombined heart rate (bpm)\n");
  fmt::format_to(out, "{:<24} {:>12} {:>12} {:>14}\n", "recording", "SCG", "ECG", "ECG all-pairs");
  for (const auto& r : report.recordings) {
    if (!r.ok) continue;
    fmt::format_to(out, "{:<24} {:>12} {:>12} {:>14}\n", r.label, opt_fixed(r.scg.summary.combined_bpm, 1),
                   opt_fixed(r.ecg_combined_bpm, 1), opt_fixed(r.ecg_all_pairs_bpm, 1));
  }

  fmt::format_to(out, "\nHR_HLV / HR_LLV ratio\n");
  fmt::format_to(out, "{:<24} {:>10}\n", "recording", "ratio");
  for (const auto& r : report.recordings) {
    if (!r.ok) continue;
    fmt::format_to(out, "{:<24} {:>10}\n", r.label, opt_fixed(r.scg.summary.ratio_hlv_llv, 6));
  }

  fmt::format_to(out, "\nAudit\n");
  fmt::format_to(out, "{:<24} {:>10} {:>6} {:>6} {:>8} {:>10} {:>10} {:>10}\n", "recording", "scg_events", "llv",
                 "hlv", "at_zero", "gated_llv", "gated_hlv", "ecg_events");
  for (const auto& r : report.recordings) {
    if (!r.ok) continue;
    const auto& g = r.scg.groups;
    fmt::format_to(out, "{:<24} {:>10} {:>6} {:>6} {:>8} {:>10} {:>10} {:>10}\n", r.label, r.scg_events,
                   g.llv.size(), g.hlv.size(), g.dropped_at_zero.size(), r.scg.llv.discarded.size(),
                   r.scg.hlv.discarded.size(), r.has_ecg ? fmt::format("{}", r.ecg_events) : "n/a");
  }

  fmt::format_to(out, "\nAgreement (ECG - SCG combined HR)\n");
  if (report.agreement) {
    const auto& a = *report.agreement;
    fmt::format_to(out, "n = {}, bias = {:.3f} bpm, SD = {:.3f} bpm, limits = [{:.3f}, {:.3f}] bpm (bias ± {} SD)\n",
                   a.pairs.size(), a.bias_bpm, a.sd_bpm, a.loa_low_bpm, a.loa_high_bpm, a.multiplier);
  } else {
    fmt::format_to(out, "n/a (needs at least 2 recordings with SCG and ECG combined HR)\n");
  }

  if (report.failed() > 0) {
    fmt::format_to(out, "\nFailed recordings\n");
    for (const auto& r : report.recordings)
      if (!r.ok) fmt::format_to(out, "{}: {}\n", r.label, r.error);
  }
  return s;
}

ojson report_json(const RunReport& report) {
  const RunConfig& cfg = report.config;
  ojson j;
  j["tool_version"] = report.tool_version;
  j["config"] = {{"target_rate_hz", cfg.target_rate},
                 {"lowpass_cutoff_hz", cfg.lowpass_cutoff},
                 {"gate", {{"hr_min_bpm", cfg.gate.hr_min_bpm}, {"lv_zero_epsilon", cfg.gate.lv_zero_epsilon}}},
                 {"detector",
                  {{"refractory_s", cfg.detector.refractory_s},
                   {"envelope_smooth_s", cfg.detector.envelope_smooth_s},
                   {"threshold_factor", cfg.detector.threshold_factor},
                   {"edge_exclude_s", cfg.detector.edge_exclude_s},
                   {"min_peak_factor", cfg.detector.min_peak_factor},
                   {"floor_fraction", cfg.detector.floor_fraction}}},
                 {"sd_convention", "sample (n-1)"},
                 {"overrides", cfg.overrides()}};

  ojson recs = ojson::array();
  for (std::size_t i = 0; i < report.recordings.size(); ++i) {
    const auto& r = report.recordings[i];
    ojson e{{"label", r.label}, {"ok", r.ok}};
    if (!r.ok) {
      e["error"] = r.error;
      recs.push_back(std::move(e));
      continue;
    }
    const auto& sm = r.scg.summary;
    e["input_rate_hz"] = r.input_rate;
    e["duration_s"] = r.duration_s;
    e["llv"] = stats_json(sm.llv);
    e["hlv"] = stats_json(sm.hlv);
    e["combined_bpm"] = opt_json(sm.combined_bpm);
    e["ratio_hlv_llv"] = opt_json(sm.ratio_hlv_llv);
    e["ecg_combined_bpm"] = opt_json(r.ecg_combined_bpm);
    e["ecg_all_pairs_bpm"] = opt_json(r.ecg_all_pairs_bpm);
    e["audit"] = {{"scg_events", r.scg_events},
                  {"llv_events", r.scg.groups.llv.size()},
                  {"hlv_events", r.scg.groups.hlv.size()},
                  {"dropped_at_zero", r.scg.groups.dropped_at_zero.size()},
                  {"gated_llv", r.scg.llv.discarded.size()},
                  {"gated_hlv", r.scg.hlv.discarded.size()},
                  {"ecg_events", r.has_ecg ? ojson(r.ecg_events) : ojson(nullptr)}};
    e["samples_csv"] = hr_samples_filename(i, r.label);
    recs.push_back(std::move(e));
  }
  j["recordings"] = std::move(recs);

  if (report.agreement) {
    const auto& a = *report.agreement;
    ojson pts = ojson::array();
    for (const auto& p : a.pairs) pts.push_back({{"label", p.label}, {"hr_ecg_bpm", p.hr_a_bpm}, {"hr_scg_bpm", p.hr_b_bpm}});
    j["agreement"] = {{"difference", "ecg - scg"},
                      {"n", a.pairs.size()},
                      {"bias_bpm", a.bias_bpm},
                      {"sd_bpm", a.sd_bpm},
                      {"loa_low_bpm", a.loa_low_bpm},
                      {"loa_high_bpm", a.loa_high_bpm},
                      {"multiplier", a.multiplier},
                      {"pairs", std::move(pts)}};
  } else {
    j["agreement"] = nullptr;
  }
  return j;
}

void write_hr_samples_csv(std::ostream& out, const RecordingResult& r) {
  out << "phase,pair_time_s,hr_bpm,status,reason\n";
  for (const PhaseHrSeries* series : {&r.scg.llv, &r.scg.hlv}) {
    const auto phase = to_string(series->phase);
    for (const auto& s : series->samples) out << fmt::format("{},{},{},retained,\n", phase, s.pair_time, s.hr_bpm);
    for (const auto& d : series->discarded)
      out << fmt::format("{},{},{},discarded,{}\n", phase, d.pair_time, d.hr_bpm, d.reason);
  }
}

void write_agreement_csv(std::ostream& out, const AgreementReport& a) {
  out << "label,hr_ecg_bpm,hr_scg_bpm,mean_bpm,difference_bpm\n";
  for (const auto& p : a.pairs)
    out << fmt::format("{},{},{},{},{}\n", p.label, p.hr_a_bpm, p.hr_b_bpm, 0.5 * (p.hr_a_bpm + p.hr_b_bpm),
                       p.hr_a_bpm - p.hr_b_bpm);
}

void write_agreement_limits_csv(std::ostream& out, const AgreementReport& a) {
  out << "bias_bpm,sd_bpm,loa_low_bpm,loa_high_bpm,multiplier,n\n";
  out << fmt::format("{},{},{},{},{},{}\n", a.bias_bpm, a.sd_bpm, a.loa_low_bpm, a.loa_high_bpm, a.multiplier,
                     a.pairs.size());
}

std::string hr_samples_filename(std::size_t index, const std::string& label) {
  return fmt::format("{:02}_{}_hr_samples.csv", index + 1, sanitize(label));
}

std::vector<std::filesystem::path> write_run_outputs(const RunReport& report) {
  const auto& dir = report.config.out_dir;
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  auto emit = [&](const std::string& name, const std::string& body) {
    write_file(dir / name, body);
    written.push_back(dir / name);
  };
  if (report.config.emit_text) emit("report.txt", render_text(report));
  if (report.config.emit_json) emit("report.json", report_json(report).dump(2) + "\n");
  for (std::size_t i = 0; i < report.recordings.size(); ++i) {
    const auto& r = report.recordings[i];
    if (!r.ok) continue;
    std::ostringstream os;
    write_hr_samples_csv(os, r);
    emit(hr_samples_filename(i, r.label), os.str());
  }
  if (report.agreement) {
    std::ostringstream pts;
    write_agreement_csv(pts, *report.agreement);
    emit("agreement.csv", pts.str());
    std::ostringstream lim;
    write_agreement_limits_csv(lim, *report.agreement);
    emit("agreement_limits.csv", lim.str());
  }
  return written;
}

SynthConfig synth_config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("synth config must be a JSON object");
  static const std::set<std::string> known = {
      "label",         "duration_s",     "sample_rate",    "resp_rate_bpm", "ie_inspiratory",
      "ie_expiratory", "base_hr_bpm",    "rsa_ratio",      "snr_db",        "seed",
      "flow_amplitude", "scg_amplitude", "ecg_amplitude", "hf_burst_amplitude"};
  for (const auto& [key, value] : j.items())
    if (!known.contains(key)) throw std::invalid_argument(fmt::format("unknown synth config key '{}'", key));

  SynthConfig c;
  try {
    c.label = j.value("label", c.label);
    c.duration_s = j.value("duration_s", c.duration_s);
    c.sample_rate = j.value("sample_rate", c.sample_rate);
    c.resp_rate_bpm = j.value("resp_rate_bpm", c.resp_rate_bpm);
    c.ie_inspiratory = j.value("ie_inspiratory", c.ie_inspiratory);
    c.ie_expiratory = j.value("ie_expiratory", c.ie_expiratory);
    c.base_hr_bpm = j.value("base_hr_bpm", c.base_hr_bpm);
    c.rsa_ratio = j.value("rsa_ratio", c.rsa_ratio);
    if (j.contains("snr_db")) {
      if (j["snr_db"].is_null())
        c.snr_db.reset();
      else
        c.snr_db = j["snr_db"].get<double>();
    }
    c.seed = j.value("seed", c.seed);
    c.flow_amplitude = j.value("flow_amplitude", c.flow_amplitude);
    c.scg_amplitude = j.value("scg_amplitude", c.scg_amplitude);
    c.ecg_amplitude = j.value("ecg_amplitude", c.ecg_amplitude);
    c.hf_burst_amplitude = j.value("hf_burst_amplitude", c.hf_burst_amplitude);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(fmt::format("synth config: {}", e.what()));
  }
  c.validate();
  return c;
}

nlohmann::ordered_json synth_config_to_json(const SynthConfig& c) {
  return ojson{{"label", c.label},
               {"duration_s", c.duration_s},
               {"sample_rate", c.sample_rate},
               {"resp_rate_bpm", c.resp_rate_bpm},
               {"ie_inspiratory", c.ie_inspiratory},
               {"ie_expiratory", c.ie_expiratory},
               {"base_hr_bpm", c.base_hr_bpm},
               {"rsa_ratio", c.rsa_ratio},
               {"snr_db", opt_json(c.snr_db)},
               {"seed", c.seed},
               {"flow_amplitude", c.flow_amplitude},
               {"scg_amplitude", c.scg_amplitude},
               {"ecg_amplitude", c.ecg_amplitude},
               {"hf_burst_amplitude", c.hf_burst_amplitude}};
}

std::vector<SynthConfig> synth_configs_from_json(const nlohmann::json& j) {
  const nlohmann::json* list = &j;
  if (j.is_object() && j.contains("recordings")) list = &j["recordings"];
  std::vector<SynthConfig> out;
  if (list->is_array()) {
    for (const auto& item : *list) out.push_back(synth_config_from_json(item));
  } else {
    out.push_back(synth_config_from_json(*list));
  }
  return out;
}

}  // namespace scghr
