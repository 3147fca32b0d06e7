#include "scghr/pipeline.hpp"

#include <functional>
#include <future>

#include <fmt/format.h>

#include "scghr/signal.hpp"

namespace scghr {

void RunConfig::validate() const {
  if (!(target_rate > 0.0)) throw std::invalid_argument(fmt::format("target rate must be positive, got {}", target_rate));
  if (!(lowpass_cutoff > 0.0) || !(lowpass_cutoff < target_rate / 2.0))
    throw std::invalid_argument(
        fmt::format("cutoff {} Hz must lie in (0, {} Hz)", lowpass_cutoff, target_rate / 2.0));
  gate.validate();
  detector.validate();
  for (const auto& s : synth) s.validate();
}

std::vector<std::string> RunConfig::overrides() const {
  const RunConfig d;
  std::vector<std::string> out;
  auto check = [&](const char* name, double value, double def) {
    if (value != def) out.push_back(fmt::format("{}={}", name, value));
  };
  check("target_rate", target_rate, d.target_rate);
  check("lowpass_cutoff", lowpass_cutoff, d.lowpass_cutoff);
  check("hr_min_bpm", gate.hr_min_bpm, d.gate.hr_min_bpm);
  check("lv_zero_epsilon", gate.lv_zero_epsilon, d.gate.lv_zero_epsilon);
  check("refractory_s", detector.refractory_s, d.detector.refractory_s);
  check("envelope_smooth_s", detector.envelope_smooth_s, d.detector.envelope_smooth_s);
  check("threshold_factor", detector.threshold_factor, d.detector.threshold_factor);
  check("edge_exclude_s", detector.edge_exclude_s, d.detector.edge_exclude_s);
  check("min_peak_factor", detector.min_peak_factor, d.detector.min_peak_factor);
  check("floor_fraction", detector.floor_fraction, d.detector.floor_fraction);
  if (mapping.time_column != d.mapping.time_column) out.push_back("map.time=" + mapping.time_column);
  for (const auto& [channel, column] : mapping.columns)
    out.push_back(fmt::format("map.{}={}", to_string(channel), column));
  return out;
}

std::size_t RunReport::failed() const {
  std::size_t n = 0;
  for (const auto& r : recordings)
    if (!r.ok) ++n;
  return n;
}

Conditioned condition(const Recording& rec, double target_rate, double cutoff_hz) {
  Conditioned c;
  c.scg = lowpass(resample(rec.at(Channel::scg_z), target_rate), cutoff_hz);
  if (rec.has(Channel::ecg)) c.ecg = lowpass(resample(rec.at(Channel::ecg), target_rate), cutoff_hz);
  c.lv = detrend_lv(integrate_flow(resample(rec.at(Channel::flow), target_rate)));
  return c;
}

RecordingResult analyze_recording(const Recording& rec, const RunConfig& cfg, std::string label) {
  RecordingResult r;
  r.label = std::move(label);
  r.input_rate = rec.rate();
  r.duration_s = rec.at(Channel::flow).duration();

  const Conditioned c = condition(rec, cfg.target_rate, cfg.lowpass_cutoff);
  const auto scg_events = detect_scg_events(c.scg, cfg.detector);
  r.scg_events = scg_events.size();
  r.scg = analyze_phases(scg_events, c.lv, cfg.gate);

  if (c.ecg) {
    r.has_ecg = true;
    const auto rpeaks = detect_ecg_rpeaks(*c.ecg, cfg.detector);
    r.ecg_events = rpeaks.size();
    try {
      r.ecg_combined_bpm = ecg_combined_hr(rpeaks, c.lv, cfg.gate);
    } catch (const NoDataError&) {
    }
    if (rpeaks.size() >= 2) r.ecg_all_pairs_bpm = ecg_all_pairs_hr(rpeaks);
  }
  r.ok = true;
  return r;
}

namespace {

struct Source {
  std::string label;
  std::function<Recording()> load;
};

RunReport run_sources(const std::vector<Source>& sources, const RunConfig& cfg) {
  if (sources.empty()) throw std::invalid_argument("no input recordings");
  cfg.validate();

  auto run_one = [&cfg](const Source& src) {
    try {
      return analyze_recording(src.load(), cfg, src.label);
    } catch (const std::exception& e) {
      RecordingResult failed;
      failed.label = src.label;
      failed.error = e.what();
      return failed;
    }
  };

  RunReport report;
  report.config = cfg;
  report.recordings.resize(sources.size());
  if (cfg.jobs > 1) {
    // Bounded fan-out; results land at their input index.
    for (std::size_t start = 0; start < sources.size(); start += cfg.jobs) {
      std::vector<std::future<RecordingResult>> batch;
      const std::size_t stop = std::min(sources.size(), start + cfg.jobs);
      for (std::size_t i = start; i < stop; ++i)
        batch.push_back(std::async(std::launch::async, run_one, std::cref(sources[i])));
      for (std::size_t i = start; i < stop; ++i) report.recordings[i] = batch[i - start].get();
    }
  } else {
    for (std::size_t i = 0; i < sources.size(); ++i) report.recordings[i] = run_one(sources[i]);
  }

  std::vector<AgreementPair> pairs;
  for (const auto& r : report.recordings)
    if (r.ok && r.ecg_combined_bpm && r.scg.summary.combined_bpm)
      pairs.push_back({r.label, *r.ecg_combined_bpm, *r.scg.summary.combined_bpm});
  if (pairs.size() >= 2) report.agreement = bland_altman(std::move(pairs));
  return report;
}

}  // namespace

RunReport run_pipeline(const RunConfig& cfg) {
  std::vector<Source> sources;
  for (const auto& path : cfg.inputs)
    sources.push_back({path.stem().string(), [&cfg, path] { return ingest(path, cfg.mapping); }});
  for (const auto& s : cfg.synth)
    sources.push_back({s.label, [s] { return gen_recording(s).recording; }});
  return run_sources(sources, cfg);
}

RunReport run_pipeline(const std::vector<Recording>& recordings, const RunConfig& cfg) {
  std::vector<Source> sources;
  for (std::size_t i = 0; i < recordings.size(); ++i) {
    const Recording& rec = recordings[i];
    std::string label = rec.subject_meta().empty() ? fmt::format("recording-{}", i + 1) : rec.subject_meta();
    sources.push_back({std::move(label), [&rec] { return rec; }});
  }
  return run_sources(sources, cfg);
}

}  // namespace scghr
