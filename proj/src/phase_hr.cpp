#include "scghr/phase_hr.hpp"

#include <cmath>

#include <fmt/format.h>

namespace scghr {

void GateConfig::validate() const {
  if (!(hr_min_bpm > 0.0) || !std::isfinite(hr_min_bpm))
    throw std::invalid_argument(fmt::format("hr_min_bpm must be positive, got {}", hr_min_bpm));
  if (!(lv_zero_epsilon >= 0.0) || !std::isfinite(lv_zero_epsilon))
    throw std::invalid_argument(fmt::format("lv_zero_epsilon must be >= 0, got {}", lv_zero_epsilon));
}

PhaseGroups classify_events(const std::vector<BeatEvent>& events, const LungVolume& lv,
                            const GateConfig& cfg) {
  cfg.validate();
  PhaseGroups groups;
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (i > 0 && !(events[i].time > events[i - 1].time))
      throw std::invalid_argument(fmt::format("events not strictly increasing at index {}", i));
    const auto idx = lv.wave.nearest_index(events[i].time);
    if (!idx)
      throw std::invalid_argument(
          fmt::format("event at {} s lies outside the lung-volume span", events[i].time));
    const double v = lv.wave[*idx];
    BeatEvent e = events[i];
    if (v > cfg.lv_zero_epsilon) {
      e.phase = Phase::hlv;
      groups.hlv.push_back(e);
    } else if (v < -cfg.lv_zero_epsilon) {
      e.phase = Phase::llv;
      groups.llv.push_back(e);
    } else {
      e.phase = Phase::unassigned;
      groups.dropped_at_zero.push_back(e);
    }
  }
  return groups;
}

PhaseHrSeries pairwise_hr(const std::vector<BeatEvent>& group, const GateConfig& cfg) {
  cfg.validate();
  PhaseHrSeries series;
  series.phase = group.empty() ? Phase::unassigned : group.front().phase;
  for (std::size_t j = 0; j + 1 < group.size(); ++j) {
    const double t0 = group[j].time;
    const double t1 = group[j + 1].time;
    if (!(t1 > t0))
      throw std::invalid_argument(fmt::format("group times not strictly increasing at index {}", j + 1));
    const double hr = 60.0 / (t1 - t0);
    const double mid = 0.5 * (t0 + t1);
    if (hr < cfg.hr_min_bpm)
      series.discarded.push_back({mid, hr, kBelowGate});
    else
      series.samples.push_back({mid, hr});
  }
  return series;
}

double combined_hr(const PhaseHrSeries& llv, const PhaseHrSeries& hlv) {
  const std::size_t m = llv.samples.size();
  const std::size_t n = hlv.samples.size();
  if (m + n == 0) throw NoDataError("combined HR: no retained samples in either phase");
  double sum_llv = 0.0;
  for (const auto& s : llv.samples) sum_llv += s.hr_bpm;
  double sum_hlv = 0.0;
  for (const auto& s : hlv.samples) sum_hlv += s.hr_bpm;
  return (sum_llv + sum_hlv) / static_cast<double>(m + n);
}

PhaseStats phase_stats(const PhaseHrSeries& series) {
  PhaseStats st;
  st.count = series.samples.size();
  if (st.count == 0) return st;
  double sum = 0.0;
  for (const auto& s : series.samples) sum += s.hr_bpm;
  const double mean = sum / static_cast<double>(st.count);
  st.mean_bpm = mean;
  if (st.count < 2) {
    st.sd_bpm = 0.0;
    st.sd_undefined = true;
    return st;
  }
  double ss = 0.0;
  for (const auto& s : series.samples) ss += (s.hr_bpm - mean) * (s.hr_bpm - mean);
  st.sd_bpm = std::sqrt(ss / static_cast<double>(st.count - 1));
  return st;
}

double hlv_llv_ratio(const PhaseSummary& summary) {
  if (!summary.hlv.mean_bpm || !summary.llv.mean_bpm)
    throw NoDataError("HLV/LLV ratio: a phase has no retained samples");
  if (!(*summary.llv.mean_bpm > 0.0)) throw NoDataError("HLV/LLV ratio: LLV mean is not positive");
  return *summary.hlv.mean_bpm / *summary.llv.mean_bpm;
}

PhaseSummary summarize(const PhaseHrSeries& llv, const PhaseHrSeries& hlv) {
  PhaseSummary s;
  s.llv = phase_stats(llv);
  s.hlv = phase_stats(hlv);
  if (!llv.samples.empty() || !hlv.samples.empty()) s.combined_bpm = combined_hr(llv, hlv);
  if (s.hlv.mean_bpm && s.llv.mean_bpm && *s.llv.mean_bpm > 0.0) s.ratio_hlv_llv = hlv_llv_ratio(s);
  return s;
}

PhaseAnalysis analyze_phases(const std::vector<BeatEvent>& events, const LungVolume& lv,
                             const GateConfig& cfg) {
  PhaseAnalysis a;
  a.groups = classify_events(events, lv, cfg);
  a.llv = pairwise_hr(a.groups.llv, cfg);
  a.llv.phase = Phase::llv;
  a.hlv = pairwise_hr(a.groups.hlv, cfg);
  a.hlv.phase = Phase::hlv;
  a.summary = summarize(a.llv, a.hlv);
  return a;
}

}  // namespace scghr
