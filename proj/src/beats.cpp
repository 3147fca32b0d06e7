#include "scghr/beats.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>

namespace scghr {

namespace {

std::vector<double> moving_average(const std::vector<double>& x, std::size_t half_width) {
  const std::size_t n = x.size();
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + x[i];
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i >= half_width ? i - half_width : 0;
    const std::size_t hi = std::min(n, i + half_width + 1);
    // Clamp at 0: prefix differences can go slightly negative from rounding.
    out[i] = std::max(0.0, (prefix[hi] - prefix[lo]) / static_cast<double>(hi - lo));
  }
  return out;
}

std::size_t half_width_for(double smooth_s, double rate) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(smooth_s * rate / 2.0)));
}

double quantile(std::vector<double> v, double q) {
  const auto k = static_cast<std::size_t>(std::floor(q * static_cast<double>(v.size() - 1)));
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k), v.end());
  return v[k];
}

struct Candidate {
  std::size_t index;
  double time;
  double strength;
};

}  // namespace

std::string_view to_string(BeatSource s) noexcept { return s == BeatSource::scg ? "scg" : "ecg"; }

std::string_view to_string(Phase p) noexcept {
  switch (p) {
    case Phase::llv: return "llv";
    case Phase::hlv: return "hlv";
    case Phase::unassigned: break;
  }
  return "unassigned";
}

void DetectorConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::invalid_argument(fmt::format("detector {} must be positive, got {}", name, v));
  };
  positive(refractory_s, "refractory_s");
  positive(envelope_smooth_s, "envelope_smooth_s");
  positive(threshold_factor, "threshold_factor");
  positive(edge_exclude_s, "edge_exclude_s");
  positive(min_peak_factor, "min_peak_factor");
  positive(floor_fraction, "floor_fraction");
  if (refractory_s >= 2.0)
    throw std::invalid_argument(fmt::format("detector refractory_s must be < 2 s, got {}", refractory_s));
}

std::vector<double> energy_envelope(const Waveform& w, double smooth_s) {
  std::vector<double> sq(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) sq[i] = w[i] * w[i];
  return moving_average(sq, half_width_for(smooth_s, w.rate()));
}

std::vector<double> derivative_envelope(const Waveform& w, double smooth_s) {
  const std::size_t n = w.size();
  std::vector<double> sq(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double d = 0.5 * (w[i + 1] - w[i - 1]);
    sq[i] = d * d;
  }
  return moving_average(sq, half_width_for(smooth_s, w.rate()));
}

std::vector<BeatEvent> detect_on_envelope(const Waveform& w, const std::vector<double>& env,
                                          BeatSource source, const DetectorConfig& cfg,
                                          const std::vector<double>& fiducial) {
  cfg.validate();
  if (w.empty() || w.duration() <= 2.0 * cfg.edge_exclude_s)
    throw std::invalid_argument(fmt::format("beat detection needs more than {} s of signal, got {} s",
                                            2.0 * cfg.edge_exclude_s, w.duration()));
  if (env.size() != w.size()) throw std::invalid_argument("envelope length differs from waveform");
  if (!fiducial.empty() && fiducial.size() != w.size())
    throw std::invalid_argument("fiducial length differs from waveform");
  const std::vector<double>& fid = fiducial.empty() ? env : fiducial;

  const std::size_t n = w.size();
  const double rate = w.rate();
  const auto lo = static_cast<std::size_t>(std::ceil(cfg.edge_exclude_s * rate - 1e-9));
  const auto hi = std::min(
      n - 1, static_cast<std::size_t>(std::floor(static_cast<double>(n) - cfg.edge_exclude_s * rate + 1e-9)));
  if (lo > hi) return {};

  const double median = quantile(env, 0.5);
  const double threshold = std::max(cfg.threshold_factor * median, cfg.floor_fraction * quantile(env, 0.99));
  const double min_peak = cfg.min_peak_factor * median;
  const double t_lo = w.time_at(lo);
  const double t_hi = w.time_at(hi);

  std::vector<Candidate> candidates;
  std::size_t i = lo;
  while (i <= hi) {
    if (!(env[i] > threshold)) {
      ++i;
      continue;
    }
    std::size_t strongest = i, peak = i;
    while (i <= hi && env[i] > threshold) {
      if (env[i] > env[strongest]) strongest = i;
      if (fid[i] > fid[peak]) peak = i;
      ++i;
    }
    if (env[strongest] <= 0.0 || env[strongest] < min_peak) continue;

    double offset = 0.0;
    if (peak > 0 && peak + 1 < n) {
      const double curvature = fid[peak - 1] - 2.0 * fid[peak] + fid[peak + 1];
      if (curvature < 0.0)
        offset = std::clamp(0.5 * (fid[peak - 1] - fid[peak + 1]) / curvature, -0.5, 0.5);
    }
    const double t = std::clamp(w.start_time() + (static_cast<double>(peak) + offset) / rate, t_lo, t_hi);
    candidates.push_back({peak, t, env[strongest]});
  }

  // Strongest first; ties keep the earlier candidate.
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) { return a.strength > b.strength; });
  std::set<double> kept_times;
  std::vector<BeatEvent> events;
  for (const Candidate& c : candidates) {
    auto next = kept_times.lower_bound(c.time);
    if (next != kept_times.end() && *next - c.time < cfg.refractory_s) continue;
    if (next != kept_times.begin() && c.time - *std::prev(next) < cfg.refractory_s) continue;
    kept_times.insert(c.time);
    events.push_back({c.time, source, w[c.index], Phase::unassigned});
  }
  std::sort(events.begin(), events.end(),
            [](const BeatEvent& a, const BeatEvent& b) { return a.time < b.time; });
  return events;
}

std::vector<BeatEvent> detect_scg_events(const Waveform& scg, const DetectorConfig& cfg) {
  cfg.validate();
  if (scg.empty()) throw std::invalid_argument("detect_scg_events: empty waveform");
  return detect_on_envelope(scg, energy_envelope(scg, cfg.envelope_smooth_s), BeatSource::scg, cfg);
}

std::vector<BeatEvent> detect_ecg_rpeaks(const Waveform& ecg, const DetectorConfig& cfg) {
  cfg.validate();
  if (ecg.empty()) throw std::invalid_argument("detect_ecg_rpeaks: empty waveform");
  std::vector<double> deflection(ecg.size());
  for (std::size_t i = 0; i < ecg.size(); ++i) deflection[i] = std::abs(ecg[i]);
  return detect_on_envelope(ecg, derivative_envelope(ecg, cfg.envelope_smooth_s), BeatSource::ecg, cfg, deflection);
}

}  // namespace scghr
