#pragma once

// Brute-force gated phase HR, independent of src/phase_hr.cpp: the
// per-group HR lists are rebuilt from scratch after every appended event.

#include <cmath>
#include <optional>
#include <random>
#include <vector>

#include "scghr/beats.hpp"
#include "scghr/waveform.hpp"

namespace scghr::test {

struct OracleResult {
  std::vector<double> hlv_times, llv_times;
  std::vector<double> hr_hlv, hr_llv;  // retained, bpm
  std::vector<double> ignored_hlv, ignored_llv;
  std::optional<double> combined;
};

inline OracleResult brute_force_phase_hr(const std::vector<double>& event_times, const Waveform& lv,
                                      double hr_min = 50.0) {
  OracleResult r;
  for (double t : event_times) {
    long long idx = std::llround((t - lv.start_time()) * lv.rate());
    idx = std::max(0LL, std::min(idx, static_cast<long long>(lv.size()) - 1));
    const double value = lv[static_cast<std::size_t>(idx)];
    if (value > 0) {
      r.hlv_times.push_back(t);
      r.hr_hlv.clear();
      r.ignored_hlv.clear();
      for (std::size_t j = 0; j + 1 < r.hlv_times.size(); ++j) {
        const double hr = 60.0 / (r.hlv_times[j + 1] - r.hlv_times[j]);
        if (hr < hr_min)
          r.ignored_hlv.push_back(hr);
        else
          r.hr_hlv.push_back(hr);
      }
    } else if (value < 0) {
      r.llv_times.push_back(t);
      r.hr_llv.clear();
      r.ignored_llv.clear();
      for (std::size_t k = 0; k + 1 < r.llv_times.size(); ++k) {
        const double hr = 60.0 / (r.llv_times[k + 1] - r.llv_times[k]);
        if (hr < hr_min)
          r.ignored_llv.push_back(hr);
        else
          r.hr_llv.push_back(hr);
      }
    }
  }
  const std::size_t m = r.hr_llv.size(), n = r.hr_hlv.size();
  if (m + n > 0) {
    double sum_llv = 0, sum_hlv = 0;
    for (double v : r.hr_llv) sum_llv += v;
    for (double v : r.hr_hlv) sum_hlv += v;
    r.combined = (sum_llv + sum_hlv) / static_cast<double>(m + n);
  }
  return r;
}

// Random LV (sum of slow sines, with a few samples forced to exactly zero)
// and a sorted list of at most `max_events` distinct event times inside it.
struct RandomCase {
  Waveform lv;
  std::vector<BeatEvent> events;
};

inline RandomCase random_case(std::mt19937_64& rng, std::size_t max_events = 50) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double rate = 320.0;
  const double seconds = 20.0 + 60.0 * u(rng);
  const auto n = static_cast<std::size_t>(seconds * rate);
  const double f1 = 0.1 + 0.3 * u(rng), f2 = 0.05 + 0.5 * u(rng);
  const double p1 = 6.28 * u(rng), p2 = 6.28 * u(rng), a2 = u(rng);
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / rate;
    v[i] = std::sin(2 * 3.141592653589793 * f1 * t + p1) + a2 * std::sin(2 * 3.141592653589793 * f2 * t + p2);
  }
  for (int z = 0; z < 5; ++z) v[static_cast<std::size_t>(u(rng) * (n - 1))] = 0.0;

  std::uniform_int_distribution<std::size_t> count(0, max_events);
  const std::size_t k = count(rng);
  std::vector<double> times;
  // Mostly beat-like spacing, sometimes clustered or long gaps.
  double t = 0.2 * u(rng);
  while (times.size() < k) {
    const double step = u(rng) < 0.8 ? 0.5 + 0.8 * u(rng) : 0.01 + 3.0 * u(rng);
    t += step;
    if (t > (n - 1) / rate) break;
    times.push_back(t);
  }
  // Some events exactly on forced-zero samples.
  for (std::size_t i = 0; i < times.size(); ++i)
    if (u(rng) < 0.05) times[i] = std::round(times[i] * rate) / rate;

  RandomCase c{Waveform(std::move(v), rate), {}};
  double last = -1.0;
  for (double tt : times) {
    if (tt <= last) continue;
    c.events.push_back({tt, BeatSource::scg, 0.0, Phase::unassigned});
    last = tt;
  }
  return c;
}

}  // namespace scghr::test
