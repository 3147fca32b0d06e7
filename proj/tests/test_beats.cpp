#include <doctest.h>

#include "scghr/beats.hpp"
#include "scghr/signal.hpp"
#include "scghr/synth.hpp"
#include "test_support.hpp"

using namespace scghr;
using namespace scghr::test;

namespace {

GroundTruth beats_at(std::vector<double> times) {
  GroundTruth t;
  t.beat_times = std::move(times);
  t.beat_phases.assign(t.beat_times.size(), Phase::llv);
  return t;
}

SynthConfig short_config(double seconds, std::optional<double> snr, std::uint64_t seed = 1) {
  SynthConfig c;
  c.duration_s = seconds;
  c.snr_db = snr;
  c.seed = seed;
  return c;
}

void check_events_match(const std::vector<BeatEvent>& events, const std::vector<double>& truth, double tol) {
  REQUIRE(events.size() == truth.size());
  for (std::size_t i = 0; i < truth.size(); ++i) CHECK(std::abs(events[i].time - truth[i]) <= tol);
}

void check_event_invariants(const std::vector<BeatEvent>& events, const Waveform& w, const DetectorConfig& cfg) {
  for (std::size_t i = 0; i < events.size(); ++i) {
    CHECK(events[i].time >= w.start_time() + cfg.edge_exclude_s - 1e-9);
    CHECK(events[i].time <= w.start_time() + w.duration() - cfg.edge_exclude_s + 1e-9);
    if (i > 0) {
      CHECK(events[i].time > events[i - 1].time);
      CHECK(events[i].time - events[i - 1].time >= cfg.refractory_s);
    }
  }
}

}  // namespace

TEST_SUITE("beats") {

TEST_CASE("SCG: three beats at 20 dB SNR land within 20 ms") {
  const std::vector<double> truth = {0.5, 1.3, 2.1};
  const auto cfg = short_config(3.0, 20.0);
  const auto scg = lowpass(gen_scg(beats_at(truth), cfg), 100.0);
  const auto events = detect_scg_events(scg);
  check_events_match(events, truth, 0.020);
  for (const auto& e : events) CHECK(e.source == BeatSource::scg);
}

TEST_CASE("SCG and ECG: all-zero input gives no events") {
  const Waveform zero(std::vector<double>(960, 0.0), 320.0);
  CHECK(detect_scg_events(zero).empty());
  CHECK(detect_ecg_rpeaks(zero).empty());
}

TEST_CASE("SCG: noise-only input gives no events") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto scg = lowpass(gen_scg(beats_at({}), short_config(30.0, 20.0, seed)), 100.0);
    CHECK(detect_scg_events(scg).empty());
  }
}

TEST_CASE("SCG: two identical pulses inside the refractory period count once") {
  const auto cfg = short_config(3.0, std::nullopt);
  const auto scg = gen_scg(beats_at({1.4, 1.55}), cfg);
  DetectorConfig dc;
  dc.refractory_s = 0.3;
  const auto events = detect_scg_events(scg, dc);
  REQUIRE(events.size() == 1);
  CHECK(std::abs(events[0].time - 1.475) <= 0.1);
}

TEST_CASE("ECG: three R-peaks within 10 ms") {
  const std::vector<double> truth = {0.8, 1.6, 2.4};
  const auto cfg = short_config(3.2, 20.0);
  const auto ecg = lowpass(gen_ecg(beats_at(truth), cfg), 100.0);
  const auto events = detect_ecg_rpeaks(ecg);
  check_events_match(events, truth, 0.010);
  for (const auto& e : events) CHECK(e.source == BeatSource::ecg);
}

TEST_CASE("ECG: constant 75 bpm for 60 s yields 74-76 R-peaks") {
  SynthConfig cfg = short_config(60.0, 20.0, 3);
  cfg.base_hr_bpm = 75.0;
  cfg.rsa_ratio = 1.0;
  const auto rec = gen_recording(cfg);
  const auto events = detect_ecg_rpeaks(lowpass(rec.recording.at(Channel::ecg), 100.0));
  CHECK(events.size() >= 74);
  CHECK(events.size() <= 76);
}

TEST_CASE("detector errors") {
  const Waveform short_w(std::vector<double>(320, 0.0), 320.0);
  CHECK_THROWS_AS(detect_scg_events(short_w), std::invalid_argument);
  CHECK_THROWS_AS(detect_ecg_rpeaks(short_w), std::invalid_argument);
  CHECK_THROWS_AS(detect_scg_events(Waveform({}, 320.0)), std::invalid_argument);
  DetectorConfig bad;
  bad.refractory_s = 2.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = {};
  bad.envelope_smooth_s = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = {};
  bad.threshold_factor = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("property: positive scaling leaves event times unchanged") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const auto rec = gen_recording(short_config(20.0, 20.0, seed));
    const auto scg = lowpass(rec.recording.at(Channel::scg_z), 100.0);
    const auto ecg = lowpass(rec.recording.at(Channel::ecg), 100.0);
    const auto base_scg = detect_scg_events(scg);
    const auto base_ecg = detect_ecg_rpeaks(ecg);
    for (double k : {1e-3, 0.37, 4.0, 1234.5}) {
      auto scale = [k](const Waveform& w) {
        auto s = w.samples();
        for (double& v : s) v *= k;
        return Waveform(std::move(s), w.rate(), w.start_time());
      };
      const auto s2 = detect_scg_events(scale(scg));
      const auto e2 = detect_ecg_rpeaks(scale(ecg));
      REQUIRE(s2.size() == base_scg.size());
      REQUIRE(e2.size() == base_ecg.size());
      for (std::size_t i = 0; i < s2.size(); ++i) CHECK(std::abs(s2[i].time - base_scg[i].time) <= 1e-9);
      for (std::size_t i = 0; i < e2.size(); ++i) CHECK(std::abs(e2[i].time - base_ecg[i].time) <= 1e-9);
    }
  }
}

TEST_CASE("property: prepending zeros shifts event times by the same amount") {
  const DetectorConfig dc;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    for (std::optional<double> snr : {std::optional<double>{}, std::optional<double>{20.0}}) {
      const auto rec = gen_recording(short_config(30.0, snr, seed));
      const auto scg = lowpass(rec.recording.at(Channel::scg_z), 100.0);
      const auto base = detect_scg_events(scg);
      for (double k : {0.5, 1.0, 2.5}) {
        const auto pad = static_cast<std::size_t>(k * scg.rate());
        std::vector<double> x(pad, 0.0);
        x.insert(x.end(), scg.samples().begin(), scg.samples().end());
        const auto shifted = detect_scg_events(Waveform(std::move(x), scg.rate()));
        REQUIRE(shifted.size() == base.size());
        for (std::size_t i = 0; i < base.size(); ++i)
          CHECK(std::abs(shifted[i].time - (base[i].time + k)) <= scg.period());
      }
    }
  }
}

TEST_CASE("property: monotone, refractory-spaced, edge-free output on arbitrary input") {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    DetectorConfig dc;
    dc.refractory_s = 0.1 + 0.5 * u(rng);
    std::vector<double> x(static_cast<std::size_t>(320.0 * (3.0 + 10.0 * u(rng))));
    for (double& v : x) v = nd(rng) * (u(rng) < 0.05 ? 10.0 : 1.0);
    const Waveform w(std::move(x), 320.0, 2.0 * u(rng));
    const auto scg = detect_scg_events(w, dc);
    const auto ecg = detect_ecg_rpeaks(w, dc);
    check_event_invariants(scg, w, dc);
    check_event_invariants(ecg, w, dc);
  }
}

}  // TEST_SUITE
