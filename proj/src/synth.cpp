#include "scghr/synth.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <fmt/format.h>

#include "scghr/signal.hpp"

namespace scghr {

namespace {

constexpr double kPi = std::numbers::pi;

// Independent noise streams per channel.
enum class Stream : std::uint32_t { scg = 1, ecg = 2, bursts = 3 };

std::mt19937_64 make_rng(std::uint64_t seed, Stream stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  return std::mt19937_64(seq);
}

std::size_t sample_count(const SynthConfig& cfg) {
  return static_cast<std::size_t>(std::llround(cfg.duration_s * cfg.sample_rate));
}

double scg_wavelet(double dt) {
  return std::exp(-0.5 * dt * dt / (kScgWaveletSigma * kScgWaveletSigma)) *
         std::cos(2.0 * kPi * kScgWaveletHz * dt);
}

double ecg_spike(double dt) { return std::max(0.0, 1.0 - std::abs(dt) / kEcgSpikeHalfWidth); }

// Adds white noise at cfg.snr_db relative to a beat train at base_hr_bpm
// whose per-beat energy is `beat_energy` (amplitude^2 * s).
void add_noise(std::vector<double>& x, const SynthConfig& cfg, double beat_energy, Stream stream) {
  if (!cfg.snr_db) return;
  const double signal_power = beat_energy * cfg.base_hr_bpm / 60.0;
  const double sigma = std::sqrt(signal_power / std::pow(10.0, *cfg.snr_db / 10.0));
  auto rng = make_rng(cfg.seed, stream);
  std::normal_distribution<double> normal(0.0, sigma);
  for (double& v : x) v += normal(rng);
}

void add_bursts(std::vector<double>& x, const SynthConfig& cfg) {
  if (cfg.hf_burst_amplitude <= 0.0) return;
  constexpr double kBurstLength = 0.2;
  auto rng = make_rng(cfg.seed, Stream::bursts);
  std::uniform_real_distribution<double> start(0.0, std::max(0.0, cfg.duration_s - kBurstLength));
  std::uniform_real_distribution<double> freq(120.0, 160.0);
  const auto bursts = static_cast<int>(std::ceil(cfg.duration_s));
  for (int b = 0; b < bursts; ++b) {
    const double t0 = start(rng);
    const double f = freq(rng);
    const auto i0 = static_cast<std::size_t>(std::ceil(t0 * cfg.sample_rate));
    const auto i1 = std::min(x.size(), static_cast<std::size_t>((t0 + kBurstLength) * cfg.sample_rate));
    for (std::size_t i = i0; i < i1; ++i) {
      const double u = (static_cast<double>(i) / cfg.sample_rate - t0) / kBurstLength;
      const double hann = 0.5 - 0.5 * std::cos(2.0 * kPi * u);
      x[i] += cfg.hf_burst_amplitude * hann * std::sin(2.0 * kPi * f * (static_cast<double>(i) / cfg.sample_rate));
    }
  }
}

template <typename Shape>
std::vector<double> beat_train(const GroundTruth& truth, const SynthConfig& cfg, double amplitude,
                               double support, Shape shape) {
  const std::size_t n = sample_count(cfg);
  std::vector<double> x(n, 0.0);
  for (double tb : truth.beat_times) {
    const double lo = std::max(0.0, std::ceil((tb - support) * cfg.sample_rate));
    const double hi = std::min(static_cast<double>(n) - 1.0, std::floor((tb + support) * cfg.sample_rate));
    for (double k = lo; k <= hi; k += 1.0)
      x[static_cast<std::size_t>(k)] += amplitude * shape(k / cfg.sample_rate - tb);
  }
  return x;
}

}  // namespace

void SynthConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::invalid_argument(fmt::format("synth {} must be positive, got {}", name, v));
  };
  positive(duration_s, "duration_s");
  positive(sample_rate, "sample_rate");
  positive(resp_rate_bpm, "resp_rate_bpm");
  positive(ie_inspiratory, "ie_inspiratory");
  positive(ie_expiratory, "ie_expiratory");
  positive(base_hr_bpm, "base_hr_bpm");
  positive(rsa_ratio, "rsa_ratio");
  if (snr_db && !std::isfinite(*snr_db)) throw std::invalid_argument("synth snr_db must be finite");
  if (!(hf_burst_amplitude >= 0.0)) throw std::invalid_argument("synth hf_burst_amplitude must be >= 0");
  if (sample_count(*this) < 2) throw std::invalid_argument("synth duration too short for sample_rate");
}

Waveform gen_flow(const SynthConfig& cfg) {
  cfg.validate();
  const double cycle = 60.0 / cfg.resp_rate_bpm;
  const double t_insp = cycle * cfg.ie_inspiratory / (cfg.ie_inspiratory + cfg.ie_expiratory);
  const double t_exp = cycle - t_insp;
  const double exp_amplitude = cfg.flow_amplitude * t_insp / t_exp;

  std::vector<double> flow(sample_count(cfg));
  for (std::size_t i = 0; i < flow.size(); ++i) {
    const double t = static_cast<double>(i) / cfg.sample_rate;
    const double tau = std::fmod(t, cycle);
    flow[i] = tau < t_insp ? cfg.flow_amplitude * std::sin(kPi * tau / t_insp)
                           : -exp_amplitude * std::sin(kPi * (tau - t_insp) / t_exp);
  }
  return Waveform(std::move(flow), cfg.sample_rate);
}

GroundTruth gen_beat_times(const SynthConfig& cfg, const LungVolume& lv) {
  cfg.validate();
  const auto& v = lv.wave.samples();
  const double dt = lv.wave.period();
  GroundTruth truth;
  if (v.size() < 2) return truth;

  const std::size_t intervals = v.size() - 1;
  std::size_t high = 0;
  for (std::size_t i = 0; i < intervals; ++i)
    if (v[i] > 0.0) ++high;
  truth.hlv_duty = static_cast<double>(high) / static_cast<double>(intervals);
  // Duty-weighted mean of the two rates equals base_hr_bpm.
  truth.rate_llv_bpm = cfg.base_hr_bpm / (1.0 - truth.hlv_duty + truth.hlv_duty * cfg.rsa_ratio);
  truth.rate_hlv_bpm = cfg.rsa_ratio * truth.rate_llv_bpm;

  double phase = 0.0;
  for (std::size_t i = 0; i < intervals; ++i) {
    const double beats_per_s = (v[i] > 0.0 ? truth.rate_hlv_bpm : truth.rate_llv_bpm) / 60.0;
    double elapsed = 0.0;
    while (phase + beats_per_s * (dt - elapsed) >= 1.0) {
      elapsed += (1.0 - phase) / beats_per_s;
      phase = 0.0;
      truth.beat_times.push_back(lv.wave.time_at(i) + elapsed);
    }
    phase += beats_per_s * (dt - elapsed);
  }

  for (double t : truth.beat_times) {
    const auto idx = lv.wave.nearest_index(t);
    truth.beat_phases.push_back(idx && v[*idx] > 0.0 ? Phase::hlv : Phase::llv);
  }

  double sum[2] = {0.0, 0.0};
  std::size_t count[2] = {0, 0};
  std::optional<double> last[2];
  for (std::size_t b = 0; b < truth.beat_times.size(); ++b) {
    const int p = truth.beat_phases[b] == Phase::hlv ? 1 : 0;
    if (last[p]) {
      const double hr = 60.0 / (truth.beat_times[b] - *last[p]);
      if (hr >= kTruthGateBpm) {
        sum[p] += hr;
        ++count[p];
      }
    }
    last[p] = truth.beat_times[b];
  }
  if (count[0] > 0) truth.true_hr_llv_bpm = sum[0] / static_cast<double>(count[0]);
  if (count[1] > 0) truth.true_hr_hlv_bpm = sum[1] / static_cast<double>(count[1]);
  if (count[0] + count[1] > 0)
    truth.true_combined_bpm = (sum[0] + sum[1]) / static_cast<double>(count[0] + count[1]);
  return truth;
}

Waveform gen_scg(const GroundTruth& truth, const SynthConfig& cfg) {
  cfg.validate();
  auto x = beat_train(truth, cfg, cfg.scg_amplitude, 4.0 * kScgWaveletSigma, scg_wavelet);
  // Integral of exp(-t^2/s^2) cos^2(wt) over the real line.
  const double w = 2.0 * kPi * kScgWaveletHz;
  const double energy = cfg.scg_amplitude * cfg.scg_amplitude * 0.5 * kScgWaveletSigma * std::sqrt(kPi) *
                        (1.0 + std::exp(-w * w * kScgWaveletSigma * kScgWaveletSigma));
  add_noise(x, cfg, energy, Stream::scg);
  add_bursts(x, cfg);
  return Waveform(std::move(x), cfg.sample_rate);
}

Waveform gen_ecg(const GroundTruth& truth, const SynthConfig& cfg) {
  cfg.validate();
  auto x = beat_train(truth, cfg, cfg.ecg_amplitude, kEcgSpikeHalfWidth, ecg_spike);
  const double energy = cfg.ecg_amplitude * cfg.ecg_amplitude * 2.0 * kEcgSpikeHalfWidth / 3.0;
  add_noise(x, cfg, energy, Stream::ecg);
  return Waveform(std::move(x), cfg.sample_rate);
}

SynthRecording gen_recording(const SynthConfig& cfg) {
  cfg.validate();
  Waveform flow = gen_flow(cfg);
  LungVolume lv = detrend_lv(integrate_flow(flow));
  GroundTruth truth = gen_beat_times(cfg, lv);
  std::map<Channel, Waveform> channels;
  channels.emplace(Channel::scg_z, gen_scg(truth, cfg));
  channels.emplace(Channel::ecg, gen_ecg(truth, cfg));
  channels.emplace(Channel::flow, std::move(flow));
  return {Recording(std::move(channels), cfg.label), std::move(lv), std::move(truth)};
}

}  // namespace scghr
