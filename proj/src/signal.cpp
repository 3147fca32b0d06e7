#include "scghr/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

namespace scghr {

namespace {

// Steady-state section states for a unit step applied to the cascade.
std::vector<std::array<double, 2>> step_states(std::span<const Biquad> sections) {
  std::vector<std::array<double, 2>> zi(sections.size());
  double level = 1.0;
  for (std::size_t k = 0; k < sections.size(); ++k) {
    const Biquad& s = sections[k];
    const double gain = (s.b0 + s.b1 + s.b2) / (1.0 + s.a1 + s.a2);
    const double z2 = (s.b2 - s.a2 * gain) * level;
    const double z1 = (s.b1 - s.a1 * gain) * level + z2;
    zi[k] = {z1, z2};
    level *= gain;
  }
  return zi;
}

void run_sections(std::span<const Biquad> sections, std::vector<double>& x,
                  std::vector<std::array<double, 2>> state) {
  for (std::size_t k = 0; k < sections.size(); ++k) {
    const Biquad& s = sections[k];
    double z1 = state[k][0];
    double z2 = state[k][1];
    for (double& v : x) {
      const double in = v;
      const double out = s.b0 * in + z1;
      z1 = s.b1 * in - s.a1 * out + z2;
      z2 = s.b2 * in - s.a2 * out;
      v = out;
    }
  }
}

std::vector<std::array<double, 2>> scaled(std::vector<std::array<double, 2>> zi, double by) {
  for (auto& z : zi) {
    z[0] *= by;
    z[1] *= by;
  }
  return zi;
}

}  // namespace

std::vector<Biquad> butterworth_lowpass(int order, double cutoff_hz, double rate_hz) {
  if (order < 2 || order % 2 != 0)
    throw std::invalid_argument(fmt::format("filter order must be even and >= 2, got {}", order));
  if (!(rate_hz > 0.0) || !(cutoff_hz > 0.0) || !(cutoff_hz < rate_hz / 2.0))
    throw std::invalid_argument(
        fmt::format("cutoff {} Hz must lie in (0, {} Hz)", cutoff_hz, rate_hz / 2.0));

  const double k = std::tan(std::numbers::pi * cutoff_hz / rate_hz);
  const double k2 = k * k;
  std::vector<Biquad> sections;
  sections.reserve(static_cast<std::size_t>(order / 2));
  for (int i = 0; i < order / 2; ++i) {
    // Pole pair i of the analog prototype has damping 2 sin((2i+1) pi / 2n).
    const double damping = 2.0 * std::sin((2.0 * i + 1.0) * std::numbers::pi / (2.0 * order));
    const double norm = 1.0 / (1.0 + damping * k + k2);
    const double b0 = k2 * norm;
    sections.push_back({b0, 2.0 * b0, b0, 2.0 * (k2 - 1.0) * norm, (1.0 - damping * k + k2) * norm});
  }
  return sections;
}

std::vector<double> sos_filter(std::span<const Biquad> sections, std::span<const double> x) {
  std::vector<double> y(x.begin(), x.end());
  run_sections(sections, y, std::vector<std::array<double, 2>>(sections.size(), {0.0, 0.0}));
  return y;
}

std::vector<double> sos_filtfilt(std::span<const Biquad> sections, std::span<const double> x,
                                 std::size_t padlen) {
  const std::size_t n = x.size();
  if (n == 0) return {};
  padlen = std::min(padlen, n - 1);

  std::vector<double> ext;
  ext.reserve(n + 2 * padlen);
  for (std::size_t i = padlen; i >= 1; --i) ext.push_back(2.0 * x[0] - x[i]);
  ext.insert(ext.end(), x.begin(), x.end());
  for (std::size_t i = 1; i <= padlen; ++i) ext.push_back(2.0 * x[n - 1] - x[n - 1 - i]);

  const auto zi = step_states(sections);
  run_sections(sections, ext, scaled(zi, ext.front()));
  std::reverse(ext.begin(), ext.end());
  run_sections(sections, ext, scaled(zi, ext.front()));
  std::reverse(ext.begin(), ext.end());

  return {ext.begin() + static_cast<std::ptrdiff_t>(padlen),
          ext.begin() + static_cast<std::ptrdiff_t>(padlen + n)};
}

Waveform lowpass(const Waveform& w, double cutoff_hz, int order) {
  if (w.empty()) throw std::invalid_argument("lowpass: empty waveform");
  const auto sections = butterworth_lowpass(order, cutoff_hz, w.rate());
  // Pad by at least three periods of the cutoff so the edge transient has
  // mostly decayed before reaching real samples.
  const auto padlen = std::max<std::size_t>(
      3 * (sections.size() * 2 + 1), static_cast<std::size_t>(std::ceil(3.0 * w.rate() / cutoff_hz)));
  return Waveform(sos_filtfilt(sections, w.view(), padlen), w.rate(), w.start_time());
}

Waveform resample(const Waveform& w, double target_rate) {
  if (w.empty()) throw std::invalid_argument("resample: empty waveform");
  if (!std::isfinite(target_rate) || target_rate <= 0.0)
    throw std::invalid_argument(fmt::format("resample: target rate must be positive, got {}", target_rate));
  if (target_rate > w.rate())
    throw std::invalid_argument(fmt::format("resample: upsampling {} Hz -> {} Hz is not supported",
                                            w.rate(), target_rate));
  if (target_rate == w.rate()) return w;

  const Waveform smooth = lowpass(w, kAntiAliasFraction * target_rate / 2.0);
  const auto& s = smooth.samples();
  const std::size_t n = s.size();
  const double last = static_cast<double>(n - 1);
  const auto n_out =
      static_cast<std::size_t>(std::floor(last * target_rate / w.rate() + 1e-9)) + 1;

  std::vector<double> out(n_out);
  for (std::size_t k = 0; k < n_out; ++k) {
    const double pos = std::min(static_cast<double>(k) * w.rate() / target_rate, last);
    const auto i = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(i);
    out[k] = (i + 1 < n) ? s[i] + frac * (s[i + 1] - s[i]) : s[i];
  }
  return Waveform(std::move(out), target_rate, w.start_time());
}

LungVolume integrate_flow(const Waveform& flow) {
  if (flow.empty()) throw std::invalid_argument("integrate_flow: empty waveform");
  const auto& f = flow.samples();
  const double half_dt = 0.5 / flow.rate();
  std::vector<double> lv(f.size());
  lv[0] = 0.0;
  for (std::size_t i = 1; i < f.size(); ++i) lv[i] = lv[i - 1] + half_dt * (f[i - 1] + f[i]);
  return {Waveform(std::move(lv), flow.rate(), flow.start_time())};
}

LungVolume detrend_lv(const LungVolume& lv) {
  const auto& y = lv.wave.samples();
  const std::size_t n = y.size();
  if (n < 2) throw std::invalid_argument("detrend_lv: need at least 2 samples");

  const double centre = 0.5 * static_cast<double>(n - 1);
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(n);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xc = static_cast<double>(i) - centre;
    sxy += xc * (y[i] - mean);
    sxx += xc * xc;
  }
  const double slope = sxy / sxx;

  std::vector<double> out(n);
  double residual_mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = y[i] - mean - slope * (static_cast<double>(i) - centre);
    residual_mean += out[i];
  }
  residual_mean /= static_cast<double>(n);
  for (double& v : out) v -= residual_mean;
  return {Waveform(std::move(out), lv.wave.rate(), lv.wave.start_time())};
}

}  // namespace scghr
