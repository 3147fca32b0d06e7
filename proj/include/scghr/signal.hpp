#pragma once

#include <array>
#include <span>
#include <vector>

#include "scghr/waveform.hpp"

namespace scghr {

// One second-order section, transposed direct form II, a0 normalised to 1.
struct Biquad {
  double b0, b1, b2, a1, a2;
};

// Butterworth low-pass of even order as cascaded biquads, designed with the
// prewarped bilinear transform. cutoff_hz must lie in (0, rate_hz / 2).
std::vector<Biquad> butterworth_lowpass(int order, double cutoff_hz, double rate_hz);

// Single causal pass with zero initial state.
std::vector<double> sos_filter(std::span<const Biquad> sections, std::span<const double> x);

// Forward-backward filtering with odd-reflection padding and steady-state
// initial conditions; zero phase, squared magnitude response.
std::vector<double> sos_filtfilt(std::span<const Biquad> sections, std::span<const double> x,
                                 std::size_t padlen);

inline constexpr int kDefaultFilterOrder = 4;
// Anti-alias cutoff as a fraction of the target Nyquist frequency.
inline constexpr double kAntiAliasFraction = 0.45;

// Zero-phase Butterworth low-pass. Throws std::invalid_argument unless
// 0 < cutoff < rate/2, or when w is empty.
Waveform lowpass(const Waveform& w, double cutoff_hz, int order = kDefaultFilterOrder);

// Downsample to target_rate: anti-alias low-pass at 0.45 x target Nyquist,
// then linear interpolation at the output sample times. target_rate equal to
// the input rate returns the input unchanged. Upsampling is rejected.
Waveform resample(const Waveform& w, double target_rate);

// Cumulative trapezoidal integral of respiratory flow; LV[0] = 0.
LungVolume integrate_flow(const Waveform& flow);

// Removes the least-squares line, then the mean.
LungVolume detrend_lv(const LungVolume& lv);

}  // namespace scghr
