#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace scghr {

// Raised when an operation has nothing to compute on (empty phase series,
// too few agreement pairs, missing ratio operands).
class NoDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Uniformly sampled scalar time series. Samples are in signal units (volts
// for the raw channels; the amplitude scale is never calibrated).
//
// Invariants enforced at construction: rate > 0 and finite, start_time
// finite, every sample finite. An empty waveform is constructible, but every
// operation consuming one rejects it.
class Waveform {
 public:
  Waveform() = default;
  Waveform(std::vector<double> samples, double rate, double start_time = 0.0);

  const std::vector<double>& samples() const noexcept { return samples_; }
  std::span<const double> view() const noexcept { return samples_; }
  double rate() const noexcept { return rate_; }
  double start_time() const noexcept { return start_time_; }
  std::size_t size() const noexcept { return samples_.size(); }
  bool empty() const noexcept { return samples_.empty(); }
  double operator[](std::size_t i) const { return samples_[i]; }

  double period() const noexcept { return 1.0 / rate_; }
  double duration() const noexcept { return static_cast<double>(samples_.size()) / rate_; }
  // Time of sample i in the waveform's time base.
  double time_at(std::size_t i) const noexcept {
    return start_time_ + static_cast<double>(i) / rate_;
  }
  // Index of the sample nearest to time t, or nullopt when t lies more than
  // half a sample outside [first sample, last sample].
  std::optional<std::size_t> nearest_index(double t) const noexcept;

  bool operator==(const Waveform&) const = default;

 private:
  std::vector<double> samples_;
  double rate_ = 1.0;
  double start_time_ = 0.0;
};

// Relative lung volume (integrated flow, volt-seconds). Kept as a distinct
// type so raw flow cannot be passed where a volume is expected.
struct LungVolume {
  Waveform wave;

  bool operator==(const LungVolume&) const = default;
};

enum class Channel { scg_x, scg_y, scg_z, ecg, flow };

inline constexpr Channel kAllChannels[] = {Channel::scg_x, Channel::scg_y, Channel::scg_z,
                                           Channel::ecg, Channel::flow};

std::string_view to_string(Channel c) noexcept;
std::optional<Channel> parse_channel(std::string_view name) noexcept;

// A named channel set sharing one time base.
class Recording {
 public:
  Recording() = default;
  // Throws std::invalid_argument if the channels disagree on rate or
  // start_time.
  explicit Recording(std::map<Channel, Waveform> channels, std::string subject_meta = {});

  const std::map<Channel, Waveform>& channels() const noexcept { return channels_; }
  const std::string& subject_meta() const noexcept { return subject_meta_; }
  bool has(Channel c) const noexcept { return channels_.contains(c); }
  // Throws std::invalid_argument naming the channel when it is absent.
  const Waveform& at(Channel c) const;
  double rate() const;
  double start_time() const;

  bool operator==(const Recording&) const = default;

 private:
  std::map<Channel, Waveform> channels_;
  std::string subject_meta_;
};

}  // namespace scghr
