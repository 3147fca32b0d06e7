#include "scghr/waveform.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace scghr {

Waveform::Waveform(std::vector<double> samples, double rate, double start_time)
    : samples_(std::move(samples)), rate_(rate), start_time_(start_time) {
  if (!std::isfinite(rate_) || rate_ <= 0.0)
    throw std::invalid_argument(fmt::format("waveform rate must be positive and finite, got {}", rate_));
  if (!std::isfinite(start_time_))
    throw std::invalid_argument("waveform start_time must be finite");
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!std::isfinite(samples_[i]))
      throw std::invalid_argument(fmt::format("waveform sample {} is not finite", i));
  }
}

std::optional<std::size_t> Waveform::nearest_index(double t) const noexcept {
  if (samples_.empty()) return std::nullopt;
  const double pos = (t - start_time_) * rate_;
  const double last = static_cast<double>(samples_.size() - 1);
  if (!(pos >= -0.5 && pos <= last + 0.5)) return std::nullopt;
  const double r = std::clamp(std::round(pos), 0.0, last);
  return static_cast<std::size_t>(r);
}

std::string_view to_string(Channel c) noexcept {
  switch (c) {
    case Channel::scg_x: return "scg_x";
    case Channel::scg_y: return "scg_y";
    case Channel::scg_z: return "scg_z";
    case Channel::ecg: return "ecg";
    case Channel::flow: return "flow";
  }
  return "unknown";
}

std::optional<Channel> parse_channel(std::string_view name) noexcept {
  for (Channel c : kAllChannels)
    if (to_string(c) == name) return c;
  return std::nullopt;
}

Recording::Recording(std::map<Channel, Waveform> channels, std::string subject_meta)
    : channels_(std::move(channels)), subject_meta_(std::move(subject_meta)) {
  if (channels_.empty()) return;
  const auto& [first_id, first] = *channels_.begin();
  for (const auto& [id, w] : channels_) {
    if (w.rate() != first.rate())
      throw std::invalid_argument(fmt::format("channel {} rate {} Hz differs from {} rate {} Hz",
                                              to_string(id), w.rate(), to_string(first_id),
                                              first.rate()));
    if (w.start_time() != first.start_time())
      throw std::invalid_argument(fmt::format("channel {} start_time differs from {}",
                                              to_string(id), to_string(first_id)));
  }
}

const Waveform& Recording::at(Channel c) const {
  auto it = channels_.find(c);
  if (it == channels_.end())
    throw std::invalid_argument(fmt::format("recording has no {} channel", to_string(c)));
  return it->second;
}

double Recording::rate() const {
  if (channels_.empty()) throw std::invalid_argument("recording has no channels");
  return channels_.begin()->second.rate();
}

double Recording::start_time() const {
  if (channels_.empty()) throw std::invalid_argument("recording has no channels");
  return channels_.begin()->second.start_time();
}

}  // namespace scghr
