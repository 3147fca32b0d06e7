#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>

#include "scghr/waveform.hpp"

namespace scghr {

// Ingestion failure; row (1-based data row, header excluded) and column are
// carried when the problem is local to one cell.
class IngestError : public std::runtime_error {
 public:
  IngestError(const std::string& what, std::string column = {}, std::optional<std::size_t> row = {})
      : std::runtime_error(what), column_(std::move(column)), row_(row) {}

  const std::string& column() const noexcept { return column_; }
  std::optional<std::size_t> row() const noexcept { return row_; }

 private:
  std::string column_;
  std::optional<std::size_t> row_;
};

// Channel -> column-name mapping. Channels not listed are picked up when a
// header column carries the channel id itself (scg_z, ecg, flow, ...).
struct ChannelMapping {
  std::string time_column = "time";
  std::map<Channel, std::string> columns;
};

inline const std::set<Channel> kPipelineChannels = {Channel::scg_z, Channel::flow};

// Parses header-bearing comma-separated text. The sampling rate is inferred
// from the time column, which must be uniform to 1 ppm (plus the rounding of
// the printed decimals). Other columns are ignored.
Recording ingest(std::istream& in, const ChannelMapping& mapping = {},
                 const std::set<Channel>& required = kPipelineChannels, std::string subject_meta = {});

// File variant; subject_meta defaults to the file stem.
Recording ingest(const std::filesystem::path& path, const ChannelMapping& mapping = {},
                 const std::set<Channel>& required = kPipelineChannels);

// Writes `time` plus one column per channel (named by channel id) with
// shortest round-trip number formatting.
void write_recording_csv(std::ostream& out, const Recording& rec);
void write_recording_csv(const std::filesystem::path& path, const Recording& rec);

}  // namespace scghr
