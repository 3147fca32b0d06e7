#include "scghr/csv_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <vector>

#include <fmt/format.h>

namespace scghr {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '"')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '"' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    out.push_back(trim(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::optional<double> parse_number(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

// Half a unit in the last printed decimal place. Integers and exponent
// notation are taken as exact.
double print_quantum(std::string_view s) {
  if (s.find_first_of("eE") != std::string_view::npos) return 0.0;
  const auto dot = s.find('.');
  if (dot == std::string_view::npos) return 0.0;
  return 0.5 * std::pow(10.0, -static_cast<double>(s.size() - dot - 1));
}

struct Column {
  Channel channel;
  std::string name;
  std::size_t index;
  std::vector<double> values;
};

}  // namespace

Recording ingest(std::istream& in, const ChannelMapping& mapping, const std::set<Channel>& required,
                 std::string subject_meta) {
  std::string line;
  if (!std::getline(in, line)) throw IngestError("input is empty (no header line)");
  const auto header_views = split(line);
  std::vector<std::string> header(header_views.begin(), header_views.end());
  auto find_column = [&](const std::string& name) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    return std::nullopt;
  };

  const auto time_index = find_column(mapping.time_column);
  if (!time_index)
    throw IngestError(fmt::format("missing time column '{}'", mapping.time_column), mapping.time_column);

  std::vector<Column> columns;
  for (Channel c : kAllChannels) {
    const auto mapped = mapping.columns.find(c);
    const std::string name = mapped != mapping.columns.end() ? mapped->second : std::string(to_string(c));
    const auto idx = find_column(name);
    if (!idx) {
      if (mapped != mapping.columns.end() || required.contains(c))
        throw IngestError(fmt::format("missing required column '{}' for channel {}", name, to_string(c)), name);
      continue;
    }
    columns.push_back({c, name, *idx, {}});
  }

  std::vector<double> times;
  std::vector<double> quanta;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    ++row;
    const auto cells = split(line);
    auto cell = [&](std::size_t idx, std::string_view label) -> double {
      if (idx >= cells.size())
        throw IngestError(fmt::format("{}, row {}: missing value", label, row), std::string(label), row);
      const auto v = parse_number(cells[idx]);
      if (!v)
        throw IngestError(fmt::format("{}, row {}: '{}' is not a number", label, row, cells[idx]),
                          std::string(label), row);
      if (!std::isfinite(*v))
        throw IngestError(fmt::format("{}, row {}: non-finite value '{}'", label, row, cells[idx]),
                          std::string(label), row);
      return *v;
    };
    times.push_back(cell(*time_index, mapping.time_column));
    quanta.push_back(print_quantum(cells[*time_index]));
    for (auto& col : columns) col.values.push_back(cell(col.index, to_string(col.channel)));
  }
  if (times.size() < 2) throw IngestError("need at least 2 data rows to infer the sampling rate");

  const double t0 = times.front();
  const double span = times.back() - t0;
  if (!(span > 0.0)) throw IngestError("time column is not increasing", mapping.time_column);
  double rate = static_cast<double>(times.size() - 1) / span;
  const double nearest = std::round(rate);
  if (nearest > 0.0 && std::abs(rate - nearest) <= 1e-6 * rate) rate = nearest;

  const double period = 1.0 / rate;
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double expected = t0 + static_cast<double>(i) * period;
    // 1 ppm of the elapsed time, plus the decimal rounding of the printed cells.
    const double rounding = quanta[0] + quanta[i] + 1e-12 * std::abs(times[i]);
    const double step_rounding = quanta[i - 1] + quanta[i] + 1e-12 * std::abs(times[i]);
    if (std::abs(times[i] - expected) > 1e-6 * (period + times[i] - t0) + rounding ||
        std::abs(times[i] - times[i - 1] - period) > 1e-6 * period + step_rounding)
      throw IngestError(fmt::format("{}, row {}: non-uniform time base (expected {}, got {})",
                                    mapping.time_column, i + 1, expected, times[i]),
                        mapping.time_column, i + 1);
  }

  std::map<Channel, Waveform> channels;
  for (auto& col : columns) channels.emplace(col.channel, Waveform(std::move(col.values), rate, t0));
  return Recording(std::move(channels), std::move(subject_meta));
}

Recording ingest(const std::filesystem::path& path, const ChannelMapping& mapping,
                 const std::set<Channel>& required) {
  std::ifstream in(path);
  if (!in) throw IngestError(fmt::format("cannot open '{}'", path.string()));
  try {
    return ingest(in, mapping, required, path.stem().string());
  } catch (const IngestError& e) {
    throw IngestError(fmt::format("{}: {}", path.string(), e.what()), e.column(), e.row());
  }
}

void write_recording_csv(std::ostream& out, const Recording& rec) {
  const auto& channels = rec.channels();
  out << "time";
  std::size_t n = 0;
  for (const auto& [id, w] : channels) {
    out << ',' << to_string(id);
    n = std::max(n, w.size());
  }
  out << '\n';
  if (channels.empty()) return;
  const Waveform& base = channels.begin()->second;
  std::string buf;
  for (std::size_t i = 0; i < n; ++i) {
    buf.clear();
    fmt::format_to(std::back_inserter(buf), "{}", base.time_at(i));
    for (const auto& [id, w] : channels) fmt::format_to(std::back_inserter(buf), ",{}", w[i]);
    buf.push_back('\n');
    out << buf;
  }
}

void write_recording_csv(const std::filesystem::path& path, const Recording& rec) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
  write_recording_csv(out, rec);
}

}  // namespace scghr
