#include "lullslew/ingest.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>

#include "lullslew/error.hpp"
#include "lullslew/power.hpp"

namespace lullslew {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
    s = s.substr(1, s.size() - 2);
    return trim(s);
  }
  return s;
}

std::vector<std::string_view> split(std::string_view line, char delimiter) {
  std::vector<std::string_view> fields;
  std::size_t begin = 0;
  while (true) {
    const auto end = line.find(delimiter, begin);
    fields.push_back(trim(line.substr(begin, end == std::string_view::npos ? end : end - begin)));
    if (end == std::string_view::npos) break;
    begin = end + 1;
  }
  return fields;
}

bool is_blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

std::optional<double> parse_number(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

PowerUnit parse_unit(const std::string& text) {
  std::string lower;
  for (char c : text) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (lower == "gw") return PowerUnit::gw;
  if (lower == "mw") return PowerUnit::mw;
  throw ConfigError("unknown power unit '" + text + "' (expected GW or MW)");
}

}  // namespace

std::string_view channel_name(Channel c) noexcept {
  switch (c) {
    case Channel::wind: return "wind";
    case Channel::solar: return "solar";
    case Channel::demand: return "demand";
    case Channel::nuclear: return "nuclear";
  }
  return "unknown";
}

std::optional<Channel> channel_from_name(std::string_view name) noexcept {
  for (Channel c : kAllChannels) {
    if (channel_name(c) == name) return c;
  }
  return std::nullopt;
}

ColumnMapping ColumnMapping::gridwatch() {
  ColumnMapping m;
  m.timestamp_column = "timestamp";
  m.channels[Channel::wind] = {"wind", PowerUnit::mw};
  m.channels[Channel::solar] = {"solar", PowerUnit::mw};
  m.channels[Channel::demand] = {"demand", PowerUnit::mw};
  m.channels[Channel::nuclear] = {"nuclear", PowerUnit::mw};
  return m;
}

ColumnMapping parse_column_mapping(std::string_view yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml_text));
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("column mapping is not valid YAML: ") + e.what());
  }
  if (!root.IsMap()) throw ConfigError("column mapping must be a YAML mapping");

  ColumnMapping m;
  try {
    if (root["delimiter"]) {
      const auto d = root["delimiter"].as<std::string>();
      if (d == "\\t" || d == "tab") {
        m.delimiter = '\t';
      } else if (d.size() == 1) {
        m.delimiter = d.front();
      } else {
        throw ConfigError("delimiter must be a single character");
      }
    }
    if (!root["timestamp"]) throw ConfigError("column mapping lacks 'timestamp'");
    m.timestamp_column = root["timestamp"].as<std::string>();

    const auto channels = root["channels"];
    if (!channels || !channels.IsMap()) throw ConfigError("column mapping lacks 'channels'");
    for (const auto& entry : channels) {
      const auto key = entry.first.as<std::string>();
      const auto channel = channel_from_name(key);
      if (!channel) throw ConfigError("unknown channel '" + key + "' in column mapping");
      ColumnSpec spec;
      if (entry.second.IsScalar()) {
        spec.column = entry.second.as<std::string>();
      } else {
        spec.column = entry.second["column"].as<std::string>();
        if (entry.second["unit"]) spec.unit = parse_unit(entry.second["unit"].as<std::string>());
      }
      m.channels[*channel] = spec;
    }
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("bad column mapping: ") + e.what());
  }
  if (!m.channels.contains(Channel::wind)) {
    throw ConfigError("column mapping must map the wind channel");
  }
  return m;
}

ColumnMapping load_column_mapping(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open column mapping " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_column_mapping(buffer.str());
}

ParseResult parse_records(std::istream& in, const ColumnMapping& mapping) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!is_blank(line)) {
      have_header = true;
      break;
    }
  }
  if (!have_header) throw EmptyInputError("input has no header row");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  const auto header = split(line, mapping.delimiter);
  auto find_column = [&](const std::string& name) -> std::size_t {
    const auto it = std::find(header.begin(), header.end(), std::string_view(name));
    if (it == header.end()) {
      throw ConfigError("mapped column '" + name + "' not found in header");
    }
    return static_cast<std::size_t>(it - header.begin());
  };

  const std::size_t ts_col = find_column(mapping.timestamp_column);
  struct ChannelColumn {
    Channel channel;
    std::size_t index;
    double scale;
  };
  std::vector<ChannelColumn> columns;
  for (const auto& [channel, spec] : mapping.channels) {
    columns.push_back({channel, find_column(spec.column), spec.unit == PowerUnit::mw ? 1e-3 : 1.0});
  }

  ParseResult result;
  std::optional<bool> epoch_mode;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_blank(line)) continue;
    ++result.data_rows;

    const auto fields = split(line, mapping.delimiter);
    auto reject = [&](std::string reason) {
      result.rejects.push_back({line_no, std::move(reason)});
    };
    if (ts_col >= fields.size()) {
      reject("missing timestamp field");
      continue;
    }
    if (!epoch_mode) epoch_mode = looks_like_epoch(fields[ts_col]);
    const auto time = *epoch_mode ? parse_epoch_seconds(fields[ts_col])
                                  : parse_iso8601(fields[ts_col]);
    if (!time) {
      reject("unparseable timestamp '" + std::string(fields[ts_col]) + "'");
      continue;
    }

    RawRecord record{*time, {}};
    bool ok = true;
    for (const auto& col : columns) {
      if (col.index >= fields.size() || fields[col.index].empty()) continue;
      const auto value = parse_number(fields[col.index]);
      if (!value) {
        reject("unparseable " + std::string(channel_name(col.channel)) + " reading '" +
               std::string(fields[col.index]) + "'");
        ok = false;
        break;
      }
      record.readings[static_cast<std::size_t>(col.channel)] = *value * col.scale;
    }
    if (!ok) continue;
    if (!record.reading(Channel::wind)) {
      reject("missing wind reading");
      continue;
    }
    result.records.push_back(record);
  }
  return result;
}

SampleSeries::SampleSeries(Timestamp start, std::vector<double> values,
                           std::vector<SampleQuality> quality)
    : start_(start), values_(std::move(values)), quality_(std::move(quality)) {
  if (values_.size() != quality_.size()) {
    throw DomainError("sample series values and quality flags differ in length");
  }
}

std::size_t SampleSeries::flagged_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(
      quality_.begin(), quality_.end(), [](SampleQuality q) { return q != SampleQuality::measured; }));
}

SampleSeries clean_series(std::span<const RawRecord> records, Channel channel,
                          const CleaningPolicy& policy) {
  struct Point {
    Timestamp slot;
    double value;
  };
  std::vector<Point> points;
  points.reserve(records.size());
  for (const auto& r : records) {
    if (const auto v = r.reading(channel)) points.push_back({snap_to_step(r.time), *v});
  }
  if (points.empty()) {
    throw EmptyInputError("no " + std::string(channel_name(channel)) + " readings to clean");
  }
  std::stable_sort(points.begin(), points.end(),
                   [](const Point& a, const Point& b) { return a.slot < b.slot; });

  const Timestamp start = points.front().slot;
  const auto n = static_cast<std::size_t>((points.back().slot - start) / kStep) + 1;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> values(n, nan);
  std::vector<SampleQuality> quality(n, SampleQuality::measured);
  for (const auto& p : points) {
    const auto i = static_cast<std::size_t>((p.slot - start) / kStep);
    if (!std::isnan(values[i])) continue;  // first reading in a slot wins
    if (!std::isfinite(p.value)) continue;
    if (p.value < 0.0) {
      values[i] = 0.0;
      quality[i] = SampleQuality::clamped;
    } else {
      values[i] = p.value;
    }
  }

  // Gaps. The first and last slots always hold a reading.
  for (std::size_t i = 0; i < n;) {
    if (!std::isnan(values[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (std::isnan(values[j])) ++j;
    const std::size_t gap = j - i;
    const double left = values[i - 1];
    const double right = values[j];
    for (std::size_t k = i; k < j; ++k) {
      if (gap <= policy.max_interpolated_gap) {
        const double frac = static_cast<double>(k - i + 1) / static_cast<double>(gap + 1);
        values[k] = left + (right - left) * frac;
        quality[k] = SampleQuality::interpolated;
      } else {
        values[k] = left;
        quality[k] = SampleQuality::carried_forward;
      }
    }
    i = j;
  }

  for (auto& v : values) v = quantize_power(v);

  // Isolated upward spikes, detected on a snapshot and replaced together.
  std::vector<std::size_t> spikes;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double l = values[i - 1];
    const double r = values[i + 1];
    if (std::max(l, r) > 0.0 && values[i] > policy.spike_ratio * l &&
        values[i] > policy.spike_ratio * r) {
      spikes.push_back(i);
    }
  }
  for (std::size_t i : spikes) {
    values[i] = quantize_power(0.5 * (values[i - 1] + values[i + 1]));
    quality[i] = SampleQuality::interpolated;
  }

  SampleSeries series(start, std::move(values), std::move(quality));
  const double flagged = static_cast<double>(series.flagged_count()) / static_cast<double>(n);
  if (flagged > policy.max_flagged_fraction) {
    throw DataQualityError(std::string(channel_name(channel)) + " series unusable: " +
                           std::to_string(series.flagged_count()) + " of " + std::to_string(n) +
                           " samples needed repair");
  }
  return series;
}

std::vector<RawRecord> to_records(const SampleSeries& series, Channel channel) {
  std::vector<RawRecord> records(series.size());
  const auto values = series.values();
  for (std::size_t i = 0; i < records.size(); ++i) {
    records[i].time = series.time_at(i);
    records[i].readings[static_cast<std::size_t>(channel)] = values[i];
  }
  return records;
}

ChannelBlocks::ChannelBlocks(std::vector<double> samples) : samples_(std::move(samples)) {
  if (samples_.size() != kSamplesPerYear) {
    throw CoverageError("channel blocks need exactly " + std::to_string(kSamplesPerYear) +
                        " samples, got " + std::to_string(samples_.size()));
  }
  base_average_ = mean(samples_);
}

std::span<const double> ChannelBlocks::block(std::size_t index) const {
  if (index >= kBlocksPerYear) throw RangeError("block index " + std::to_string(index));
  return std::span<const double>(samples_).subspan(index * kSamplesPerBlock, kSamplesPerBlock);
}

const ChannelBlocks& YearBlocks::at(Channel c) const {
  const auto it = channels.find(c);
  if (it == channels.end()) {
    throw ConfigError("dataset has no " + std::string(channel_name(c)) + " channel");
  }
  return it->second;
}

YearBlocks to_year_blocks(const std::map<Channel, SampleSeries>& series, Timestamp year_start) {
  for (Channel required : {Channel::wind, Channel::solar}) {
    if (!series.contains(required)) {
      throw CoverageError("missing required channel " + std::string(channel_name(required)));
    }
  }
  YearBlocks blocks;
  blocks.year_start = year_start;
  for (const auto& [channel, s] : series) {
    const std::string name(channel_name(channel));
    if (s.start() > year_start) {
      const auto late = (s.start() - year_start) / kStep;
      throw CoverageError(name + " series starts " + std::to_string(late) +
                          " samples after the year start");
    }
    if ((year_start - s.start()) % kStep != std::chrono::seconds{0}) {
      throw CoverageError(name + " series is not aligned to the 5-minute grid");
    }
    const auto offset = static_cast<std::size_t>((year_start - s.start()) / kStep);
    const std::size_t available = s.size() > offset ? s.size() - offset : 0;
    if (available < kSamplesPerYear) {
      throw CoverageError(name + " series covers " + std::to_string(available) + " of " +
                          std::to_string(kSamplesPerYear) + " samples; short by " +
                          std::to_string(kSamplesPerYear - available));
    }
    const auto values = s.values().subspan(offset, kSamplesPerYear);
    blocks.channels.emplace(channel, ChannelBlocks({values.begin(), values.end()}));
  }
  return blocks;
}

namespace {

constexpr std::string_view kDatasetMagic = "# lullslew-blocked-dataset 1";

std::string full_precision(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_blocked_dataset(std::ostream& out, const YearBlocks& blocks) {
  out << kDatasetMagic << '\n';
  out << "# year_start " << format_iso8601(blocks.year_start) << '\n';
  out << "# step_seconds " << kStep.count() << '\n';
  out << "# blocks " << kBlocksPerYear << '\n';
  out << "# samples_per_block " << kSamplesPerBlock << '\n';
  out << "# channels";
  for (const auto& [c, _] : blocks.channels) out << ' ' << channel_name(c);
  out << "\n# base_average_gw";
  for (const auto& [_, b] : blocks.channels) out << ' ' << full_precision(b.base_average());
  out << "\nblock,index,timestamp";
  for (const auto& [c, _] : blocks.channels) out << ',' << channel_name(c);
  out << '\n';
  for (std::size_t i = 0; i < kSamplesPerYear; ++i) {
    out << i / kSamplesPerBlock << ',' << i % kSamplesPerBlock << ','
        << format_iso8601(blocks.time_at(i));
    for (const auto& [_, b] : blocks.channels) out << ',' << full_precision(b.samples()[i]);
    out << '\n';
  }
}

YearBlocks read_blocked_dataset(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kDatasetMagic) {
    throw ConfigError("not a blocked dataset (missing '" + std::string(kDatasetMagic) + "')");
  }
  std::map<std::string, std::vector<std::string>> header;
  while (in.peek() == '#' && std::getline(in, line)) {
    std::istringstream fields(line.substr(1));
    std::string key, word;
    fields >> key;
    while (fields >> word) header[key].push_back(word);
  }
  auto single = [&](const std::string& key) -> const std::string& {
    const auto it = header.find(key);
    if (it == header.end() || it->second.size() != 1) {
      throw ConfigError("blocked dataset header lacks '" + key + "'");
    }
    return it->second.front();
  };
  const auto year_start = parse_iso8601(single("year_start"));
  if (!year_start) throw ConfigError("blocked dataset has a bad year_start");
  if (single("step_seconds") != std::to_string(kStep.count()) ||
      single("blocks") != std::to_string(kBlocksPerYear) ||
      single("samples_per_block") != std::to_string(kSamplesPerBlock)) {
    throw ConfigError("blocked dataset layout does not match 52 x 2016 five-minute samples");
  }
  std::vector<Channel> channels;
  for (const auto& name : header["channels"]) {
    const auto c = channel_from_name(name);
    if (!c) throw ConfigError("blocked dataset names unknown channel '" + name + "'");
    channels.push_back(*c);
  }
  const auto& averages = header["base_average_gw"];
  if (channels.empty() || averages.size() != channels.size()) {
    throw ConfigError("blocked dataset channel list and base averages disagree");
  }

  if (!std::getline(in, line)) throw CoverageError("blocked dataset has no column header");
  std::vector<std::vector<double>> columns(channels.size());
  for (auto& col : columns) col.reserve(kSamplesPerYear);
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (is_blank(line)) continue;
    const auto fields = split(line, ',');
    if (fields.size() != 3 + channels.size()) {
      throw ConfigError("blocked dataset row " + std::to_string(row) + " has the wrong width");
    }
    for (std::size_t c = 0; c < channels.size(); ++c) {
      const auto v = parse_number(fields[3 + c]);
      if (!v) throw ConfigError("blocked dataset row " + std::to_string(row) + " is not numeric");
      columns[c].push_back(*v);
    }
    ++row;
  }
  if (row != kSamplesPerYear) {
    throw CoverageError("blocked dataset holds " + std::to_string(row) + " rows, expected " +
                        std::to_string(kSamplesPerYear));
  }

  YearBlocks blocks;
  blocks.year_start = *year_start;
  for (std::size_t c = 0; c < channels.size(); ++c) {
    ChannelBlocks b(std::move(columns[c]));
    const auto stored = parse_number(averages[c]);
    if (!stored || std::fabs(*stored - b.base_average()) > 1e-9 * std::max(1.0, std::fabs(*stored))) {
      throw DataQualityError("stored base average for " + std::string(channel_name(channels[c])) +
                             " does not match its samples");
    }
    blocks.channels.emplace(channels[c], std::move(b));
  }
  return blocks;
}

YearBlocks load_blocked_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open dataset " + path.string());
  return read_blocked_dataset(in);
}

}  // namespace lullslew
