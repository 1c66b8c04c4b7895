#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lullslew/time.hpp"

namespace lullslew {

enum class Channel : std::uint8_t { wind = 0, solar = 1, demand = 2, nuclear = 3 };

inline constexpr std::array<Channel, 4> kAllChannels{
    Channel::wind, Channel::solar, Channel::demand, Channel::nuclear};

std::string_view channel_name(Channel c) noexcept;
std::optional<Channel> channel_from_name(std::string_view name) noexcept;

enum class PowerUnit { gw, mw };

struct ColumnSpec {
  std::string column;
  PowerUnit unit = PowerUnit::gw;
};

// Which header names hold the timestamp and each channel. Only wind is
// mandatory; unmapped channels are simply absent from the records.
struct ColumnMapping {
  char delimiter = ',';
  std::string timestamp_column = "timestamp";
  std::map<Channel, ColumnSpec> channels;

  // Gridwatch CSV export: MW readings, columns named after the fuel.
  static ColumnMapping gridwatch();
};

ColumnMapping load_column_mapping(const std::filesystem::path& path);
ColumnMapping parse_column_mapping(std::string_view yaml_text);

struct RawRecord {
  Timestamp time;
  std::array<std::optional<double>, kAllChannels.size()> readings{};

  std::optional<double> reading(Channel c) const {
    return readings[static_cast<std::size_t>(c)];
  }
};

struct RejectedRow {
  std::size_t line = 0;  // 1-based, counting the header as line 1
  std::string reason;
};

struct ParseResult {
  std::vector<RawRecord> records;
  std::vector<RejectedRow> rejects;
  std::size_t data_rows = 0;  // non-blank lines after the header
};

/// Reads delimiter-separated text with a header row. Timestamps are ISO-8601
/// or epoch seconds, decided once per file from the first data row. MW
/// columns are converted to GW. Blank lines are ignored entirely.
///
/// Throws EmptyInputError when there is no header, ConfigError when a mapped
/// column is missing from the header.
ParseResult parse_records(std::istream& in, const ColumnMapping& mapping);

enum class SampleQuality : std::uint8_t {
  measured,
  interpolated,     // gap fill or spike replacement
  carried_forward,  // gap longer than the interpolation limit
  clamped,          // negative reading raised to zero
};

struct CleaningPolicy {
  std::size_t max_interpolated_gap = 12;  // missing steps; 12 = 1 h
  double spike_ratio = 10.0;
  double max_flagged_fraction = 0.2;
};

// Uniform 5-minute series, no gaps, all values >= 0 and quantized.
class SampleSeries {
public:
  SampleSeries() = default;
  SampleSeries(Timestamp start, std::vector<double> values,
               std::vector<SampleQuality> quality);

  Timestamp start() const noexcept { return start_; }
  std::size_t size() const noexcept { return values_.size(); }
  Timestamp time_at(std::size_t i) const { return start_ + kStep * static_cast<long>(i); }

  std::span<const double> values() const noexcept { return values_; }
  std::span<const SampleQuality> quality() const noexcept { return quality_; }
  std::size_t flagged_count() const noexcept;

private:
  Timestamp start_{};
  std::vector<double> values_;
  std::vector<SampleQuality> quality_;
};

/// Snaps records onto the 5-minute grid and repairs them: negatives clamped,
/// short gaps interpolated, long gaps carried forward, isolated upward spikes
/// replaced by the mean of their neighbours. Duplicate slots keep the first
/// record in time order.
///
/// Throws EmptyInputError when no record carries the channel and
/// DataQualityError when more than policy.max_flagged_fraction of the output
/// samples had to be repaired.
SampleSeries clean_series(std::span<const RawRecord> records, Channel channel,
                          const CleaningPolicy& policy = {});

/// Re-expresses a series as records, one per sample, for round-tripping.
std::vector<RawRecord> to_records(const SampleSeries& series, Channel channel);

inline constexpr std::size_t kBlocksPerYear = 52;
inline constexpr std::size_t kSamplesPerBlock = 2016;
inline constexpr std::size_t kSamplesPerYear = kBlocksPerYear * kSamplesPerBlock;

class ChannelBlocks {
public:
  ChannelBlocks() = default;
  explicit ChannelBlocks(std::vector<double> samples);

  std::span<const double> samples() const noexcept { return samples_; }
  std::span<const double> block(std::size_t index) const;
  double base_average() const noexcept { return base_average_; }

private:
  std::vector<double> samples_;
  double base_average_ = 0.0;
};

// A base year cut into 52 contiguous weekly blocks of 2016 samples.
struct YearBlocks {
  Timestamp year_start{};
  std::map<Channel, ChannelBlocks> channels;

  bool has(Channel c) const { return channels.contains(c); }
  const ChannelBlocks& at(Channel c) const;
  Timestamp time_at(std::size_t sample) const {
    return year_start + kStep * static_cast<long>(sample);
  }
};

/// Keeps the first 104,832 samples of each channel counted from year_start.
/// Wind and solar are required. Throws CoverageError with the shortfall when
/// a series starts late or is too short.
YearBlocks to_year_blocks(const std::map<Channel, SampleSeries>& series,
                          Timestamp year_start);

/// Canonical blocked-dataset text file.
void write_blocked_dataset(std::ostream& out, const YearBlocks& blocks);
YearBlocks read_blocked_dataset(std::istream& in);
YearBlocks load_blocked_dataset(const std::filesystem::path& path);

}  // namespace lullslew
