#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "lullslew/error.hpp"
#include "lullslew/ingest.hpp"
#include "lullslew/power.hpp"
#include "lullslew/synthetic.hpp"
#include "test_support.hpp"

using namespace lullslew;

namespace {

ColumnMapping gw_mapping() {
  ColumnMapping m;
  m.timestamp_column = "time";
  m.channels[Channel::wind] = {"wind", PowerUnit::gw};
  m.channels[Channel::solar] = {"solar", PowerUnit::gw};
  return m;
}

ParseResult parse(const std::string& text, const ColumnMapping& m = gw_mapping()) {
  std::istringstream in(text);
  return parse_records(in, m);
}

// Records on the 5-minute grid starting at 2017-01-01.
std::vector<RawRecord> grid_records(const std::vector<double>& values) {
  std::vector<RawRecord> out;
  const auto t0 = start_of_year(2017);
  for (std::size_t i = 0; i < values.size(); ++i) {
    RawRecord r{t0 + kStep * static_cast<long>(i), {}};
    if (!std::isnan(values[i])) r.readings[0] = values[i];
    out.push_back(r);
  }
  return out;
}

}  // namespace

TEST(ParseRecords, WellFormedRows) {
  const auto r = parse("time,wind,solar\n"
                       "2017-01-01 00:00:00,4.0,0\n"
                       "2017-01-01 00:05:00,4.5,0\n"
                       "2017-01-01 00:10:00,5.0,0.1\n");
  EXPECT_EQ(r.records.size(), 3u);
  EXPECT_TRUE(r.rejects.empty());
  EXPECT_EQ(r.data_rows, 3u);
  EXPECT_DOUBLE_EQ(*r.records[2].reading(Channel::solar), 0.1);
}

TEST(ParseRecords, BadTimestampRejectedWithLineNumber) {
  const auto r = parse("time,wind,solar\n"
                       "2017-01-01 00:00:00,4.0,0\n"
                       "not-a-time,4.5,0\n"
                       "2017-01-01 00:10:00,5.0,0\n");
  EXPECT_EQ(r.records.size(), 2u);
  ASSERT_EQ(r.rejects.size(), 1u);
  EXPECT_EQ(r.rejects[0].line, 3u);
}

TEST(ParseRecords, MissingWindAndGarbageValuesAreRejected) {
  const auto r = parse("time,wind,solar\n"
                       "2017-01-01 00:00:00,,0\n"
                       "2017-01-01 00:05:00,abc,0\n"
                       "2017-01-01 00:10:00,5.0,\n");
  EXPECT_EQ(r.records.size(), 1u);
  EXPECT_EQ(r.rejects.size(), 2u);
  EXPECT_FALSE(r.records[0].reading(Channel::solar));
}

TEST(ParseRecords, ConfigurationAndEmptyErrors) {
  EXPECT_THROW(parse(""), EmptyInputError);
  EXPECT_THROW(parse("\n  \n"), EmptyInputError);
  EXPECT_THROW(parse("time,wind\n2017-01-01,1\n"), ConfigError);  // solar column missing
}

TEST(ParseRecords, MegawattsEpochAndDelimiter) {
  ColumnMapping m = gw_mapping();
  m.delimiter = ';';
  m.channels[Channel::wind].unit = PowerUnit::mw;
  const auto r = parse(" time ; wind ; solar\n1483228800;6045;1160\n1483229100;6000;0\n", m);
  ASSERT_EQ(r.records.size(), 2u);
  EXPECT_EQ(r.records[0].time, start_of_year(2017));
  EXPECT_DOUBLE_EQ(*r.records[0].reading(Channel::wind), 6.045);
  EXPECT_DOUBLE_EQ(*r.records[0].reading(Channel::solar), 1160.0);  // solar declared GW
}

TEST(ParseRecords, GridwatchMappingFromYaml) {
  const auto m = parse_column_mapping(
      "timestamp: timestamp\nchannels:\n  wind: {column: wind, unit: MW}\n  solar: solar\n");
  EXPECT_EQ(m.channels.at(Channel::wind).unit, PowerUnit::mw);
  EXPECT_EQ(m.channels.at(Channel::solar).column, "solar");
  EXPECT_THROW(parse_column_mapping("timestamp: t\nchannels:\n  solar: s\n"), ConfigError);
  EXPECT_THROW(parse_column_mapping("timestamp: t\nchannels:\n  tidal: s\n"), ConfigError);
  EXPECT_THROW(parse_column_mapping("timestamp: t\nchannels:\n  wind: {column: w, unit: kW}\n"),
               ConfigError);
}

TEST(ParseRecords, RejectsPlusAcceptedEqualsDataRows) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> kind(0, 4);
  for (int trial = 0; trial < 50; ++trial) {
    std::ostringstream text;
    text << "time,wind,solar\n";
    const int rows = 20 + trial;
    for (int i = 0; i < rows; ++i) {
      switch (kind(rng)) {
        case 0: text << "garbage,1,1\n"; break;
        case 1: text << "2017-01-01 00:00:00,,1\n"; break;
        case 2: text << "\n"; break;  // blank lines are not data rows
        default: text << "2017-01-01 00:" << (i % 60 < 10 ? "0" : "") << i % 60 << ":00,3,1\n";
      }
    }
    const auto r = parse(text.str());
    EXPECT_EQ(r.records.size() + r.rejects.size(), r.data_rows);
  }
}

TEST(ParseRecords, FullBaseYearFile) {
  synthetic::YearProfile profile;
  std::ostringstream csv;
  synthetic::write_gridwatch_csv(csv, synthetic::generate(profile), profile);
  const std::string text = csv.str();
  // Oracle: count the lines of the fixture before parsing it.
  const auto lines = static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
  std::istringstream in(text);
  const auto r = parse_records(in, ColumnMapping::gridwatch());
  EXPECT_EQ(r.records.size(), lines - 1);
  EXPECT_GE(r.records.size(), kSamplesPerYear);
  EXPECT_TRUE(r.rejects.empty());
}

TEST(CleanSeries, IdentityOnCleanGridData) {
  const std::vector<double> values{1.0, 2.5, 3.0, 0.0, 4.25};
  const auto s = clean_series(grid_records(values), Channel::wind);
  ASSERT_EQ(s.size(), values.size());
  EXPECT_EQ(s.start(), start_of_year(2017));
  for (std::size_t i = 0; i < values.size(); ++i) {
    EXPECT_EQ(s.values()[i], values[i]);
    EXPECT_EQ(s.quality()[i], SampleQuality::measured);
  }
}

TEST(CleanSeries, InterpolatesSingleGap) {
  std::vector<double> values(20, 4.0);
  values[10] = NAN;
  values[11] = 6.0;
  auto records = grid_records(values);
  records.erase(records.begin() + 10);
  const auto s = clean_series(records, Channel::wind);
  EXPECT_DOUBLE_EQ(s.values()[10], 5.0);
  EXPECT_EQ(s.quality()[10], SampleQuality::interpolated);
  EXPECT_EQ(s.flagged_count(), 1u);
}

TEST(CleanSeries, ClampsNegatives) {
  std::vector<double> values(20, 1.0);
  values[5] = -0.3;
  const auto s = clean_series(grid_records(values), Channel::wind);
  EXPECT_EQ(s.values()[5], 0.0);
  EXPECT_EQ(s.quality()[5], SampleQuality::clamped);
}

TEST(CleanSeries, CarriesForwardLongGaps) {
  std::vector<double> values(100, 2.0);
  values[99] = 8.0;
  for (std::size_t i = 80; i < 99; ++i) values[i] = NAN;  // 19 missing > 12
  auto records = grid_records(values);
  std::erase_if(records, [](const RawRecord& r) { return !r.reading(Channel::wind); });
  const auto s = clean_series(records, Channel::wind);
  ASSERT_EQ(s.size(), 100u);
  EXPECT_EQ(s.values()[90], 2.0);
  EXPECT_EQ(s.quality()[90], SampleQuality::carried_forward);
  EXPECT_EQ(s.values()[99], 8.0);
}

TEST(CleanSeries, RejectsIsolatedSpikes) {
  std::vector<double> values(30, 3.0);
  values[12] = 3.5;
  values[13] = 200.0;
  values[14] = 2.5;
  const auto s = clean_series(grid_records(values), Channel::wind);
  EXPECT_NEAR(s.values()[13], 3.0, 1e-9);
  EXPECT_EQ(s.quality()[13], SampleQuality::interpolated);
  // A genuine ramp is not a spike.
  std::vector<double> ramp{1.0, 5.0, 20.0, 25.0, 30.0};
  const auto r = clean_series(grid_records(ramp), Channel::wind);
  EXPECT_EQ(r.flagged_count(), 0u);
}

TEST(CleanSeries, SnapsOffGridTimesAndKeepsFirstDuplicate) {
  const auto t0 = start_of_year(2017);
  std::vector<RawRecord> records;
  for (int i = 0; i < 10; ++i) {
    RawRecord r{t0 + kStep * i + std::chrono::seconds{4}, {}};
    r.readings[0] = 1.0 + i;
    records.push_back(r);
  }
  RawRecord dup{t0 + kStep * 3 - std::chrono::seconds{10}, {}};
  dup.readings[0] = 99.0;
  records.push_back(dup);
  const auto s = clean_series(records, Channel::wind);
  ASSERT_EQ(s.size(), 10u);
  EXPECT_EQ(s.values()[3], 4.0);  // file order decides, not raw time
  EXPECT_EQ(s.start(), t0);
}

TEST(CleanSeries, DataQualityAndEmptyErrors) {
  EXPECT_THROW(clean_series(std::vector<RawRecord>{}, Channel::wind), EmptyInputError);
  EXPECT_THROW(clean_series(grid_records({1.0, 2.0}), Channel::solar), EmptyInputError);
  std::vector<double> values(10, -1.0);
  values[0] = 1.0;
  EXPECT_THROW(clean_series(grid_records(values), Channel::wind), DataQualityError);
}

TEST(CleanSeries, IdempotentAndGapFreeOnRandomInput) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> value(-0.5, 10.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<RawRecord> records;
    const auto t0 = start_of_year(2017);
    for (int i = 0; i < 500; ++i) {
      if (i != 0 && i != 499 && u(rng) < 0.05) continue;  // drop
      RawRecord r{t0 + kStep * i + std::chrono::seconds{static_cast<int>(u(rng) * 60) - 30}, {}};
      double v = value(rng);
      if (u(rng) < 0.01) v *= 100.0;  // occasional spike
      r.readings[0] = v;
      records.push_back(r);
    }
    std::shuffle(records.begin(), records.end(), rng);
    const auto once = clean_series(records, Channel::wind);
    EXPECT_EQ(once.size(), 500u);
    for (double v : once.values()) {
      EXPECT_GE(v, 0.0);
      EXPECT_TRUE(is_quantized(v));
    }
    const auto twice = clean_series(to_records(once, Channel::wind), Channel::wind);
    ASSERT_EQ(twice.size(), once.size());
    EXPECT_TRUE(std::equal(once.values().begin(), once.values().end(), twice.values().begin()));
    EXPECT_EQ(twice.flagged_count(), 0u);
  }
}

namespace {

SampleSeries plain_series(std::vector<double> values, Timestamp start = start_of_year(2017)) {
  std::vector<SampleQuality> q(values.size(), SampleQuality::measured);
  return SampleSeries(start, std::move(values), std::move(q));
}

}  // namespace

TEST(YearBlocks, BaseAverageOfAFullYear) {
  // Alternate 5.045 and 7.045: exact mean 6.045.
  std::vector<double> wind(kSamplesPerYear);
  for (std::size_t i = 0; i < wind.size(); ++i) wind[i] = quantize_power(i % 2 ? 7.045 : 5.045);
  std::map<Channel, SampleSeries> series;
  series.emplace(Channel::wind, plain_series(wind));
  series.emplace(Channel::solar, plain_series(std::vector<double>(kSamplesPerYear, 1.16)));
  const auto blocks = to_year_blocks(series, start_of_year(2017));
  EXPECT_EQ(blocks.at(Channel::wind).samples().size(), 52u * 2016u);
  EXPECT_NEAR(blocks.at(Channel::wind).base_average(), 6.045, 1e-9 * 6.045);
  EXPECT_EQ(blocks.at(Channel::wind).block(51).size(), kSamplesPerBlock);
}

TEST(YearBlocks, DiscardsPartialWeekFiftyThree) {
  const std::size_t calendar_year = 105'120;
  EXPECT_EQ(calendar_year - kSamplesPerYear, 288u);
  std::vector<double> wind(calendar_year);
  for (std::size_t i = 0; i < wind.size(); ++i) wind[i] = static_cast<double>(i % 1000);
  std::map<Channel, SampleSeries> series;
  series.emplace(Channel::wind, plain_series(wind));
  series.emplace(Channel::solar, plain_series(std::vector<double>(calendar_year, 0.5)));
  const auto blocks = to_year_blocks(series, start_of_year(2017));
  // Round-trip: flattening the blocks reproduces the first 104,832 samples.
  std::vector<double> flat;
  for (std::size_t b = 0; b < kBlocksPerYear; ++b) {
    const auto blk = blocks.at(Channel::wind).block(b);
    flat.insert(flat.end(), blk.begin(), blk.end());
  }
  EXPECT_TRUE(std::equal(flat.begin(), flat.end(), wind.begin()));
  EXPECT_EQ(flat.size(), wind.size() - 288);
}

TEST(YearBlocks, SeriesStartingEarlierIsOffset) {
  const auto year_start = start_of_year(2017);
  std::vector<double> wind(kSamplesPerYear + 12);
  for (std::size_t i = 0; i < wind.size(); ++i) wind[i] = static_cast<double>(i);
  std::map<Channel, SampleSeries> series;
  series.emplace(Channel::wind, plain_series(wind, year_start - kStep * 12));
  series.emplace(Channel::solar, plain_series(wind, year_start - kStep * 12));
  const auto blocks = to_year_blocks(series, year_start);
  EXPECT_EQ(blocks.at(Channel::wind).samples()[0], 12.0);
}

TEST(YearBlocks, CoverageErrors) {
  std::map<Channel, SampleSeries> week;
  week.emplace(Channel::wind, plain_series(std::vector<double>(kSamplesPerBlock, 1.0)));
  week.emplace(Channel::solar, plain_series(std::vector<double>(kSamplesPerBlock, 1.0)));
  try {
    to_year_blocks(week, start_of_year(2017));
    FAIL() << "expected CoverageError";
  } catch (const CoverageError& e) {
    EXPECT_NE(std::string(e.what()).find(std::to_string(kSamplesPerYear - kSamplesPerBlock)),
              std::string::npos);
  }

  std::map<Channel, SampleSeries> late;
  late.emplace(Channel::wind,
               plain_series(std::vector<double>(kSamplesPerYear, 1.0), start_of_year(2017) + kStep));
  late.emplace(Channel::solar, plain_series(std::vector<double>(kSamplesPerYear, 1.0)));
  EXPECT_THROW(to_year_blocks(late, start_of_year(2017)), CoverageError);

  std::map<Channel, SampleSeries> no_solar;
  no_solar.emplace(Channel::wind, plain_series(std::vector<double>(kSamplesPerYear, 1.0)));
  EXPECT_THROW(to_year_blocks(no_solar, start_of_year(2017)), CoverageError);
}

TEST(BlockedDataset, RoundTripsExactly) {
  synthetic::YearProfile profile;
  profile.seed = 99;
  const auto blocks = synthetic::generate_blocks(profile);
  std::stringstream file;
  write_blocked_dataset(file, blocks);
  const auto back = read_blocked_dataset(file);
  EXPECT_EQ(back.year_start, blocks.year_start);
  for (Channel c : {Channel::wind, Channel::solar}) {
    const auto a = blocks.at(c).samples();
    const auto b = back.at(c).samples();
    EXPECT_TRUE(std::equal(a.begin(), a.end(), b.begin()));
    EXPECT_EQ(back.at(c).base_average(), blocks.at(c).base_average());
  }
}

TEST(BlockedDataset, DetectsTamperingAndTruncation) {
  synthetic::YearProfile profile;
  const auto blocks = synthetic::generate_blocks(profile);
  std::stringstream file;
  write_blocked_dataset(file, blocks);
  std::string text = file.str();

  std::string truncated = text.substr(0, text.size() / 2);
  truncated = truncated.substr(0, truncated.rfind('\n') + 1);
  std::istringstream t(truncated);
  EXPECT_THROW(read_blocked_dataset(t), CoverageError);

  const auto pos = text.find("# base_average_gw ") + 18;
  text.replace(pos, 1, text[pos] == '9' ? "1" : "9");
  std::istringstream tampered(text);
  EXPECT_THROW(read_blocked_dataset(tampered), DataQualityError);

  std::istringstream junk("hello\n");
  EXPECT_THROW(read_blocked_dataset(junk), ConfigError);
}
