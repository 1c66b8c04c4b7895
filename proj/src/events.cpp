#include "lullslew/events.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "lullslew/error.hpp"

namespace lullslew {

SlewSeries slew_series(std::span<const double> samples, int window_min) {
  if (window_min <= 0 || window_min % 5 != 0) {
    throw ConfigError("slew window must be a positive multiple of 5 minutes, got " +
                      std::to_string(window_min));
  }
  SlewSeries s;
  s.window_min = window_min;
  s.lag = static_cast<std::size_t>(window_min / 5);
  if (samples.size() <= s.lag) {
    throw DomainError("series of " + std::to_string(samples.size()) +
                      " samples is not longer than the slew window");
  }
  const double per_hour = 60.0 / window_min;
  s.rates.resize(samples.size() - s.lag);
  for (std::size_t j = 0; j < s.rates.size(); ++j) {
    s.rates[j] = (samples[j + s.lag] - samples[j]) * per_hour;
  }
  return s;
}

CombinedSlew combined_slew(const ScaledYear& year, int window_min) {
  CombinedSlew c{slew_series(year.wind(), window_min), slew_series(year.solar(), window_min), {}};
  c.combined.resize(c.wind.rates.size());
  for (std::size_t j = 0; j < c.combined.size(); ++j) {
    c.combined[j] = c.wind.rates[j] + c.solar.rates[j];
  }
  return c;
}

namespace {

SlewEvent make_event(const ScaledYear& year, const CombinedSlew& c, std::size_t j) {
  SlewEvent e;
  e.sample = c.wind.sample_index(j);
  e.time = year.time_at(e.sample);
  e.wind_slew = c.wind.rates[j];
  e.solar_slew = c.solar.rates[j];
  e.combined_slew = c.combined[j];
  e.level = year.combined()[e.sample];
  e.effective = e.level <= year.hdrm();
  return e;
}

}  // namespace

std::optional<SlewEvent> max_effective_downslew(const ScaledYear& year, int window_min) {
  const auto c = combined_slew(year, window_min);
  const auto level = year.combined();
  std::optional<std::size_t> best;
  for (std::size_t j = 0; j < c.combined.size(); ++j) {
    if (level[c.wind.sample_index(j)] > year.hdrm()) continue;
    if (c.combined[j] < 0.0 && (!best || c.combined[j] < c.combined[*best])) best = j;
  }
  if (!best) return std::nullopt;
  return make_event(year, c, *best);
}

std::optional<std::size_t> next_hdrm_crossing(const ScaledYear& year, std::size_t from) {
  const auto level = year.combined();
  for (std::size_t t = std::max<std::size_t>(from, 1); t < level.size(); ++t) {
    if (level[t] <= year.hdrm() && level[t - 1] > year.hdrm()) return t;
  }
  return std::nullopt;
}

std::optional<SlewEvent> peak_solar_slew(const ScaledYear& year, std::size_t block,
                                         int window_min) {
  if (block >= kBlocksPerYear) throw RangeError("block index " + std::to_string(block));
  const auto c = combined_slew(year, window_min);
  const std::size_t first = std::max(block * kSamplesPerBlock, c.solar.lag);
  const std::size_t last = (block + 1) * kSamplesPerBlock;
  std::optional<std::size_t> best;
  for (std::size_t t = first; t < last; ++t) {
    const std::size_t j = t - c.solar.lag;
    if (!best || std::fabs(c.solar.rates[j]) > std::fabs(c.solar.rates[*best])) best = j;
  }
  if (!best || c.solar.rates[*best] == 0.0) return std::nullopt;
  return make_event(year, c, *best);
}

std::optional<SlewEvent> peak_wind_slew(const ScaledYear& year, int window_min) {
  const auto c = combined_slew(year, window_min);
  std::optional<std::size_t> best;
  for (std::size_t j = 0; j < c.wind.rates.size(); ++j) {
    if (!best || std::fabs(c.wind.rates[j]) > std::fabs(c.wind.rates[*best])) best = j;
  }
  if (!best || c.wind.rates[*best] == 0.0) return std::nullopt;
  return make_event(year, c, *best);
}

double lull_deficit(const ScaledYear& year, std::size_t first, std::size_t last) {
  if (!(first < last) || last > kSamplesPerYear) {
    throw RangeError("deficit window [" + std::to_string(first) + ", " + std::to_string(last) +
                     ") is outside the year");
  }
  const auto level = year.combined();
  double shortfall = 0.0;
  for (std::size_t t = first; t < last; ++t) shortfall += std::max(0.0, year.hdrm() - level[t]);
  return shortfall * kStepHours;
}

double lull_deficit(const ScaledYear& year, Timestamp start, Timestamp end) {
  const auto to_index = [&](Timestamp t) -> std::size_t {
    if (t < year.year_start() || (t - year.year_start()) % kStep != std::chrono::seconds{0}) {
      throw RangeError(format_iso8601(t) + " is not a sample instant of the year");
    }
    return static_cast<std::size_t>((t - year.year_start()) / kStep);
  };
  return lull_deficit(year, to_index(start), to_index(end));
}

std::vector<double> deficit_profile(const ScaledYear& year, std::size_t first, std::size_t last) {
  if (first > last || last > kSamplesPerYear) throw RangeError("deficit profile window outside the year");
  const auto level = year.combined();
  std::vector<double> profile;
  profile.reserve(last - first);
  for (std::size_t t = first; t < last; ++t) profile.push_back(std::max(0.0, year.hdrm() - level[t]));
  return profile;
}

std::vector<LullEvent> detect_lulls(const ScaledYear& year, double threshold_fraction,
                                    double min_hours) {
  if (!(threshold_fraction > 0.0 && threshold_fraction < 1.0)) {
    throw ConfigError("lull threshold fraction must lie in (0, 1)");
  }
  if (!(min_hours >= 1.0)) throw ConfigError("lull minimum duration must be at least 1 h");

  const double threshold = threshold_fraction * year.wind_average();
  const auto min_samples = static_cast<std::size_t>(std::ceil(min_hours * kStepsPerHour - 1e-9));
  const auto wind = year.wind();
  const auto level = year.combined();

  std::vector<LullEvent> lulls;
  for (std::size_t t = 0; t < wind.size();) {
    if (wind[t] > threshold) {
      ++t;
      continue;
    }
    std::size_t end = t;
    while (end < wind.size() && wind[end] <= threshold) ++end;
    if (end - t >= min_samples) {
      LullEvent e;
      e.first = t;
      e.last = end;
      e.start = year.time_at(t);
      e.end = year.time_at(end);
      e.duration_h = static_cast<double>(end - t) * kStepHours;
      const auto lowest = std::min_element(level.begin() + static_cast<long>(t),
                                           level.begin() + static_cast<long>(end));
      e.min_level = *lowest;
      e.min_time = year.time_at(static_cast<std::size_t>(lowest - level.begin()));
      e.deficit_gwh = lull_deficit(year, t, end);
      lulls.push_back(e);
    }
    t = end;
  }
  return lulls;
}

double mackay_slew(double average_wind_gw) {
  if (!(average_wind_gw >= 0.0)) throw DomainError("average wind must be >= 0");
  return kMackayCoefficient * average_wind_gw;
}

double scaled_solar_slew(double average_solar_gw) {
  if (!(average_solar_gw >= 0.0)) throw DomainError("average solar must be >= 0");
  return kReferenceSolarSlew * average_solar_gw / kReferenceSolarAverage;
}

void write_lulls_csv(std::ostream& out, std::span<const LullEvent> lulls) {
  out << "start,end,duration_h,min_w_plus_s_gw,min_time,deficit_gwh\n";
  char buf[128];
  for (const auto& e : lulls) {
    std::snprintf(buf, sizeof buf, ",%.17g,%.17g,", e.duration_h, e.min_level);
    out << format_iso8601(e.start) << ',' << format_iso8601(e.end) << buf
        << format_iso8601(e.min_time);
    std::snprintf(buf, sizeof buf, ",%.17g\n", e.deficit_gwh);
    out << buf;
  }
}

void write_levels_csv(std::ostream& out, const ScaledYear& year, std::size_t first,
                      std::size_t last) {
  out << "timestamp,wind_gw,solar_gw,w_plus_s_gw,hdrm_gw\n";
  char buf[128];
  for (std::size_t t = first; t < std::min(last, kSamplesPerYear); ++t) {
    std::snprintf(buf, sizeof buf, ",%.17g,%.17g,%.17g,%.17g\n", year.wind()[t], year.solar()[t],
                  year.combined()[t], year.hdrm());
    out << format_iso8601(year.time_at(t)) << buf;
  }
}

void write_slew_window_csv(std::ostream& out, const ScaledYear& year, const CombinedSlew& slews,
                           std::size_t first, std::size_t last) {
  out << "timestamp,wind_gw,solar_gw,w_plus_s_gw,hdrm_gw,wind_slew_gw_per_h,"
         "solar_slew_gw_per_h,w_plus_s_slew_gw_per_h\n";
  char buf[256];
  const std::size_t lag = slews.wind.lag;
  for (std::size_t t = std::max(first, lag); t < std::min(last, kSamplesPerYear); ++t) {
    const std::size_t j = t - lag;
    std::snprintf(buf, sizeof buf, ",%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", year.wind()[t],
                  year.solar()[t], year.combined()[t], year.hdrm(), slews.wind.rates[j],
                  slews.solar.rates[j], slews.combined[j]);
    out << format_iso8601(year.time_at(t)) << buf;
  }
}

}  // namespace lullslew
