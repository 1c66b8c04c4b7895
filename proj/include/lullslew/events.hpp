#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "lullslew/scenario.hpp"

namespace lullslew {

// Backward-difference rate of change in GW/h. rates[j] belongs to source
// sample j + lag and covers (t - window, t].
struct SlewSeries {
  int window_min = 60;
  std::size_t lag = 12;  // window in samples
  std::vector<double> rates;

  std::size_t sample_index(std::size_t j) const noexcept { return j + lag; }
};

/// Throws ConfigError unless window_min is a positive multiple of 5, and
/// DomainError when the series is not longer than the window.
SlewSeries slew_series(std::span<const double> samples, int window_min);

struct CombinedSlew {
  SlewSeries wind;
  SlewSeries solar;
  std::vector<double> combined;  // wind.rates[j] + solar.rates[j]
};

CombinedSlew combined_slew(const ScaledYear& year, int window_min);

// Rates are signed (negative = falling generation).
struct SlewEvent {
  std::size_t sample = 0;
  Timestamp time{};
  double wind_slew = 0.0;
  double solar_slew = 0.0;
  double combined_slew = 0.0;
  double level = 0.0;  // w+s at the event
  bool effective = false;

  std::size_t block() const noexcept { return sample / kSamplesPerBlock; }
  std::size_t week() const noexcept { return block() + 1; }
  double downslew() const noexcept { return -combined_slew; }
};

/// Steepest fall of w+s among samples where w+s <= hdrm; earliest sample wins
/// ties. Excess above hdrm is curtailed, so slews there are ignored. nullopt
/// when no effective sample is falling.
std::optional<SlewEvent> max_effective_downslew(const ScaledYear& year, int window_min);

/// First sample with w+s <= hdrm that follows one above it, at or after
/// `from`. nullopt when there is none.
std::optional<std::size_t> next_hdrm_crossing(const ScaledYear& year, std::size_t from);

/// Largest-magnitude solar rate inside one block (signed).
std::optional<SlewEvent> peak_solar_slew(const ScaledYear& year, std::size_t block,
                                         int window_min);

/// Largest-magnitude wind rate across the year (signed), all samples.
std::optional<SlewEvent> peak_wind_slew(const ScaledYear& year, int window_min);

struct LullEvent {
  std::size_t first = 0;  // sample index, inclusive
  std::size_t last = 0;   // sample index, exclusive
  Timestamp start{};
  Timestamp end{};
  double duration_h = 0.0;
  double min_level = 0.0;  // minimum w+s
  Timestamp min_time{};
  double deficit_gwh = 0.0;
};

/// Maximal runs with wind <= threshold_fraction * realized wind average that
/// last at least min_hours. Time-ordered and disjoint.
std::vector<LullEvent> detect_lulls(const ScaledYear& year, double threshold_fraction,
                                    double min_hours);

/// Energy (GWh) the dispatchable fleet must supply over [first, last).
double lull_deficit(const ScaledYear& year, std::size_t first, std::size_t last);
/// Timestamp form. Both ends must lie on the sample grid inside the year.
double lull_deficit(const ScaledYear& year, Timestamp start, Timestamp end);

/// Per-interval shortfall max(0, hdrm - w+s) over [first, last), in GW.
std::vector<double> deficit_profile(const ScaledYear& year, std::size_t first,
                                    std::size_t last);

/// Planning estimate of the largest wind slew: 0.37 x annual average wind.
double mackay_slew(double average_wind_gw);

/// Largest solar slew scaled from the 10 GW/h observed at 7.08 GW average.
double scaled_solar_slew(double average_solar_gw);

inline constexpr double kMackayCoefficient = 0.37;
inline constexpr double kReferenceSolarSlew = 10.0;     // GW/h
inline constexpr double kReferenceSolarAverage = 7.08;  // GW

void write_lulls_csv(std::ostream& out, std::span<const LullEvent> lulls);
/// Plot-ready window: time, wind, solar, w+s, hdrm.
void write_levels_csv(std::ostream& out, const ScaledYear& year, std::size_t first,
                      std::size_t last);
/// Plot-ready window with rates: adds wind, solar and w+s slews.
void write_slew_window_csv(std::ostream& out, const ScaledYear& year,
                           const CombinedSlew& slews, std::size_t first, std::size_t last);

}  // namespace lullslew
