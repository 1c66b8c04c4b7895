#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "lullslew/ingest.hpp"

namespace lullslew::synthetic {

// Knobs for a plausible stand-in year: persistent, heavy-tailed wind with a
// few multi-day lulls and seasonal, cloudy solar.
struct YearProfile {
  int year = 2017;
  std::uint64_t seed = 2017;
  double wind_average_gw = 6.045;
  double solar_average_gw = 1.16;
  double demand_gw = 33.7;
  double nuclear_gw = 7.48;
  bool inject_lulls = true;
};

struct SyntheticYear {
  Timestamp start{};
  std::vector<double> wind;   // GW, one per 5-minute slot of the calendar year
  std::vector<double> solar;  // GW
};

SyntheticYear generate(const YearProfile& profile);

/// Quantizes the first 104,832 samples of each array into YearBlocks.
YearBlocks make_blocks(Timestamp year_start, const std::vector<double>& wind,
                       const std::vector<double>& solar);

YearBlocks generate_blocks(const YearProfile& profile);

/// Gridwatch-style CSV (MW, ISO timestamps) covering the full calendar year.
void write_gridwatch_csv(std::ostream& out, const SyntheticYear& year, const YearProfile& profile);

}  // namespace lullslew::synthetic
