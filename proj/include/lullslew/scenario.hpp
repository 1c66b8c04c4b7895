#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lullslew/ingest.hpp"
#include "lullslew/parallel.hpp"

namespace lullslew {

// A wind or solar target: either the annual average to reach (GW) or a
// multiplier applied to the base year.
struct ChannelTarget {
  enum class Kind { average, multiplier };

  Kind kind = Kind::multiplier;
  double value = 1.0;

  static ChannelTarget average(double gw) { return {Kind::average, gw}; }
  static ChannelTarget multiplier(double m) { return {Kind::multiplier, m}; }
};

struct AnalysisParameters {
  int slew_window_min = 60;
  double lull_threshold_fraction = 0.2;
  double lull_min_hours = 24.0;
  double histogram_bin_gw = 5.0;

  void validate() const;
};

struct Scenario {
  std::string name;
  double demand_gw = 0.0;
  double nuclear_gw = 0.0;
  ChannelTarget wind;
  ChannelTarget solar;
  AnalysisParameters analysis;

  /// Throws InfeasibleScenarioError when nuclear >= demand, ConfigError for
  /// anything else out of range.
  void validate() const;
};

/// YAML, one scenario per document. See config/scenarios/ for the schema.
Scenario parse_scenario(std::string_view yaml_text);
Scenario load_scenario(const std::filesystem::path& path);

/// Demand less nuclear generation, in GW.
double headroom(double demand_gw, double nuclear_gw);

double scale_factor(double target_average_gw, double base_average_gw,
                    std::string_view channel = "channel");

// Base-year blocks scaled to a scenario. Immutable once built.
class ScaledYear {
public:
  const Scenario& scenario() const noexcept { return scenario_; }
  Timestamp year_start() const noexcept { return year_start_; }
  Timestamp time_at(std::size_t sample) const {
    return year_start_ + kStep * static_cast<long>(sample);
  }

  double hdrm() const noexcept { return hdrm_; }
  double wind_multiplier() const noexcept { return wind_multiplier_; }
  double solar_multiplier() const noexcept { return solar_multiplier_; }
  double wind_average() const noexcept { return wind_average_; }
  double solar_average() const noexcept { return solar_average_; }

  std::span<const double> wind() const noexcept { return wind_; }
  std::span<const double> solar() const noexcept { return solar_; }
  /// Wind plus solar, sample by sample.
  std::span<const double> combined() const noexcept { return combined_; }

  static std::span<const double> block(std::span<const double> year, std::size_t index);

private:
  friend ScaledYear apply_scenario(const YearBlocks&, const Scenario&, Execution);

  Scenario scenario_;
  Timestamp year_start_{};
  double hdrm_ = 0.0;
  double wind_multiplier_ = 1.0;
  double solar_multiplier_ = 1.0;
  double wind_average_ = 0.0;
  double solar_average_ = 0.0;
  std::vector<double> wind_;
  std::vector<double> solar_;
  std::vector<double> combined_;
};

/// Scales every wind and solar sample by its channel factor (blocks processed
/// independently, bit-identical under either execution policy).
ScaledYear apply_scenario(const YearBlocks& blocks, const Scenario& scenario,
                          Execution exec = Execution::parallel);

}  // namespace lullslew
