#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lullslew/dispatch.hpp"

namespace lullslew {

enum class Technology { ccgt, ocgt, icgr, storage, other };

std::string_view technology_name(Technology t) noexcept;
std::optional<Technology> technology_from_name(std::string_view name) noexcept;

struct FleetUnit {
  std::string name;
  Technology technology = Technology::other;
  double capacity_gw = 0.0;
  double ramp_rate = 0.0;  // GW/h per GW of capacity; unused for storage
  double time_to_full_min = 0.0;
  std::optional<double> efficiency_full;
  std::optional<double> efficiency_40pct;  // reported only
  double energy_gwh = 0.0;                 // storage only

  bool is_storage() const noexcept { return technology == Technology::storage; }
  void validate() const;
};

struct EmissionsParameters {
  double efficiency = 0.5;
  double tco2_per_mwh_thermal = 0.185;
};

struct Fleet {
  std::vector<FleetUnit> units;
  EmissionsParameters emissions;
  double storage_cost_per_kwh = 150.0;

  double storage_energy_gwh() const;
};

Fleet parse_fleet(std::string_view yaml_text);
Fleet load_fleet(const std::filesystem::path& path);

struct RampCapability {
  double ramp_gw_per_h = 0.0;     // non-storage units
  double instantaneous_gw = 0.0;  // storage power
};

RampCapability ramp_capability(std::span<const FleetUnit> fleet);

struct CheckOutcome {
  double requirement = 0.0;
  double capability = 0.0;
  double margin = 0.0;
  bool pass = false;
};

struct AdequacyReport {
  RampCapability ramp;
  double firm_capacity_gw = 0.0;
  CheckOutcome slew;
  CheckOutcome lull;

  bool pass() const noexcept { return slew.pass && lull.pass; }
};

/// Slew check: ramp + storage power >= required slew.
/// Lull check: non-storage capacity >= hdrm (storage energy runs out).
AdequacyReport check_adequacy(std::span<const FleetUnit> fleet, double required_slew_gw_per_h,
                              double hdrm_gw);

/// Hours until the store is empty when drained by the given per-interval
/// deficit, or nullopt if the profile ends first.
std::optional<double> storage_exhaustion(double energy_gwh, std::span<const double> deficit_gw,
                                         double step_hours = kStepHours);

double storage_cost(double deficit_gwh, double cost_per_kwh);

/// MtCO2 per year from an annual-average dispatchable output.
double annual_emissions(double dispatchable_gw, double efficiency, double tco2_per_mwh_thermal);
double annual_emissions(const DispatchResult& dispatch, double efficiency,
                        double tco2_per_mwh_thermal);

inline constexpr double kHoursPerYear = 8760.0;

}  // namespace lullslew
