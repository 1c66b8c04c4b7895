#include "lullslew/fleet.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include "lullslew/error.hpp"

namespace lullslew {
namespace {

constexpr std::array<std::pair<Technology, std::string_view>, 5> kTechnologyNames{{
    {Technology::ccgt, "CCGT"},
    {Technology::ocgt, "OCGT"},
    {Technology::icgr, "ICGR"},
    {Technology::storage, "storage"},
    {Technology::other, "other"},
}};

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

}  // namespace

std::string_view technology_name(Technology t) noexcept {
  for (const auto& [tech, name] : kTechnologyNames) {
    if (tech == t) return name;
  }
  return "other";
}

std::optional<Technology> technology_from_name(std::string_view name) noexcept {
  for (const auto& [tech, label] : kTechnologyNames) {
    if (iequals(label, name)) return tech;
  }
  return std::nullopt;
}

void FleetUnit::validate() const {
  const std::string who = "fleet unit '" + name + "'";
  if (!(capacity_gw >= 0.0)) throw ConfigError(who + ": capacity must be >= 0");
  if (!(time_to_full_min >= 0.0)) throw ConfigError(who + ": time to full output must be >= 0");
  if (is_storage()) {
    if (!(energy_gwh > 0.0)) throw ConfigError(who + ": storage needs energy_gwh > 0");
    return;
  }
  if (!(ramp_rate >= 0.0)) throw ConfigError(who + ": ramp rate must be >= 0");
  for (const auto& eff : {efficiency_full, efficiency_40pct}) {
    if (eff && !(*eff > 0.0 && *eff <= 1.0)) {
      throw ConfigError(who + ": efficiencies are fractions in (0, 1]");
    }
  }
}

double Fleet::storage_energy_gwh() const {
  double total = 0.0;
  for (const auto& u : units) {
    if (u.is_storage()) total += u.energy_gwh;
  }
  return total;
}

Fleet parse_fleet(std::string_view yaml_text) {
  Fleet fleet;
  try {
    const YAML::Node root = YAML::Load(std::string(yaml_text));
    if (!root.IsMap()) throw ConfigError("fleet file must be a YAML mapping");
    if (const auto cost = root["storage_cost_usd_per_kwh"]) fleet.storage_cost_per_kwh = cost.as<double>();
    if (const auto e = root["emissions"]) {
      if (e["efficiency"]) fleet.emissions.efficiency = e["efficiency"].as<double>();
      if (e["tco2_per_mwh_thermal"]) {
        fleet.emissions.tco2_per_mwh_thermal = e["tco2_per_mwh_thermal"].as<double>();
      }
    }
    const auto units = root["units"];
    if (units && !units.IsSequence()) throw ConfigError("fleet 'units' must be a list");
    if (units) {
      for (const auto& node : units) {
        FleetUnit u;
        u.name = node["name"] ? node["name"].as<std::string>() : "unit";
        if (!node["technology"]) throw ConfigError("fleet unit '" + u.name + "' lacks a technology");
        const auto tech_name = node["technology"].as<std::string>();
        const auto tech = technology_from_name(tech_name);
        if (!tech) throw ConfigError("unknown technology '" + tech_name + "'");
        u.technology = *tech;
        if (!node["capacity_gw"]) throw ConfigError("fleet unit '" + u.name + "' lacks capacity_gw");
        u.capacity_gw = node["capacity_gw"].as<double>();
        if (node["ramp_gw_per_h_per_gw"]) u.ramp_rate = node["ramp_gw_per_h_per_gw"].as<double>();
        if (node["time_to_full_min"]) u.time_to_full_min = node["time_to_full_min"].as<double>();
        if (node["efficiency_full"]) u.efficiency_full = node["efficiency_full"].as<double>();
        if (node["efficiency_40pct"]) u.efficiency_40pct = node["efficiency_40pct"].as<double>();
        if (node["energy_gwh"]) u.energy_gwh = node["energy_gwh"].as<double>();
        u.validate();
        fleet.units.push_back(std::move(u));
      }
    }
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("bad fleet file: ") + e.what());
  }
  if (!(fleet.emissions.efficiency > 0.0 && fleet.emissions.efficiency <= 1.0) ||
      !(fleet.emissions.tco2_per_mwh_thermal >= 0.0) || !(fleet.storage_cost_per_kwh >= 0.0)) {
    throw ConfigError("fleet emissions/cost parameters out of range");
  }
  return fleet;
}

Fleet load_fleet(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open fleet file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_fleet(buffer.str());
}

RampCapability ramp_capability(std::span<const FleetUnit> fleet) {
  RampCapability cap;
  for (const auto& u : fleet) {
    if (u.is_storage()) {
      cap.instantaneous_gw += u.capacity_gw;
    } else {
      cap.ramp_gw_per_h += u.capacity_gw * u.ramp_rate;
    }
  }
  return cap;
}

AdequacyReport check_adequacy(std::span<const FleetUnit> fleet, double required_slew_gw_per_h,
                              double hdrm_gw) {
  if (!(required_slew_gw_per_h >= 0.0) || !(hdrm_gw >= 0.0)) {
    throw DomainError("adequacy requirements must be >= 0");
  }
  AdequacyReport report;
  report.ramp = ramp_capability(fleet);
  for (const auto& u : fleet) {
    if (!u.is_storage()) report.firm_capacity_gw += u.capacity_gw;
  }

  const auto outcome = [](double requirement, double capability) {
    CheckOutcome o{requirement, capability, capability - requirement, false};
    o.pass = o.margin >= 0.0;
    return o;
  };
  report.slew = outcome(required_slew_gw_per_h,
                        report.ramp.ramp_gw_per_h + report.ramp.instantaneous_gw);
  report.lull = outcome(hdrm_gw, report.firm_capacity_gw);
  return report;
}

std::optional<double> storage_exhaustion(double energy_gwh, std::span<const double> deficit_gw,
                                         double step_hours) {
  if (!(energy_gwh >= 0.0)) throw DomainError("storage energy must be >= 0");
  if (!(step_hours > 0.0)) throw DomainError("step must be positive");
  double remaining = energy_gwh;
  double elapsed = 0.0;
  for (double d : deficit_gw) {
    if (d > 0.0) {
      const double drain = d * step_hours;
      if (drain >= remaining) return elapsed + remaining / d;
      remaining -= drain;
    }
    elapsed += step_hours;
  }
  return std::nullopt;
}

double storage_cost(double deficit_gwh, double cost_per_kwh) {
  if (!(deficit_gwh >= 0.0) || !(cost_per_kwh >= 0.0)) {
    throw DomainError("storage cost inputs must be >= 0");
  }
  return deficit_gwh * 1e6 * cost_per_kwh;
}

double annual_emissions(double dispatchable_gw, double efficiency, double tco2_per_mwh_thermal) {
  if (!(efficiency > 0.0 && efficiency <= 1.0)) throw DomainError("efficiency must lie in (0, 1]");
  if (!(tco2_per_mwh_thermal >= 0.0)) throw DomainError("emission factor must be >= 0");
  if (!(dispatchable_gw >= 0.0)) throw DomainError("dispatchable generation must be >= 0");
  const double electrical_mwh = dispatchable_gw * kHoursPerYear * 1000.0;
  return electrical_mwh / efficiency * tco2_per_mwh_thermal / 1e6;
}

double annual_emissions(const DispatchResult& dispatch, double efficiency,
                        double tco2_per_mwh_thermal) {
  return annual_emissions(dispatch.annual.dispatchable, efficiency, tco2_per_mwh_thermal);
}

}  // namespace lullslew
