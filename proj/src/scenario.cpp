#include "lullslew/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "lullslew/error.hpp"
#include "lullslew/power.hpp"

namespace lullslew {

void AnalysisParameters::validate() const {
  if (slew_window_min <= 0 || slew_window_min % 5 != 0) {
    throw ConfigError("slew window must be a positive multiple of 5 minutes, got " +
                      std::to_string(slew_window_min));
  }
  if (!(lull_threshold_fraction > 0.0 && lull_threshold_fraction < 1.0)) {
    throw ConfigError("lull threshold fraction must lie in (0, 1)");
  }
  if (!(lull_min_hours >= 1.0)) throw ConfigError("lull minimum duration must be at least 1 h");
  if (!(histogram_bin_gw > 0.0)) throw ConfigError("histogram bin width must be positive");
}

void Scenario::validate() const {
  if (name.empty()) throw ConfigError("scenario needs a name");
  if (!std::isfinite(demand_gw) || !std::isfinite(nuclear_gw) || nuclear_gw < 0.0) {
    throw ConfigError("scenario '" + name + "': demand and nuclear must be finite, nuclear >= 0");
  }
  if (nuclear_gw >= demand_gw) {
    throw InfeasibleScenarioError("scenario '" + name + "': nuclear " + std::to_string(nuclear_gw) +
                                  " GW leaves no headroom under demand " +
                                  std::to_string(demand_gw) + " GW");
  }
  for (const auto* target : {&wind, &solar}) {
    if (!std::isfinite(target->value) || target->value < 0.0) {
      throw ConfigError("scenario '" + name + "': wind/solar targets must be >= 0");
    }
  }
  analysis.validate();
}

namespace {

ChannelTarget parse_target(const YAML::Node& node, const std::string& channel) {
  if (!node || !node.IsMap()) throw ConfigError("scenario lacks a '" + channel + "' section");
  const bool has_average = static_cast<bool>(node["average_gw"]);
  const bool has_multiplier = static_cast<bool>(node["multiplier"]);
  if (has_average == has_multiplier) {
    throw ConfigError("'" + channel + "' must give exactly one of average_gw or multiplier");
  }
  return has_average ? ChannelTarget::average(node["average_gw"].as<double>())
                     : ChannelTarget::multiplier(node["multiplier"].as<double>());
}

}  // namespace

Scenario parse_scenario(std::string_view yaml_text) {
  Scenario s;
  try {
    const YAML::Node root = YAML::Load(std::string(yaml_text));
    if (!root.IsMap()) throw ConfigError("scenario file must be a YAML mapping");
    if (!root["name"] || !root["demand_gw"] || !root["nuclear_gw"]) {
      throw ConfigError("scenario needs name, demand_gw and nuclear_gw");
    }
    s.name = root["name"].as<std::string>();
    s.demand_gw = root["demand_gw"].as<double>();
    s.nuclear_gw = root["nuclear_gw"].as<double>();
    s.wind = parse_target(root["wind"], "wind");
    s.solar = parse_target(root["solar"], "solar");
    if (const auto a = root["analysis"]) {
      if (a["slew_window_min"]) s.analysis.slew_window_min = a["slew_window_min"].as<int>();
      if (a["lull_threshold_fraction"]) {
        s.analysis.lull_threshold_fraction = a["lull_threshold_fraction"].as<double>();
      }
      if (a["lull_min_hours"]) s.analysis.lull_min_hours = a["lull_min_hours"].as<double>();
      if (a["histogram_bin_gw"]) s.analysis.histogram_bin_gw = a["histogram_bin_gw"].as<double>();
    }
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("bad scenario file: ") + e.what());
  }
  s.validate();
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

double headroom(double demand_gw, double nuclear_gw) {
  if (!(nuclear_gw >= 0.0) || !(demand_gw > nuclear_gw)) {
    throw InfeasibleScenarioError("headroom needs demand > nuclear >= 0 (demand " +
                                  std::to_string(demand_gw) + ", nuclear " +
                                  std::to_string(nuclear_gw) + ")");
  }
  return demand_gw - nuclear_gw;
}

double scale_factor(double target_average_gw, double base_average_gw, std::string_view channel) {
  if (base_average_gw == 0.0) {
    throw DomainError("cannot scale " + std::string(channel) + ": base-year average is zero");
  }
  return target_average_gw / base_average_gw;
}

std::span<const double> ScaledYear::block(std::span<const double> year, std::size_t index) {
  if (index >= kBlocksPerYear || year.size() != kSamplesPerYear) {
    throw RangeError("block index " + std::to_string(index) + " outside the year");
  }
  return year.subspan(index * kSamplesPerBlock, kSamplesPerBlock);
}

ScaledYear apply_scenario(const YearBlocks& blocks, const Scenario& scenario, Execution exec) {
  scenario.validate();
  const auto& wind_base = blocks.at(Channel::wind);
  const auto& solar_base = blocks.at(Channel::solar);

  auto factor = [](const ChannelTarget& t, const ChannelBlocks& base, std::string_view name) {
    return t.kind == ChannelTarget::Kind::multiplier
               ? t.value
               : scale_factor(t.value, base.base_average(), name);
  };

  ScaledYear y;
  y.scenario_ = scenario;
  y.year_start_ = blocks.year_start;
  y.hdrm_ = quantize_power(headroom(scenario.demand_gw, scenario.nuclear_gw));
  y.wind_multiplier_ = factor(scenario.wind, wind_base, "wind");
  y.solar_multiplier_ = factor(scenario.solar, solar_base, "solar");
  y.wind_.resize(kSamplesPerYear);
  y.solar_.resize(kSamplesPerYear);
  y.combined_.resize(kSamplesPerYear);

  for_each_index(kBlocksPerYear, exec, [&](std::size_t b) {
    const std::size_t begin = b * kSamplesPerBlock;
    const auto wb = wind_base.block(b);
    const auto sb = solar_base.block(b);
    for (std::size_t i = 0; i < kSamplesPerBlock; ++i) {
      const double w = quantize_power(y.wind_multiplier_ * wb[i]);
      const double s = quantize_power(y.solar_multiplier_ * sb[i]);
      y.wind_[begin + i] = w;
      y.solar_[begin + i] = s;
      y.combined_[begin + i] = w + s;  // exact on the quantized grid
    }
  });

  y.wind_average_ = mean(y.wind_);
  y.solar_average_ = mean(y.solar_);
  return y;
}

}  // namespace lullslew
