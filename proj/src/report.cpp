#include "lullslew/report.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "lullslew/dispatch.hpp"
#include "lullslew/power.hpp"

namespace lullslew {
namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

// Summaries carry four decimals; CSV exports carry full precision.
double round4(double v) { return std::round(v * 1e4) / 1e4; }

std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string to_text(const json& j) { return j.dump(2) + "\n"; }

json analysis_json(const AnalysisParameters& p) {
  return json{{"slew_window_min", p.slew_window_min},
              {"lull_threshold_fraction", p.lull_threshold_fraction},
              {"lull_min_hours", p.lull_min_hours},
              {"histogram_bin_gw", p.histogram_bin_gw}};
}

json slew_event_json(const std::optional<SlewEvent>& e) {
  if (!e) return nullptr;
  return json{{"time", format_iso8601(e->time)},
              {"week", e->week()},
              {"block", e->block()},
              {"wind_slew_gw_per_h", round4(e->wind_slew)},
              {"solar_slew_gw_per_h", round4(e->solar_slew)},
              {"combined_slew_gw_per_h", round4(e->combined_slew)},
              {"w_plus_s_gw", round4(e->level)},
              {"effective", e->effective}};
}

json lull_json(const LullEvent& e) {
  return json{{"start", format_iso8601(e.start)},
              {"end", format_iso8601(e.end)},
              {"duration_h", round4(e.duration_h)},
              {"min_w_plus_s_gw", round4(e.min_level)},
              {"min_time", format_iso8601(e.min_time)},
              {"deficit_gwh", round4(e.deficit_gwh)}};
}

// Severity order: deficit descending, earlier start first on ties.
std::vector<LullEvent> by_severity(std::vector<LullEvent> lulls) {
  std::stable_sort(lulls.begin(), lulls.end(), [](const LullEvent& a, const LullEvent& b) {
    return a.deficit_gwh > b.deficit_gwh;
  });
  return lulls;
}

std::vector<LullEvent> scenario_lulls(const ScenarioAnalysis& a) {
  return detect_lulls(a.year, a.scenario.analysis.lull_threshold_fraction,
                      a.scenario.analysis.lull_min_hours);
}

std::size_t sunniest_block(const ScaledYear& year) {
  std::size_t best = 0;
  double best_mean = -1.0;
  for (std::size_t b = 0; b < kBlocksPerYear; ++b) {
    const double m = mean(ScaledYear::block(year.solar(), b));
    if (m > best_mean) {
      best_mean = m;
      best = b;
    }
  }
  return best;
}

template <typename Writer>
std::string render(Writer&& writer) {
  std::ostringstream out;
  writer(out);
  return out.str();
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::configuration: return kExitUsage;
    case ErrorKind::infeasible_scenario: return kExitInfeasible;
    default: return kExitData;
  }
}

fs::path resolve_data_path(const fs::path& path) {
  if (path.is_absolute() || fs::exists(path)) return path;
  if (const char* dir = std::getenv(kDataDirEnv); dir != nullptr && *dir != '\0') {
    const fs::path candidate = fs::path(dir) / path;
    if (fs::exists(candidate)) return candidate;
  }
  return path;
}

std::string sha256_hex(const fs::path& path) {
  const std::string content = read_file(path);
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), content.data(), content.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &length) != 1) {
    throw IoError("sha256 failed for " + path.string());
  }
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < length; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

AnalysisParameters AnalysisOverrides::apply(AnalysisParameters p) const {
  if (slew_window_min) p.slew_window_min = *slew_window_min;
  if (lull_threshold_fraction) p.lull_threshold_fraction = *lull_threshold_fraction;
  if (lull_min_hours) p.lull_min_hours = *lull_min_hours;
  if (histogram_bin_gw) p.histogram_bin_gw = *histogram_bin_gw;
  p.validate();
  return p;
}

void OutputSet::add(std::string name, std::string content) {
  if (files_.contains(name)) throw ConfigError("two outputs share the file name " + name);
  files_.emplace(std::move(name), std::move(content));
}

void OutputSet::merge(OutputSet other) {
  for (auto& [name, content] : other.files_) add(name, std::move(content));
}

std::vector<fs::path> OutputSet::write_all(const fs::path& dir) const {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  std::vector<fs::path> written;
  for (const auto& [name, content] : files_) {
    const fs::path path = dir / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
    if (!out) throw IoError("cannot write " + path.string());
    written.push_back(path);
  }
  return written;
}

std::string scenario_slug(const std::string& name) {
  std::string slug;
  for (char c : name) {
    const auto u = static_cast<unsigned char>(c);
    slug.push_back(std::isalnum(u) ? static_cast<char>(std::tolower(u)) : '-');
  }
  return slug.empty() ? "scenario" : slug;
}

IngestSummary cmd_ingest(const IngestOptions& options, std::ostream& console) {
  const fs::path input = resolve_data_path(options.input);
  std::ifstream in(input);
  if (!in) throw IoError("cannot open input " + input.string());
  const ColumnMapping mapping =
      options.mapping ? load_column_mapping(*options.mapping) : ColumnMapping::gridwatch();

  ParseResult parsed = parse_records(in, mapping);
  if (parsed.records.empty()) throw EmptyInputError("no usable records in " + input.string());

  IngestSummary summary;
  summary.records = parsed.records.size();
  summary.rejects = parsed.rejects.size();

  std::map<Channel, SampleSeries> series;
  for (const auto& [channel, _] : mapping.channels) {
    series.emplace(channel, clean_series(parsed.records, channel, options.policy));
    summary.flagged[channel] = series.at(channel).flagged_count();
  }
  const Timestamp first =
      std::min_element(parsed.records.begin(), parsed.records.end(),
                       [](const RawRecord& a, const RawRecord& b) { return a.time < b.time; })
          ->time;
  const Timestamp year_start = start_of_year(options.year.value_or(year_of(first)));
  summary.blocks = to_year_blocks(series, year_start);

  const std::string dataset = render([&](std::ostream& out) { write_blocked_dataset(out, summary.blocks); });
  if (!options.output.parent_path().empty()) fs::create_directories(options.output.parent_path());
  std::ofstream out(options.output, std::ios::binary | std::ios::trunc);
  out << dataset;
  if (!out) throw IoError("cannot write " + options.output.string());

  console << "records " << summary.records << ", rejected rows " << summary.rejects << '\n';
  for (const auto& r : parsed.rejects) {
    console << "  line " << r.line << ": " << r.reason << '\n';
    if (&r - parsed.rejects.data() >= 9) {
      console << "  ...\n";
      break;
    }
  }
  console << "year start " << format_iso8601(year_start) << '\n';
  for (const auto& [channel, b] : summary.blocks.channels) {
    console << "base average " << channel_name(channel) << ": " << fixed4(b.base_average())
            << " GW (repaired samples " << summary.flagged[channel] << ")\n";
  }
  console << "wrote " << options.output.string() << '\n';
  return summary;
}

std::vector<ScenarioAnalysis> analyse(const YearBlocks& blocks, const CommandOptions& options) {
  if (options.scenarios.empty()) throw ConfigError("at least one --scenario is required");
  std::vector<ScenarioAnalysis> runs;
  std::set<std::string> slugs;
  for (const auto& path : options.scenarios) {
    Scenario s = load_scenario(resolve_data_path(path));
    s.analysis = options.overrides.apply(s.analysis);
    if (!slugs.insert(scenario_slug(s.name)).second) {
      throw ConfigError("duplicate scenario name '" + s.name + "'");
    }
    ScaledYear year = apply_scenario(blocks, s, options.exec);
    DispatchResult dispatch = run_dispatch(year, options.exec);
    runs.push_back({path, std::move(s), std::move(year), std::move(dispatch)});
  }
  return runs;
}

double required_slew(const ScenarioAnalysis& a) {
  const double planning = mackay_slew(a.year.wind_average()) + scaled_solar_slew(a.year.solar_average());
  const auto model = max_effective_downslew(a.year, a.scenario.analysis.slew_window_min);
  return std::max(planning, model ? model->downslew() : 0.0);
}

OutputSet run_outputs(const std::vector<ScenarioAnalysis>& runs, const CommandOptions& options,
                      std::ostream& console) {
  OutputSet out;
  console << "scenario        hdrm_gw   wind_gw  solar_gw  dispatch_gw  curtail_gw  ratio_pct\n";
  for (const auto& a : runs) {
    const std::string slug = scenario_slug(a.scenario.name);
    const auto& d = a.dispatch;
    const auto hist = histogram(a.year.combined(), a.scenario.analysis.histogram_bin_gw);

    json weekly = json::array();
    for (std::size_t w = 0; w < d.weekly.size(); ++w) {
      weekly.push_back({{"week", w + 1},
                        {"w_plus_s_gw", round4(d.weekly[w].offered)},
                        {"accepted_gw", round4(d.weekly[w].accepted)},
                        {"curtailed_gw", round4(d.weekly[w].curtailed)},
                        {"dispatchable_gw", round4(d.weekly[w].dispatchable)}});
    }
    json summary{
        {"scenario", a.scenario.name},
        {"inputs",
         {{"demand_gw", a.scenario.demand_gw},
          {"nuclear_gw", a.scenario.nuclear_gw},
          {"hdrm_gw", round4(a.year.hdrm())},
          {"wind_multiplier", round4(a.year.wind_multiplier())},
          {"solar_multiplier", round4(a.year.solar_multiplier())},
          {"wind_average_gw", round4(a.year.wind_average())},
          {"solar_average_gw", round4(a.year.solar_average())}}},
        {"analysis", analysis_json(a.scenario.analysis)},
        {"annual",
         {{"w_plus_s_gw", round4(d.annual.offered)},
          {"accepted_gw", round4(d.annual.accepted)},
          {"curtailed_gw", round4(d.annual.curtailed)},
          {"dispatchable_gw", round4(d.annual.dispatchable)},
          {"dispatchable_ratio", round4(d.dispatchable_ratio)}}},
        {"histogram_file", slug + ".histogram.csv"},
        {"weekly", weekly}};
    out.add(slug + ".summary.json", to_text(summary));
    out.add(slug + ".histogram.csv", render([&](std::ostream& o) { write_histogram_csv(o, hist); }));
    if (options.intervals) {
      out.add(slug + ".intervals.csv",
              render([&](std::ostream& o) { write_intervals_csv(o, a.year, d); }));
    }

    char line[160];
    std::snprintf(line, sizeof line, "%-14s %8.4f %9.4f %9.4f %12.4f %11.4f %10.4f\n",
                  a.scenario.name.c_str(), a.year.hdrm(), a.year.wind_average(),
                  a.year.solar_average(), d.annual.dispatchable, d.annual.curtailed,
                  100.0 * d.dispatchable_ratio);
    console << line;
  }
  return out;
}

OutputSet lull_outputs(const std::vector<ScenarioAnalysis>& runs, std::ostream& console) {
  OutputSet out;
  for (const auto& a : runs) {
    const std::string slug = scenario_slug(a.scenario.name);
    const auto lulls = scenario_lulls(a);
    const auto severe = by_severity(lulls);

    double total_hours = 0.0;
    for (const auto& e : lulls) total_hours += e.duration_h;
    json by_time = json::array();
    for (const auto& e : lulls) by_time.push_back(lull_json(e));
    json by_sev = json::array();
    for (const auto& e : severe) by_sev.push_back(lull_json(e));

    json doc{{"scenario", a.scenario.name},
             {"hdrm_gw", round4(a.year.hdrm())},
             {"wind_average_gw", round4(a.year.wind_average())},
             {"threshold_gw", round4(a.scenario.analysis.lull_threshold_fraction * a.year.wind_average())},
             {"analysis", analysis_json(a.scenario.analysis)},
             {"census", {{"events", lulls.size()}, {"total_days", round4(total_hours / 24.0)}}},
             {"by_severity", by_sev},
             {"by_time", by_time}};
    out.add(slug + ".lulls.json", to_text(doc));
    out.add(slug + ".lulls.csv", render([&](std::ostream& o) { write_lulls_csv(o, lulls); }));

    // Plot windows for the three most severe events, padded by a day.
    const std::size_t day = 24 * kStepsPerHour;
    for (std::size_t k = 0; k < std::min<std::size_t>(3, severe.size()); ++k) {
      const auto& e = severe[k];
      const std::size_t first = e.first > day ? e.first - day : 0;
      const std::size_t last = std::min(e.last + day, kSamplesPerYear);
      out.add(slug + ".lull-" + std::to_string(k + 1) + ".csv",
              render([&](std::ostream& o) { write_levels_csv(o, a.year, first, last); }));
    }

    console << "== " << a.scenario.name << ": " << lulls.size() << " lulls, "
            << fixed4(total_hours / 24.0) << " days (wind <= "
            << fixed4(a.scenario.analysis.lull_threshold_fraction * a.year.wind_average())
            << " GW for >= " << fixed4(a.scenario.analysis.lull_min_hours) << " h)\n";
    const auto print = [&](const LullEvent& e) {
      console << "  " << format_iso8601(e.start) << " .. " << format_iso8601(e.end) << "  "
              << fixed4(e.duration_h) << " h  min w+s " << fixed4(e.min_level) << " GW at "
              << format_iso8601(e.min_time) << "  deficit " << fixed4(e.deficit_gwh) << " GWh\n";
    };
    console << "by severity:\n";
    for (const auto& e : severe) print(e);
    console << "by time:\n";
    for (const auto& e : lulls) print(e);
  }
  return out;
}

OutputSet slew_outputs(const std::vector<ScenarioAnalysis>& runs, std::ostream& console) {
  OutputSet out;
  json comparison = json::array();
  std::string comparison_csv = "scenario,model_max_wind_slew_gw_per_h,mackay_wind_slew_gw_per_h\n";
  for (const auto& a : runs) {
    const std::string slug = scenario_slug(a.scenario.name);
    const int window = a.scenario.analysis.slew_window_min;
    const auto slews = combined_slew(a.year, window);
    const auto effective = max_effective_downslew(a.year, window);
    const auto wind_peak = peak_wind_slew(a.year, window);
    const std::size_t solar_block = sunniest_block(a.year);
    const auto solar_peak = peak_solar_slew(a.year, solar_block, window);
    const double mackay = mackay_slew(a.year.wind_average());
    const double solar_rule = scaled_solar_slew(a.year.solar_average());
    const double model_wind = effective ? std::fabs(effective->wind_slew) : 0.0;

    std::optional<std::size_t> crossing;
    if (effective) {
      const std::size_t block_start = effective->block() * kSamplesPerBlock;
      crossing = next_hdrm_crossing(a.year, block_start);
    }

    json doc{{"scenario", a.scenario.name},
             {"hdrm_gw", round4(a.year.hdrm())},
             {"analysis", analysis_json(a.scenario.analysis)},
             {"max_effective_downslew", slew_event_json(effective)},
             {"downslew_gw_per_h", effective ? json(round4(effective->downslew())) : json(nullptr)},
             {"first_hdrm_crossing_in_event_week",
              crossing ? json(format_iso8601(a.year.time_at(*crossing))) : json(nullptr)},
             {"max_wind_slew_any_level", slew_event_json(wind_peak)},
             {"sunniest_week", solar_block + 1},
             {"max_solar_slew_in_sunniest_week", slew_event_json(solar_peak)},
             {"planning",
              {{"mackay_wind_slew_gw_per_h", round4(mackay)},
               {"ratioed_solar_slew_gw_per_h", round4(solar_rule)},
               {"coincident_w_plus_s_slew_gw_per_h", round4(mackay + solar_rule)}}}};
    out.add(slug + ".slews.json", to_text(doc));
    if (effective) {
      const std::size_t first = effective->block() * kSamplesPerBlock;
      out.add(slug + ".slew-event-week.csv", render([&](std::ostream& o) {
                write_slew_window_csv(o, a.year, slews, first, first + kSamplesPerBlock);
              }));
    }
    {
      const std::size_t first = solar_block * kSamplesPerBlock;
      out.add(slug + ".solar-week.csv", render([&](std::ostream& o) {
                write_slew_window_csv(o, a.year, slews, first, first + kSamplesPerBlock);
              }));
    }

    comparison.push_back({{"scenario", a.scenario.name},
                          {"model_max_wind_slew_gw_per_h", round4(model_wind)},
                          {"mackay_wind_slew_gw_per_h", round4(mackay)}});
    comparison_csv += a.scenario.name + "," + fixed4(model_wind) + "," + fixed4(mackay) + "\n";

    console << "== " << a.scenario.name << " (window " << window << " min)\n";
    if (effective) {
      console << "  max effective down-slew " << fixed4(effective->downslew()) << " GW/h at "
              << format_iso8601(effective->time) << " (week " << effective->week() << "): wind "
              << fixed4(effective->wind_slew) << ", solar " << fixed4(effective->solar_slew)
              << ", w+s level " << fixed4(effective->level) << " GW\n";
    } else {
      console << "  no effective down-slew\n";
    }
    if (solar_peak) {
      console << "  max solar slew in week " << solar_block + 1 << ": "
              << fixed4(solar_peak->solar_slew) << " GW/h at " << format_iso8601(solar_peak->time)
              << '\n';
    }
    console << "  MacKay wind slew " << fixed4(mackay) << " GW/h, ratioed solar slew "
            << fixed4(solar_rule) << " GW/h\n";
  }
  if (runs.size() > 1) {
    out.add("mackay-comparison.csv", comparison_csv);
    out.add("mackay-comparison.json", to_text(comparison));
    console << "scenario        model_wind_slew  mackay_wind_slew\n";
    for (const auto& row : comparison) {
      char line[128];
      std::snprintf(line, sizeof line, "%-14s %16.4f %17.4f\n",
                    row["scenario"].get<std::string>().c_str(),
                    row["model_max_wind_slew_gw_per_h"].get<double>(),
                    row["mackay_wind_slew_gw_per_h"].get<double>());
      console << line;
    }
  }
  return out;
}

OutputSet fleet_outputs(const std::vector<ScenarioAnalysis>& runs, const Fleet& fleet,
                        std::ostream& console) {
  OutputSet out;
  for (const auto& a : runs) {
    const std::string slug = scenario_slug(a.scenario.name);
    const double slew_need = required_slew(a);
    const auto report = check_adequacy(fleet.units, slew_need, a.year.hdrm());
    const double emissions =
        annual_emissions(a.dispatch, fleet.emissions.efficiency, fleet.emissions.tco2_per_mwh_thermal);

    const auto lulls = by_severity(scenario_lulls(a));
    const double storage_gwh = fleet.storage_energy_gwh();
    json storage{{"energy_gwh", round4(storage_gwh)}, {"worst_lull", nullptr}};
    std::string storage_text = "storage: none in fleet or no lull detected\n";
    if (!lulls.empty()) {
      const auto& worst = lulls.front();
      const auto profile = deficit_profile(a.year, worst.first, worst.last);
      const auto hours = storage_exhaustion(storage_gwh, profile);
      const double cost = storage_cost(worst.deficit_gwh, fleet.storage_cost_per_kwh);
      storage["worst_lull"] = lull_json(worst);
      storage["exhausted_after_h"] = hours ? json(round4(*hours)) : json(nullptr);
      storage["cost_to_cover_worst_lull_usd"] = round4(cost);
      storage["cost_per_kwh_usd"] = fleet.storage_cost_per_kwh;
      storage_text = "storage " + fixed4(storage_gwh) + " GWh vs worst lull (" +
                     format_iso8601(worst.start) + ", deficit " + fixed4(worst.deficit_gwh) +
                     " GWh): " + (hours ? "exhausted after " + fixed4(*hours) + " h" : "not exhausted") +
                     "\nstorage sized to the whole deficit would cost $" + fixed4(cost / 1e9) + " Bn\n";
    }

    json units = json::array();
    for (const auto& u : fleet.units) {
      units.push_back({{"name", u.name},
                       {"technology", std::string(technology_name(u.technology))},
                       {"capacity_gw", u.capacity_gw},
                       {"ramp_gw_per_h_per_gw", u.is_storage() ? json("instantaneous") : json(u.ramp_rate)},
                       {"time_to_full_min", u.time_to_full_min},
                       {"efficiency_full", u.efficiency_full ? json(*u.efficiency_full) : json(nullptr)},
                       {"efficiency_40pct", u.efficiency_40pct ? json(*u.efficiency_40pct) : json(nullptr)},
                       {"energy_gwh", u.is_storage() ? json(u.energy_gwh) : json(nullptr)}});
    }
    const auto check = [](const CheckOutcome& c) {
      return json{{"requirement", round4(c.requirement)},
                  {"capability", round4(c.capability)},
                  {"margin", round4(c.margin)},
                  {"pass", c.pass}};
    };
    json doc{{"scenario", a.scenario.name},
             {"hdrm_gw", round4(a.year.hdrm())},
             {"fleet", units},
             {"ramp_gw_per_h", round4(report.ramp.ramp_gw_per_h)},
             {"instantaneous_gw", round4(report.ramp.instantaneous_gw)},
             {"firm_capacity_gw", round4(report.firm_capacity_gw)},
             {"slew_check_gw_per_h", check(report.slew)},
             {"lull_check_gw", check(report.lull)},
             {"pass", report.pass()},
             {"emissions",
              {{"efficiency", fleet.emissions.efficiency},
               {"tco2_per_mwh_thermal", fleet.emissions.tco2_per_mwh_thermal},
               {"annual_dispatchable_gw", round4(a.dispatch.annual.dispatchable)},
               {"mtco2_per_year", round4(emissions)}}},
             {"storage", storage}};

    std::ostringstream text;
    text << "fleet check: " << a.scenario.name << '\n'
         << "slew: need " << fixed4(report.slew.requirement) << " GW/h, have "
         << fixed4(report.slew.capability) << " (ramp " << fixed4(report.ramp.ramp_gw_per_h)
         << " GW/h + storage " << fixed4(report.ramp.instantaneous_gw) << " GW), margin "
         << fixed4(report.slew.margin) << (report.slew.pass ? "  PASS\n" : "  FAIL\n")
         << "lull: need " << fixed4(report.lull.requirement) << " GW firm, have "
         << fixed4(report.lull.capability) << ", margin " << fixed4(report.lull.margin)
         << (report.lull.pass ? "  PASS\n" : "  FAIL\n")
         << "emissions: " << fixed4(emissions) << " MtCO2/yr from "
         << fixed4(a.dispatch.annual.dispatchable) << " GW dispatchable\n"
         << storage_text;
    out.add(slug + ".adequacy.json", to_text(doc));
    out.add(slug + ".adequacy.txt", text.str());
    console << text.str();
  }
  return out;
}

std::string manifest_json(const CommandOptions& options, const std::vector<ScenarioAnalysis>& runs,
                          const OutputSet& outputs) {
  json scenarios = json::array();
  for (const auto& a : runs) {
    scenarios.push_back({{"path", a.source.generic_string()},
                         {"sha256", sha256_hex(resolve_data_path(a.source))},
                         {"name", a.scenario.name},
                         {"analysis", analysis_json(a.scenario.analysis)}});
  }
  json fleet = nullptr;
  if (options.fleet) {
    fleet = {{"path", options.fleet->generic_string()},
             {"sha256", sha256_hex(resolve_data_path(*options.fleet))}};
  }
  json files = json::array();
  for (const auto& [name, _] : outputs.files()) files.push_back(name);
  files.push_back("manifest.json");
  const json doc{{"tool", "lullslew"},
                 {"version", kToolVersion},
                 {"dataset",
                  {{"path", options.dataset.generic_string()},
                   {"sha256", sha256_hex(resolve_data_path(options.dataset))}}},
                 {"scenarios", scenarios},
                 {"fleet", fleet},
                 {"intervals", options.intervals},
                 {"outputs", files}};
  return to_text(doc);
}

namespace {

YearBlocks load_dataset(const CommandOptions& options) {
  if (options.dataset.empty()) throw ConfigError("--dataset is required");
  return load_blocked_dataset(resolve_data_path(options.dataset));
}

Fleet load_fleet_option(const CommandOptions& options) {
  if (!options.fleet) throw ConfigError("--fleet is required");
  return load_fleet(resolve_data_path(*options.fleet));
}

}  // namespace

std::vector<fs::path> cmd_run(const CommandOptions& options, std::ostream& console) {
  const auto runs = analyse(load_dataset(options), options);
  return run_outputs(runs, options, console).write_all(options.out_dir);
}

std::vector<fs::path> cmd_lulls(const CommandOptions& options, std::ostream& console) {
  const auto runs = analyse(load_dataset(options), options);
  return lull_outputs(runs, console).write_all(options.out_dir);
}

std::vector<fs::path> cmd_slews(const CommandOptions& options, std::ostream& console) {
  const auto runs = analyse(load_dataset(options), options);
  return slew_outputs(runs, console).write_all(options.out_dir);
}

std::vector<fs::path> cmd_fleet_check(const CommandOptions& options, std::ostream& console) {
  const Fleet fleet = load_fleet_option(options);
  const auto runs = analyse(load_dataset(options), options);
  return fleet_outputs(runs, fleet, console).write_all(options.out_dir);
}

std::vector<fs::path> cmd_report(const CommandOptions& options, std::ostream& console) {
  const std::optional<Fleet> fleet =
      options.fleet ? std::optional<Fleet>(load_fleet_option(options)) : std::nullopt;
  const auto runs = analyse(load_dataset(options), options);
  OutputSet outputs = run_outputs(runs, options, console);
  outputs.merge(lull_outputs(runs, console));
  outputs.merge(slew_outputs(runs, console));
  if (fleet) outputs.merge(fleet_outputs(runs, *fleet, console));
  outputs.add("manifest.json", manifest_json(options, runs, outputs));
  return outputs.write_all(options.out_dir);
}

}  // namespace lullslew
