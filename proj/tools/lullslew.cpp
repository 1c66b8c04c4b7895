// lullslew: command-line front end for the compound wind/solar model.

#include <CLI11.hpp>

#include <iostream>

#include "lullslew/report.hpp"

using namespace lullslew;

namespace {

void add_common(CLI::App* cmd, CommandOptions& opts, bool needs_fleet) {
  cmd->add_option("--dataset", opts.dataset, "Blocked dataset written by `ingest`")->required();
  cmd->add_option("--scenario", opts.scenarios, "Scenario YAML (repeatable)")->required();
  auto* fleet = cmd->add_option("--fleet", opts.fleet, "Fleet YAML");
  if (needs_fleet) fleet->required();
  cmd->add_option("--window-min", opts.overrides.slew_window_min, "Slew window, minutes");
  cmd->add_option("--lull-threshold", opts.overrides.lull_threshold_fraction,
                  "Lull threshold as a fraction of the annual wind average");
  cmd->add_option("--lull-min-hours", opts.overrides.lull_min_hours, "Minimum lull duration, hours");
  cmd->add_option("--bin-gw", opts.overrides.histogram_bin_gw, "Histogram bin width, GW");
  cmd->add_option("--out-dir", opts.out_dir, "Output directory")->capture_default_str();
  cmd->add_flag("--intervals", opts.intervals, "Also write the per-interval dispatch CSV");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wind lull and slew scenario simulator"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  IngestOptions ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Clean and block a raw 5-minute grid record");
  ingest_cmd->add_option("--input", ingest.input, "Delimiter-separated input file")->required();
  ingest_cmd->add_option("--mapping", ingest.mapping, "Column mapping YAML (default: Gridwatch)");
  ingest_cmd->add_option("--out", ingest.output, "Blocked dataset to write")->required();
  ingest_cmd->add_option("--year", ingest.year, "Base year (default: year of the first record)");
  ingest_cmd->add_option("--max-gap", ingest.policy.max_interpolated_gap,
                         "Longest gap (5-minute steps) to interpolate")
      ->capture_default_str();
  ingest_cmd->add_option("--spike-ratio", ingest.policy.spike_ratio,
                         "Reject single samples this many times above both neighbours")
      ->capture_default_str();

  CommandOptions run, lulls, slews, fleet, report;
  add_common(app.add_subcommand("run", "Dispatch, curtailment and histogram per scenario"), run, false);
  add_common(app.add_subcommand("lulls", "Wind lull census and energy deficits"), lulls, false);
  add_common(app.add_subcommand("slews", "Largest effective slews and the MacKay comparison"), slews,
             false);
  add_common(app.add_subcommand("fleet-check", "Ramp, capacity, storage and emissions checks"), fleet,
             true);
  add_common(app.add_subcommand("report", "Everything above plus a run manifest"), report, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const auto* cmd = app.get_subcommands().front();
    const std::string name = cmd->get_name();
    if (name == "ingest") {
      cmd_ingest(ingest, std::cout);
    } else if (name == "run") {
      cmd_run(run, std::cout);
    } else if (name == "lulls") {
      cmd_lulls(lulls, std::cout);
    } else if (name == "slews") {
      cmd_slews(slews, std::cout);
    } else if (name == "fleet-check") {
      cmd_fleet_check(fleet, std::cout);
    } else if (name == "report") {
      for (const auto& path : cmd_report(report, std::cout)) std::cout << "wrote " << path.string() << '\n';
    }
  } catch (const Error& e) {
    std::cerr << "lullslew: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "lullslew: " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}
