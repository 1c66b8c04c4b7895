#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lullslew/error.hpp"
#include "lullslew/events.hpp"
#include "lullslew/fleet.hpp"
#include "lullslew/ingest.hpp"
#include "lullslew/scenario.hpp"

namespace lullslew {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kDataDirEnv = "LULLSLEW_DATA_DIR";

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitInfeasible = 3,
};

int exit_code_for(ErrorKind kind) noexcept;

/// Relative paths that do not exist are retried under $LULLSLEW_DATA_DIR.
std::filesystem::path resolve_data_path(const std::filesystem::path& path);

std::string sha256_hex(const std::filesystem::path& path);

// CLI flags that override the analysis parameters carried by scenario files.
struct AnalysisOverrides {
  std::optional<int> slew_window_min;
  std::optional<double> lull_threshold_fraction;
  std::optional<double> lull_min_hours;
  std::optional<double> histogram_bin_gw;

  AnalysisParameters apply(AnalysisParameters p) const;
};

// Files produced by a command, held in memory until everything succeeded.
class OutputSet {
public:
  void add(std::string name, std::string content);
  void merge(OutputSet other);
  const std::map<std::string, std::string>& files() const noexcept { return files_; }
  std::vector<std::filesystem::path> write_all(const std::filesystem::path& dir) const;

private:
  std::map<std::string, std::string> files_;
};

struct IngestOptions {
  std::filesystem::path input;
  std::optional<std::filesystem::path> mapping;  // Gridwatch layout when absent
  std::filesystem::path output;
  std::optional<int> year;  // defaults to the year of the first record
  CleaningPolicy policy;
};

struct IngestSummary {
  YearBlocks blocks;
  std::size_t records = 0;
  std::size_t rejects = 0;
  std::map<Channel, std::size_t> flagged;
};

/// Parse, clean and block a raw file, then write the blocked dataset.
IngestSummary cmd_ingest(const IngestOptions& options, std::ostream& console);

struct CommandOptions {
  std::filesystem::path dataset;
  std::vector<std::filesystem::path> scenarios;
  std::optional<std::filesystem::path> fleet;
  AnalysisOverrides overrides;
  std::filesystem::path out_dir = ".";
  bool intervals = false;
  Execution exec = Execution::parallel;
};

// Everything one scenario needs, computed once.
struct ScenarioAnalysis {
  std::filesystem::path source;
  Scenario scenario;  // overrides applied
  ScaledYear year;
  DispatchResult dispatch;
};

std::vector<ScenarioAnalysis> analyse(const YearBlocks& blocks, const CommandOptions& options);

/// Slew requirement a fleet must meet: the larger of the planning rule
/// (MacKay wind plus ratioed solar, assumed coincident) and the model's
/// largest effective down-slew.
double required_slew(const ScenarioAnalysis& analysis);

OutputSet run_outputs(const std::vector<ScenarioAnalysis>& runs, const CommandOptions& options,
                      std::ostream& console);
OutputSet lull_outputs(const std::vector<ScenarioAnalysis>& runs, std::ostream& console);
OutputSet slew_outputs(const std::vector<ScenarioAnalysis>& runs, std::ostream& console);
OutputSet fleet_outputs(const std::vector<ScenarioAnalysis>& runs, const Fleet& fleet,
                        std::ostream& console);
std::string manifest_json(const CommandOptions& options,
                          const std::vector<ScenarioAnalysis>& runs, const OutputSet& outputs);

// Subcommands. Each loads its inputs, computes everything, then writes.
std::vector<std::filesystem::path> cmd_run(const CommandOptions& options, std::ostream& console);
std::vector<std::filesystem::path> cmd_lulls(const CommandOptions& options, std::ostream& console);
std::vector<std::filesystem::path> cmd_slews(const CommandOptions& options, std::ostream& console);
std::vector<std::filesystem::path> cmd_fleet_check(const CommandOptions& options,
                                                   std::ostream& console);
std::vector<std::filesystem::path> cmd_report(const CommandOptions& options, std::ostream& console);

/// File-name stem for a scenario name.
std::string scenario_slug(const std::string& name);

}  // namespace lullslew
