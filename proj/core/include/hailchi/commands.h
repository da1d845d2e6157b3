#ifndef HAILCHI_COMMANDS_H_
#define HAILCHI_COMMANDS_H_

// The `hailchi` subcommands as library calls. The CLI front end only parses
// flags into a RunConfig and maps exceptions to exit codes.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hailchi/clustering.h"
#include "hailchi/fitting.h"
#include "hailchi/ingest.h"
#include "hailchi/report.h"
#include "hailchi/storm_model.h"

namespace hailchi {

// Invalid command-line configuration.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitData = 3,
  kExitNumeric = 4,
};

struct RunConfig {
  std::vector<std::string> inputs;
  std::string out_dir = ".";
  double time_scale = 0.0;
  double jump_threshold = 3.0;
  double height_floor = 1e-12;
  std::uint64_t seed = 1;
  long long count = 1000;
  Velocity2 velocity{};
  std::optional<std::chrono::sys_days> date;  // for HH:MM:SS inputs
  std::string swdi_base = std::string(kDefaultSwdiBase);
  std::string swdi_start, swdi_end;

  // cmd_fit
  RadialMetric metric = RadialMetric::kMahalanobis;
  bool single_storm = false;
  std::string clusters_path;  // default <out_dir>/clusters.json
  bool fit_lognormal = true;
  bool fit_euclidean = true;
  bool plots = true;
  std::vector<double> contour_levels = {0.5, 1.0, 1.5, 2.0};
  FTestOptions f_test;

  void validate() const;  // throws UsageError
};

struct ClusterSummary {
  ClusterCut cut;
  std::vector<int> storm_sizes;  // indexed by storm id - 1
  std::string path;
};

struct FitSummary {
  std::vector<StormReport> reports;
  std::vector<std::string> written;
};

/// Loads every input CSV, concatenated in the order given.
Dataset load_inputs(const RunConfig& config);

/// Single-linkage clustering of all input events. Writes clusters.json
/// (event index -> 1-based storm id) and prints per-storm counts.
ClusterSummary cmd_cluster(const RunConfig& config, std::ostream& log);

/// Fits every storm. Storms come from `clusters_path`, <out>/clusters.json,
/// or --single-storm. Writes storm<k>.json and, with plots, cdf<k>.svg,
/// qq<k>.svg and contours<k>.svg.
FitSummary cmd_fit(const RunConfig& config, std::ostream& log);

/// Analyses one storm's events; never throws for degenerate storms.
StormReport analyze_storm(int storm_id, std::span<const HailEvent> events,
                          const RunConfig& config);

/// Synthetic events from the traveling storm model, written as CSV to
/// <out>/simulated.csv. Returns the path.
std::string cmd_simulate(const RunConfig& config, std::ostream& log);

/// Reads storm reports (files, or directories scanned for storm*.json),
/// prints the summary table and writes <out>/summary.csv.
std::vector<StormReport> cmd_report(const RunConfig& config, std::ostream& log);

/// Downloads raw SWDI CSV for [swdi_start, swdi_end] into <out>/swdi.csv.
std::string cmd_fetch(const RunConfig& config, std::ostream& log);

}  // namespace hailchi

#endif  // HAILCHI_COMMANDS_H_
