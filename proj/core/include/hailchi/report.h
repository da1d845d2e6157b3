#ifndef HAILCHI_REPORT_H_
#define HAILCHI_REPORT_H_

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hailchi/fitting.h"

namespace hailchi {

struct BinormalSummary {
  Vec2 mean{};
  std::array<double, 4> cov{};        // row-major 2x2
  std::array<double, 2> semi_axes{};  // descending
  std::array<double, 4> axes{};       // rows are principal directions
  double total_weight = 0.0;
  friend bool operator==(const BinormalSummary&, const BinormalSummary&) = default;
};

struct LogNormalSummary {
  double mu_hat = 0.0;
  double sigma_hat = 0.0;
  double sse = 0.0;
  bool degenerate = false;
  friend bool operator==(const LogNormalSummary&, const LogNormalSummary&) = default;
};

struct GoFSummary {
  double f_statistic = 0.0;
  double p_value = 0.0;
  int dof_chi = 0;
  int dof_lognormal = 0;
  std::string convention;
  std::vector<double> residuals_chi;
  std::vector<double> residuals_lognormal;
  std::vector<QqPoint> qq_chi;
  std::vector<QqPoint> qq_lognormal;
  friend bool operator==(const GoFSummary&, const GoFSummary&) = default;
};

// Everything known about one storm after cmd_fit. Optional parts are absent
// when the storm was skipped (`status` explains why).
struct StormReport {
  int storm_id = 0;
  int event_count = 0;
  std::string status = "ok";  // "ok", "degenerate-covariance", "too-few-events"
  std::string note;
  std::string metric = "mahalanobis";
  std::optional<BinormalSummary> binormal;
  std::optional<ChiFit> chi;                       // S_F
  std::optional<LogNormalSummary> lognormal;       // S^d_G
  std::optional<LogNormalSummary> lognormal_euclidean;  // S_G
  std::optional<GoFSummary> gof;

  bool ok() const { return status == "ok"; }
  friend bool operator==(const StormReport&, const StormReport&) = default;
};

BinormalSummary summarize(const BinormalFit& fit);
LogNormalSummary summarize(const LogNormalFit& fit);

std::string to_json(const StormReport& report);    // pretty printed
StormReport storm_report_from_json(const std::string& text);  // throws DataError

void save_report(const StormReport& report, const std::string& path);
StormReport load_report(const std::string& path);

/// Penalty as printed in the summary table: one decimal from 10 upwards,
/// otherwise two significant digits (0.067, 0.045, 3.2, 23.7).
std::string format_penalty(double value);

/// Aligned text table: storm, events, S_F, S_G, S^d_G.
std::string summary_table(const std::vector<StormReport>& reports);
/// Same columns as CSV with shortest round-trip decimals.
std::string summary_csv(const std::vector<StormReport>& reports);

/// Writes through a temporary file and rename, so readers never see a
/// partially written file.
void write_file_atomically(const std::string& path, const std::string& contents);

}  // namespace hailchi

#endif  // HAILCHI_REPORT_H_
