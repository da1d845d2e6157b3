#include "hailchi/commands.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "hailchi/error.h"
#include "hailchi/svg.h"
#include "json.hpp"

namespace hailchi {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr std::string_view kFTestConvention =
    "F = (S_F / dof_chi) / (S^d_G / dof_lognormal), upper-tail p-value";

std::string out_path(const RunConfig& config, const std::string& name) {
  return (fs::path(config.out_dir) / name).string();
}

void ensure_out_dir(const RunConfig& config) {
  std::error_code ec;
  fs::create_directories(config.out_dir, ec);
  if (ec || !fs::is_directory(config.out_dir)) {
    throw UsageError("output directory '" + config.out_dir + "' is not writable");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Storm id per event (1-based) from a clusters.json document.
std::vector<int> read_assignments(const std::string& path, std::size_t event_count) {
  try {
    const json j = json::parse(read_file(path));
    auto ids = j.at("assignments").get<std::vector<int>>();
    if (ids.size() != event_count) {
      throw DataError(path + ": has " + std::to_string(ids.size()) + " assignments for " +
                      std::to_string(event_count) + " events");
    }
    for (int id : ids) {
      if (id < 1) throw DataError(path + ": storm ids must be >= 1");
    }
    return ids;
  } catch (const json::exception& e) {
    throw DataError(path + ": " + e.what());
  }
}

}  // namespace

void RunConfig::validate() const {
  if (!(time_scale >= 0.0) || !std::isfinite(time_scale)) {
    throw UsageError("--time-scale must be a finite value >= 0");
  }
  if (!(jump_threshold > 1.0) || !std::isfinite(jump_threshold)) {
    throw UsageError("--jump-threshold must be greater than 1");
  }
  if (!std::isfinite(velocity.v1) || !std::isfinite(velocity.v2)) {
    throw UsageError("--velocity components must be finite");
  }
  for (double level : contour_levels) {
    if (!(level > 0.0)) throw UsageError("contour levels must be positive");
  }
}

Dataset load_inputs(const RunConfig& config) {
  if (config.inputs.empty()) throw UsageError("no --input given");
  Dataset merged;
  CsvOptions options;
  options.date = config.date;
  for (const std::string& path : config.inputs) {
    Dataset part = load_csv_file(path, options);
    merged.events.insert(merged.events.end(), part.events.begin(), part.events.end());
    for (const SkippedRow& row : part.skipped) merged.skipped.push_back(row);
    if (!merged.source.empty()) merged.source += ";";
    merged.source += path;
  }
  return merged;
}

ClusterSummary cmd_cluster(const RunConfig& config, std::ostream& log) {
  config.validate();
  const Dataset data = load_inputs(config);
  ensure_out_dir(config);

  const auto features = event_features(data.events, config.time_scale);
  const Dendrogram tree = single_linkage(features);
  ClusterSummary summary;
  summary.cut = cut_dendrogram(tree, config.jump_threshold, config.height_floor);
  summary.storm_sizes.assign(summary.cut.cluster_count, 0);
  std::vector<int> storm_ids(summary.cut.assignments.size());
  for (std::size_t i = 0; i < storm_ids.size(); ++i) {
    storm_ids[i] = static_cast<int>(summary.cut.assignments[i]) + 1;
    ++summary.storm_sizes[summary.cut.assignments[i]];
  }

  json doc;
  doc["inputs"] = config.inputs;
  doc["time_scale"] = config.time_scale;
  doc["jump_threshold"] = config.jump_threshold;
  doc["height_floor"] = config.height_floor;
  doc["jump_ratio"] = summary.cut.jump_ratio;
  doc["storm_count"] = summary.cut.cluster_count;
  doc["storm_sizes"] = summary.storm_sizes;
  doc["assignments"] = storm_ids;
  summary.path = out_path(config, "clusters.json");
  write_file_atomically(summary.path, doc.dump(2) + "\n");

  log << data.events.size() << " events, " << data.skipped.size() << " skipped rows, "
      << summary.cut.cluster_count << " storm(s)\n";
  for (std::size_t k = 0; k < summary.storm_sizes.size(); ++k) {
    log << "  storm " << (k + 1) << ": " << summary.storm_sizes[k] << " events\n";
  }
  return summary;
}

StormReport analyze_storm(int storm_id, std::span<const HailEvent> events,
                          const RunConfig& config) {
  StormReport report;
  report.storm_id = storm_id;
  report.event_count = static_cast<int>(events.size());
  report.metric = std::string(to_string(config.metric));

  std::optional<BinormalFit> fit;
  try {
    fit = fit_binormal(events);
  } catch (const DegenerateCovariance& e) {
    report.status = "degenerate-covariance";
    report.note = e.what();
    return report;
  }
  report.binormal = summarize(*fit);
  if (events.size() < 4) {
    report.status = "too-few-events";
    report.note = "need at least 4 events for the penalty comparison";
    return report;
  }

  const RadialSeries series = radial_series(events, *fit, config.metric);
  const ChiFit chi = fit_chi(series);
  report.chi = chi;
  if (config.fit_lognormal) {
    const LogNormalFit lognormal = fit_lognormal(series);
    report.lognormal = summarize(lognormal);
    const GoFReport gof = goodness_of_fit(series, chi, lognormal, config.f_test);
    GoFSummary g;
    g.f_statistic = gof.f_test.f_statistic;
    g.p_value = gof.f_test.p_value;
    g.dof_chi = gof.f_test.dof_chi;
    g.dof_lognormal = gof.f_test.dof_lognormal;
    g.convention = std::string(kFTestConvention) + ", dof = (n - " +
                   std::to_string(config.f_test.chi_dof_offset) + ", n - " +
                   std::to_string(config.f_test.lognormal_dof_offset) + ")";
    g.residuals_chi = gof.residuals_chi;
    g.residuals_lognormal = gof.residuals_lognormal;
    g.qq_chi = gof.qq_chi;
    g.qq_lognormal = gof.qq_lognormal;
    report.gof = std::move(g);
  }
  if (config.fit_euclidean) {
    report.lognormal_euclidean = summarize(fit_lognormal_euclidean(events, *fit));
  }
  return report;
}

FitSummary cmd_fit(const RunConfig& config, std::ostream& log) {
  config.validate();
  const Dataset data = load_inputs(config);
  ensure_out_dir(config);

  std::vector<int> storm_ids(data.events.size(), 1);
  if (!config.single_storm) {
    const std::string path =
        config.clusters_path.empty() ? out_path(config, "clusters.json") : config.clusters_path;
    if (!fs::exists(path)) {
      throw UsageError("no cluster assignment at " + path +
                       "; run `hailchi cluster` first or pass --single-storm");
    }
    storm_ids = read_assignments(path, data.events.size());
  }

  std::map<int, std::vector<HailEvent>> storms;
  for (std::size_t i = 0; i < data.events.size(); ++i) {
    storms[storm_ids[i]].push_back(data.events[i]);
  }

  FitSummary summary;
  for (const auto& [id, events] : storms) {
    StormReport report = analyze_storm(id, events, config);
    const std::string k = std::to_string(id);
    const std::string json_path = out_path(config, "storm" + k + ".json");
    save_report(report, json_path);
    summary.written.push_back(json_path);

    if (report.ok()) {
      log << "storm " << id << ": " << events.size() << " events, lambda = "
          << report.chi->lambda_hat << ", S_F = " << report.chi->sse;
      if (report.lognormal) log << ", S^d_G = " << report.lognormal->sse;
      if (report.lognormal_euclidean) log << ", S_G = " << report.lognormal_euclidean->sse;
      if (report.gof) log << ", p = " << report.gof->p_value;
      log << "\n";
    } else {
      log << "storm " << id << ": " << events.size() << " events, skipped (" << report.status
          << ")\n";
    }

    if (config.plots && report.ok() && report.lognormal && report.gof) {
      // Recompute the in-memory objects for plotting; the fit is deterministic.
      const BinormalFit fit = fit_binormal(events);
      const RadialSeries series = radial_series(events, fit, config.metric);
      const LogNormalFit lognormal{report.lognormal->mu_hat, report.lognormal->sigma_hat,
                                   report.lognormal->sse, report.lognormal->degenerate};
      GoFReport gof;
      gof.qq_chi = report.gof->qq_chi;
      gof.qq_lognormal = report.gof->qq_lognormal;
      const std::string title = "storm " + k + " (" + std::string(to_string(config.metric)) + ")";
      const std::vector<std::pair<std::string, std::string>> artifacts = {
          {"cdf" + k + ".svg", svg::cdf_plot(series, *report.chi, lognormal, title)},
          {"qq" + k + ".svg", svg::qq_plot(gof, title)},
          {"contours" + k + ".svg",
           svg::contour_plot(events, fit, config.contour_levels, "storm " + k)},
      };
      for (const auto& [name, contents] : artifacts) {
        const std::string path = out_path(config, name);
        write_file_atomically(path, contents);
        summary.written.push_back(path);
      }
    }
    summary.reports.push_back(std::move(report));
  }
  return summary;
}

std::string cmd_simulate(const RunConfig& config, std::ostream& log) {
  config.validate();
  if (config.count < 1) throw UsageError("--count must be at least 1");
  ensure_out_dir(config);
  Dataset data;
  data.events = sample_events(static_cast<std::size_t>(config.count), config.velocity, config.seed);
  data.source = "simulated";
  const std::string path = out_path(config, "simulated.csv");
  write_file_atomically(path, write_csv(data));
  log << "wrote " << data.events.size() << " events to " << path << "\n";
  return path;
}

std::vector<StormReport> cmd_report(const RunConfig& config, std::ostream& log) {
  std::vector<std::string> files;
  const std::vector<std::string> roots =
      config.inputs.empty() ? std::vector<std::string>{config.out_dir} : config.inputs;
  for (const std::string& root : roots) {
    if (fs::is_directory(root)) {
      std::vector<std::string> found;
      for (const auto& entry : fs::directory_iterator(root)) {
        const std::string name = entry.path().filename().string();
        if (entry.is_regular_file() && name.starts_with("storm") && name.ends_with(".json")) {
          found.push_back(entry.path().string());
        }
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else if (fs::exists(root)) {
      files.push_back(root);
    } else {
      throw DataError("no such file or directory: " + root);
    }
  }
  if (files.empty()) throw DataError("no storm reports found");

  std::vector<StormReport> reports;
  for (const std::string& file : files) reports.push_back(load_report(file));
  std::stable_sort(reports.begin(), reports.end(),
                   [](const StormReport& a, const StormReport& b) { return a.storm_id < b.storm_id; });

  ensure_out_dir(config);
  write_file_atomically(out_path(config, "summary.csv"), summary_csv(reports));
  log << summary_table(reports);
  return reports;
}

std::string cmd_fetch(const RunConfig& config, std::ostream& log) {
  if (config.swdi_start.empty() || config.swdi_end.empty()) {
    throw UsageError("fetch needs --start and --end dates (YYYY-MM-DD)");
  }
  std::string body;
  try {
    body = fetch_swdi(config.swdi_start, config.swdi_end, config.swdi_base);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  ensure_out_dir(config);
  const std::string path = out_path(config, "swdi.csv");
  write_file_atomically(path, body);
  log << "wrote " << body.size() << " bytes to " << path << "\n";
  return path;
}

}  // namespace hailchi
