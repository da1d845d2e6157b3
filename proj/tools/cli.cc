#include "cli.h"

#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "hailchi/commands.h"
#include "hailchi/error.h"

namespace hailchi {
namespace {

Velocity2 parse_velocity(const std::string& text) {
  std::istringstream in(text);
  Velocity2 v{};
  char comma = 0;
  if (!(in >> v.v1 >> comma >> v.v2) || comma != ',' || !(in >> std::ws).eof()) {
    throw UsageError("--velocity expects vx,vy (got '" + text + "')");
  }
  return v;
}

struct Flags {
  RunConfig config;
  std::string velocity;
  std::string date;
  std::string metric = "mahalanobis";
  bool no_plots = false;
  bool no_euclidean = false;
};

void add_io(CLI::App* cmd, Flags& f, bool input_required) {
  auto* input = cmd->add_option("-i,--input", f.config.inputs, "input file(s)");
  if (input_required) input->required();
  cmd->add_option("-o,--out", f.config.out_dir, "output directory")->capture_default_str();
}

void add_date(CLI::App* cmd, Flags& f) {
  cmd->add_option("--date", f.date, "date for HH:MM:SS times (YYYY-MM-DD)");
}

void finish(Flags& f) {
  if (!f.velocity.empty()) f.config.velocity = parse_velocity(f.velocity);
  if (!f.date.empty()) {
    f.config.date = parse_date(f.date);
    if (!f.config.date) throw UsageError("--date expects YYYY-MM-DD (got '" + f.date + "')");
  }
  try {
    f.config.metric = parse_radial_metric(f.metric);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  f.config.plots = !f.no_plots;
  f.config.fit_euclidean = !f.no_euclidean;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hail storm damage model: clustering, radial fits and reports", "hailchi"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "hailchi 0.1.0");

  Flags f;
  auto* cluster = app.add_subcommand("cluster", "split events into storms");
  add_io(cluster, f, true);
  add_date(cluster, f);
  cluster->add_option("--time-scale", f.config.time_scale, "degrees per second of elapsed time (0: space only)")
      ->capture_default_str();
  cluster->add_option("--jump-threshold", f.config.jump_threshold,
                      "merge-height ratio that separates storms")
      ->capture_default_str();

  auto* fit = app.add_subcommand("fit", "fit each storm and write reports and plots");
  add_io(fit, f, true);
  add_date(fit, f);
  fit->add_option("--clusters", f.config.clusters_path, "clusters.json (default <out>/clusters.json)");
  fit->add_flag("--single-storm", f.config.single_storm, "treat all events as one storm");
  fit->add_option("--metric", f.metric, "radial distance: mahalanobis, euclidean, covariance")
      ->capture_default_str();
  fit->add_option("--contour-levels", f.config.contour_levels, "Mahalanobis contour levels")
      ->delimiter(',');
  fit->add_flag("--no-plots", f.no_plots, "skip SVG output");
  fit->add_flag("--no-euclidean", f.no_euclidean, "skip the Euclidean log-normal fit");

  auto* simulate = app.add_subcommand("simulate", "sample events from the traveling storm model");
  add_io(simulate, f, false);
  simulate->add_option("--velocity", f.velocity, "storm velocity vx,vy");
  simulate->add_option("--count", f.config.count, "number of events")->capture_default_str();
  simulate->add_option("--seed", f.config.seed, "random seed")->capture_default_str();

  auto* report = app.add_subcommand("report", "summarize storm reports");
  add_io(report, f, false);

  auto* fetch = app.add_subcommand("fetch", "download SWDI hail records as CSV");
  fetch->add_option("-o,--out", f.config.out_dir, "output directory")->capture_default_str();
  fetch->add_option("--start", f.config.swdi_start, "first day (YYYY-MM-DD)")->required();
  fetch->add_option("--end", f.config.swdi_end, "last day (YYYY-MM-DD)")->required();
  fetch->add_option("--swdi-base", f.config.swdi_base, "SWDI endpoint base")->capture_default_str();

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.push_back("hailchi");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    finish(f);
    if (cluster->parsed()) {
      cmd_cluster(f.config, out);
    } else if (fit->parsed()) {
      cmd_fit(f.config, out);
    } else if (simulate->parsed()) {
      cmd_simulate(f.config, out);
    } else if (report->parsed()) {
      cmd_report(f.config, out);
    } else if (fetch->parsed()) {
      cmd_fetch(f.config, out);
    }
  } catch (const UsageError& e) {
    err << "hailchi: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    err << "hailchi: " << e.what() << "\n";
    return kExitData;
  } catch (const TransportError& e) {
    err << "hailchi: " << e.what() << "\n";
    return kExitData;
  } catch (const NumericError& e) {
    err << "hailchi: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const DomainError& e) {
    err << "hailchi: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "hailchi: " << e.what() << "\n";
    return kExitData;
  }
  return kExitOk;
}

}  // namespace hailchi
