#include "hailchi/report.h"

#include <array>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hailchi/error.h"
#include "json.hpp"

namespace hailchi {
namespace {

using nlohmann::json;

json to_json_value(const LogNormalSummary& s) {
  return {{"mu_hat", s.mu_hat}, {"sigma_hat", s.sigma_hat}, {"sse", s.sse},
          {"degenerate", s.degenerate}};
}

LogNormalSummary lognormal_from(const json& j) {
  return {j.at("mu_hat").get<double>(), j.at("sigma_hat").get<double>(),
          j.at("sse").get<double>(), j.at("degenerate").get<bool>()};
}

json qq_to_json(const std::vector<QqPoint>& points) {
  json out = json::array();
  for (const auto& [theory, empirical] : points) out.push_back({theory, empirical});
  return out;
}

std::vector<QqPoint> qq_from(const json& j) {
  std::vector<QqPoint> out;
  for (const json& p : j) out.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
  return out;
}

std::string shortest(double value) {
  std::array<char, 64> buffer{};
  const auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  return std::string(buffer.data(), ptr);
}

}  // namespace

BinormalSummary summarize(const BinormalFit& fit) {
  BinormalSummary s;
  s.mean = fit.mean;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      s.cov[i * 2 + j] = fit.cov(i, j);
      s.axes[i * 2 + j] = fit.eigen().rotation(i, j);
    }
    s.semi_axes[i] = fit.eigen().semi_axes[i];
  }
  s.total_weight = fit.total_weight;
  return s;
}

LogNormalSummary summarize(const LogNormalFit& fit) {
  return {fit.mu_hat, fit.sigma_hat, fit.sse, fit.degenerate};
}

std::string to_json(const StormReport& r) {
  json j;
  j["storm_id"] = r.storm_id;
  j["event_count"] = r.event_count;
  j["status"] = r.status;
  j["note"] = r.note;
  j["metric"] = r.metric;
  if (r.binormal) {
    j["binormal"] = {{"mean", r.binormal->mean},
                     {"cov", r.binormal->cov},
                     {"semi_axes", r.binormal->semi_axes},
                     {"axes", r.binormal->axes},
                     {"total_weight", r.binormal->total_weight}};
  }
  if (r.chi) j["chi"] = {{"lambda_hat", r.chi->lambda_hat}, {"sse", r.chi->sse}};
  if (r.lognormal) j["lognormal"] = to_json_value(*r.lognormal);
  if (r.lognormal_euclidean) j["lognormal_euclidean"] = to_json_value(*r.lognormal_euclidean);
  if (r.gof) {
    j["gof"] = {{"f_statistic", r.gof->f_statistic},
                {"p_value", r.gof->p_value},
                {"dof", {r.gof->dof_chi, r.gof->dof_lognormal}},
                {"convention", r.gof->convention},
                {"residuals_chi", r.gof->residuals_chi},
                {"residuals_lognormal", r.gof->residuals_lognormal},
                {"qq_chi", qq_to_json(r.gof->qq_chi)},
                {"qq_lognormal", qq_to_json(r.gof->qq_lognormal)}};
  }
  return j.dump(2) + "\n";
}

StormReport storm_report_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    StormReport r;
    r.storm_id = j.at("storm_id").get<int>();
    r.event_count = j.at("event_count").get<int>();
    r.status = j.at("status").get<std::string>();
    r.note = j.value("note", "");
    r.metric = j.at("metric").get<std::string>();
    if (j.contains("binormal")) {
      const json& b = j["binormal"];
      BinormalSummary s;
      s.mean = b.at("mean").get<Vec2>();
      s.cov = b.at("cov").get<std::array<double, 4>>();
      s.semi_axes = b.at("semi_axes").get<std::array<double, 2>>();
      s.axes = b.at("axes").get<std::array<double, 4>>();
      s.total_weight = b.at("total_weight").get<double>();
      r.binormal = s;
    }
    if (j.contains("chi")) {
      r.chi = ChiFit{j["chi"].at("lambda_hat").get<double>(), j["chi"].at("sse").get<double>()};
    }
    if (j.contains("lognormal")) r.lognormal = lognormal_from(j["lognormal"]);
    if (j.contains("lognormal_euclidean")) {
      r.lognormal_euclidean = lognormal_from(j["lognormal_euclidean"]);
    }
    if (j.contains("gof")) {
      const json& g = j["gof"];
      GoFSummary s;
      s.f_statistic = g.at("f_statistic").get<double>();
      s.p_value = g.at("p_value").get<double>();
      s.dof_chi = g.at("dof").at(0).get<int>();
      s.dof_lognormal = g.at("dof").at(1).get<int>();
      s.convention = g.value("convention", "");
      s.residuals_chi = g.at("residuals_chi").get<std::vector<double>>();
      s.residuals_lognormal = g.at("residuals_lognormal").get<std::vector<double>>();
      s.qq_chi = qq_from(g.at("qq_chi"));
      s.qq_lognormal = qq_from(g.at("qq_lognormal"));
      r.gof = std::move(s);
    }
    return r;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed storm report: ") + e.what());
  }
}

void write_file_atomically(const std::string& path, const std::string& contents) {
  const std::filesystem::path target(path);
  std::filesystem::path temp = target;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + temp.string());
    out << contents;
    if (!out.flush()) throw DataError("cannot write " + temp.string());
  }
  std::error_code ec;
  std::filesystem::rename(temp, target, ec);
  if (ec) throw DataError("cannot rename " + temp.string() + " to " + path + ": " + ec.message());
}

void save_report(const StormReport& report, const std::string& path) {
  write_file_atomically(path, to_json(report));
}

StormReport load_report(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return storm_report_from_json(buffer.str());
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

std::string format_penalty(double value) {
  char buffer[32];
  if (std::fabs(value) >= 10.0) {
    std::snprintf(buffer, sizeof buffer, "%.1f", value);
  } else {
    std::snprintf(buffer, sizeof buffer, "%.2g", value);
    // %.2g drops trailing zeros and may switch to exponent form; redo as
    // fixed with the decimals that two significant digits need.
    double parsed = std::strtod(buffer, nullptr);
    int decimals = 1;
    if (parsed != 0.0) {
      decimals = std::max(1, 1 - static_cast<int>(std::floor(std::log10(std::fabs(parsed)))));
    }
    std::snprintf(buffer, sizeof buffer, "%.*f", decimals, parsed);
  }
  return buffer;
}

std::string summary_table(const std::vector<StormReport>& reports) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof line, "%-7s %8s %10s %10s %10s\n", "storm", "events", "S_F", "S_G",
                "S^d_G");
  out += line;
  auto cell = [](bool present, double value) { return present ? format_penalty(value) : "-"; };
  for (const StormReport& r : reports) {
    const std::string sf = cell(r.chi.has_value(), r.chi ? r.chi->sse : 0.0);
    const std::string sg =
        cell(r.lognormal_euclidean.has_value(), r.lognormal_euclidean ? r.lognormal_euclidean->sse : 0.0);
    const std::string sdg = cell(r.lognormal.has_value(), r.lognormal ? r.lognormal->sse : 0.0);
    std::snprintf(line, sizeof line, "%-7d %8d %10s %10s %10s%s\n", r.storm_id, r.event_count,
                  sf.c_str(), sg.c_str(), sdg.c_str(),
                  r.ok() ? "" : ("  (" + r.status + ")").c_str());
    out += line;
  }
  return out;
}

std::string summary_csv(const std::vector<StormReport>& reports) {
  std::string out = "storm,events,status,S_F,S_G,S_dG\n";
  for (const StormReport& r : reports) {
    out += std::to_string(r.storm_id) + "," + std::to_string(r.event_count) + "," + r.status + ",";
    out += (r.chi ? shortest(r.chi->sse) : "") + ",";
    out += (r.lognormal_euclidean ? shortest(r.lognormal_euclidean->sse) : "") + ",";
    out += (r.lognormal ? shortest(r.lognormal->sse) : "") + "\n";
  }
  return out;
}

}  // namespace hailchi
