#include "hailchi/svg.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "hailchi/error.h"
#include "hailchi/special_functions.h"

namespace hailchi::svg {
namespace {

constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 55.0;

std::string escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string style_attributes(const Style& style) {
  std::string out = "stroke=\"" + style.stroke + "\" stroke-width=\"" +
                    format_number(style.stroke_width) + "\" fill=\"" + style.fill + "\"";
  if (!style.dash.empty()) out += " stroke-dasharray=\"" + style.dash + "\"";
  return out;
}

std::vector<double> nice_ticks(double lo, double hi) {
  const double range = hi - lo;
  if (!(range > 0.0)) return {lo};
  const double raw = range / 5.0;
  const double magnitude = std::pow(10.0, std::floor(std::log10(raw)));
  double step = magnitude;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * magnitude;
    if (step >= raw) break;
  }
  std::vector<double> ticks;
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * range; t += step) {
    ticks.push_back(std::fabs(t) < 1e-12 * range ? 0.0 : t);
  }
  return ticks;
}

// Data bounds padded by a fraction of their span.
std::pair<double, double> padded(double lo, double hi, double fraction) {
  if (!(hi > lo)) return {lo - 1.0, hi + 1.0};
  const double pad = fraction * (hi - lo);
  return {lo - pad, hi + pad};
}

}  // namespace

std::string format_number(double value, int significant) {
  char buffer[48];
  std::snprintf(buffer, sizeof buffer, "%.*g", significant, value);
  return buffer;
}

Chart::Chart(double x_min, double x_max, double y_min, double y_max, int width, int height)
    : x_min_(x_min), x_max_(x_max), y_min_(y_min), y_max_(y_max), width_(width), height_(height) {
  if (!(x_max > x_min) || !(y_max > y_min)) throw DomainError("svg::Chart: empty data range");
}

void Chart::set_labels(std::string x_label, std::string y_label) {
  x_label_ = std::move(x_label);
  y_label_ = std::move(y_label);
}

void Chart::set_equal_aspect() {
  const double plot_w = width_ - kMarginLeft - kMarginRight;
  const double plot_h = height_ - kMarginTop - kMarginBottom;
  const double scale = std::max((x_max_ - x_min_) / plot_w, (y_max_ - y_min_) / plot_h);
  const double cx = 0.5 * (x_min_ + x_max_);
  const double cy = 0.5 * (y_min_ + y_max_);
  x_min_ = cx - 0.5 * scale * plot_w;
  x_max_ = cx + 0.5 * scale * plot_w;
  y_min_ = cy - 0.5 * scale * plot_h;
  y_max_ = cy + 0.5 * scale * plot_h;
}

double Chart::px(double x) const {
  return kMarginLeft + (x - x_min_) / (x_max_ - x_min_) * (width_ - kMarginLeft - kMarginRight);
}

double Chart::py(double y) const {
  return height_ - kMarginBottom -
         (y - y_min_) / (y_max_ - y_min_) * (height_ - kMarginTop - kMarginBottom);
}

void Chart::add_polyline(const std::vector<Vec2>& points, const Style& style,
                         std::string legend, bool closed) {
  std::string coords;
  auto append = [&](const Vec2& p) {
    if (!coords.empty()) coords += ' ';
    coords += format_number(px(p[0])) + "," + format_number(py(p[1]));
  };
  for (const Vec2& p : points) append(p);
  if (closed && !points.empty()) append(points.front());
  body_.push_back("<polyline points=\"" + coords + "\" " + style_attributes(style) + "/>");
  if (!legend.empty()) legend_.emplace_back(style, std::move(legend));
}

void Chart::add_circle(Vec2 center, double radius_px, const Style& style) {
  body_.push_back("<circle cx=\"" + format_number(px(center[0])) + "\" cy=\"" +
                  format_number(py(center[1])) + "\" r=\"" + format_number(radius_px) + "\" " +
                  style_attributes(style) + "/>");
}

void Chart::add_triangle(Vec2 center, double size_px, const Style& style) {
  // Left-pointing marker.
  const double x = px(center[0]);
  const double y = py(center[1]);
  const std::string points = format_number(x - size_px) + "," + format_number(y) + " " +
                             format_number(x + size_px) + "," + format_number(y - size_px) + " " +
                             format_number(x + size_px) + "," + format_number(y + size_px);
  body_.push_back("<polygon points=\"" + points + "\" " + style_attributes(style) + "/>");
}

void Chart::add_line(Vec2 from, Vec2 to, const Style& style) {
  body_.push_back("<line x1=\"" + format_number(px(from[0])) + "\" y1=\"" +
                  format_number(py(from[1])) + "\" x2=\"" + format_number(px(to[0])) +
                  "\" y2=\"" + format_number(py(to[1])) + "\" " + style_attributes(style) + "/>");
}

std::string Chart::render() const {
  const double left = kMarginLeft;
  const double right = width_ - kMarginRight;
  const double top = kMarginTop;
  const double bottom = height_ - kMarginBottom;
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width_) +
         "\" height=\"" + std::to_string(height_) + "\" viewBox=\"0 0 " +
         std::to_string(width_) + " " + std::to_string(height_) + "\" font-family=\"sans-serif\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<defs><clipPath id=\"plot-area\"><rect x=\"" + format_number(left) + "\" y=\"" +
         format_number(top) + "\" width=\"" + format_number(right - left) + "\" height=\"" +
         format_number(bottom - top) + "\"/></clipPath></defs>\n";

  out += "<g stroke=\"#cccccc\" stroke-width=\"0.5\" font-size=\"11\">\n";
  for (double t : nice_ticks(x_min_, x_max_)) {
    const std::string x = format_number(px(t));
    out += "<line x1=\"" + x + "\" y1=\"" + format_number(top) + "\" x2=\"" + x + "\" y2=\"" +
           format_number(bottom) + "\"/>";
    out += "<text x=\"" + x + "\" y=\"" + format_number(bottom + 16) +
           "\" text-anchor=\"middle\" stroke=\"none\" fill=\"black\">" + format_number(t, 4) +
           "</text>\n";
  }
  for (double t : nice_ticks(y_min_, y_max_)) {
    const std::string y = format_number(py(t));
    out += "<line x1=\"" + format_number(left) + "\" y1=\"" + y + "\" x2=\"" +
           format_number(right) + "\" y2=\"" + y + "\"/>";
    out += "<text x=\"" + format_number(left - 6) + "\" y=\"" + format_number(py(t) + 4) +
           "\" text-anchor=\"end\" stroke=\"none\" fill=\"black\">" + format_number(t, 4) +
           "</text>\n";
  }
  out += "</g>\n";
  out += "<rect x=\"" + format_number(left) + "\" y=\"" + format_number(top) + "\" width=\"" +
         format_number(right - left) + "\" height=\"" + format_number(bottom - top) +
         "\" fill=\"none\" stroke=\"black\"/>\n";

  out += "<g clip-path=\"url(#plot-area)\">\n";
  for (const std::string& element : body_) out += element + "\n";
  out += "</g>\n";

  if (!title_.empty()) {
    out += "<text x=\"" + format_number(0.5 * width_) +
           "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" + escape(title_) + "</text>\n";
  }
  if (!x_label_.empty()) {
    out += "<text x=\"" + format_number(0.5 * (left + right)) + "\" y=\"" +
           format_number(height_ - 12) + "\" text-anchor=\"middle\" font-size=\"13\">" +
           escape(x_label_) + "</text>\n";
  }
  if (!y_label_.empty()) {
    const std::string cy = format_number(0.5 * (top + bottom));
    out += "<text x=\"16\" y=\"" + cy + "\" text-anchor=\"middle\" font-size=\"13\" " +
           "transform=\"rotate(-90 16 " + cy + ")\">" + escape(y_label_) + "</text>\n";
  }
  double legend_y = top + 18;
  for (const auto& [style, label] : legend_) {
    const double x = right - 170;
    out += "<line x1=\"" + format_number(x) + "\" y1=\"" + format_number(legend_y - 4) +
           "\" x2=\"" + format_number(x + 30) + "\" y2=\"" + format_number(legend_y - 4) + "\" " +
           style_attributes(style) + "/>";
    out += "<text x=\"" + format_number(x + 38) + "\" y=\"" + format_number(legend_y) +
           "\" font-size=\"12\">" + escape(label) + "</text>\n";
    legend_y += 18;
  }
  out += "</svg>\n";
  return out;
}

std::string cdf_plot(const RadialSeries& series, const ChiFit& chi, const LogNormalFit& lognormal,
                     std::string_view title) {
  if (series.size() == 0) throw DomainError("cdf_plot: empty series");
  const double x_hi = 1.1 * std::max(series.distances.back(), 1e-12);
  Chart chart(0.0, x_hi, 0.0, 1.05);
  chart.set_title(std::string(title));
  chart.set_labels("distance", "cumulative weight");

  // Right-continuous step function through (d_i, cum_i).
  std::vector<Vec2> steps;
  steps.push_back({0.0, 0.0});
  double level = 0.0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    steps.push_back({series.distances[i], level});
    level = series.cum_weights[i];
    steps.push_back({series.distances[i], level});
  }
  steps.push_back({x_hi, level});
  chart.add_polyline(steps, {"#444444", 1.2, "", "none"}, "empirical");

  constexpr int kSamples = 400;
  std::vector<Vec2> chi_curve, lognormal_curve;
  for (int k = 0; k <= kSamples; ++k) {
    const double r = x_hi * k / kSamples;
    chi_curve.push_back({r, chi_family_cdf(r, chi.lambda_hat)});
    lognormal_curve.push_back({r, lognormal_cdf(r, lognormal.mu_hat, lognormal.sigma_hat)});
  }
  chart.add_polyline(chi_curve, {"#c0392b", 2.0, "", "none"}, "chi (2 dof) fit");
  chart.add_polyline(lognormal_curve, {"#2450a6", 2.0, "6,4", "none"}, "log-normal fit");
  return chart.render();
}

std::string qq_plot(const GoFReport& gof, std::string_view title) {
  double hi = 0.0;
  for (const auto* pts : {&gof.qq_chi, &gof.qq_lognormal}) {
    for (const auto& [theory, empirical] : *pts) hi = std::max({hi, theory, empirical});
  }
  hi = hi > 0.0 ? 1.05 * hi : 1.0;
  Chart chart(0.0, hi, 0.0, hi);
  chart.set_title(std::string(title));
  chart.set_labels("fitted quantile", "empirical quantile");
  chart.add_line({0.0, 0.0}, {hi, hi}, {"#888888", 1.0, "3,3", "none"});

  const Style chi_style{"#c0392b", 1.0, "", "none"};
  const Style lognormal_style{"#2450a6", 1.0, "", "none"};
  std::vector<Vec2> chi_points, lognormal_points;
  for (const auto& [theory, empirical] : gof.qq_chi) chi_points.push_back({theory, empirical});
  for (const auto& [theory, empirical] : gof.qq_lognormal) {
    lognormal_points.push_back({theory, empirical});
  }
  chart.add_polyline(chi_points, chi_style, "chi (2 dof)");
  chart.add_polyline(lognormal_points, lognormal_style, "log-normal");
  for (const Vec2& p : chi_points) chart.add_triangle(p, 4.0, {"none", 0.0, "", "#c0392b"});
  for (const Vec2& p : lognormal_points) chart.add_circle(p, 3.0, {"none", 0.0, "", "#2450a6"});
  return chart.render();
}

std::string contour_plot(std::span<const HailEvent> events, const BinormalFit& fit,
                         const std::vector<double>& levels, std::string_view title) {
  constexpr int kVertices = 180;
  std::vector<std::vector<Vec2>> rings;
  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo;
  auto extend = [&](const Vec2& p) {
    x_lo = std::min(x_lo, p[0]);
    x_hi = std::max(x_hi, p[0]);
    y_lo = std::min(y_lo, p[1]);
    y_hi = std::max(y_hi, p[1]);
  };
  for (const HailEvent& e : events) extend(e.location());
  for (double level : levels) {
    rings.push_back(ellipse_points(fit, level, kVertices));
    for (const Vec2& p : rings.back()) extend(p);
  }
  const auto [x0, x1] = padded(x_lo, x_hi, 0.05);
  const auto [y0, y1] = padded(y_lo, y_hi, 0.05);
  Chart chart(x0, x1, y0, y1, 720, 540);
  chart.set_equal_aspect();
  chart.set_title(std::string(title));
  chart.set_labels("longitude", "latitude");
  for (std::size_t k = 0; k < rings.size(); ++k) {
    chart.add_polyline(rings[k], {"#2450a6", 1.2, "", "none"},
                       k == 0 ? "Mahalanobis contours" : "", true);
  }
  for (const HailEvent& e : events) {
    chart.add_circle(e.location(), 1.0 + 6.0 * e.prob, {"#7a1f1f", 0.5, "", "#e06666"});
  }
  return chart.render();
}

}  // namespace hailchi::svg
