#ifndef HAILCHI_SVG_H_
#define HAILCHI_SVG_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hailchi/fitting.h"
#include "hailchi/hail_event.h"

namespace hailchi::svg {

struct Style {
  std::string stroke = "black";
  double stroke_width = 1.5;
  std::string dash;  // SVG stroke-dasharray, empty for solid
  std::string fill = "none";
};

// Minimal 2-D chart: a data rectangle mapped into a pixel frame with axes,
// ticks and a legend. Output is deterministic text (fixed number format).
class Chart {
 public:
  Chart(double x_min, double x_max, double y_min, double y_max, int width = 640,
        int height = 480);

  void set_title(std::string title) { title_ = std::move(title); }
  void set_labels(std::string x_label, std::string y_label);
  // Force equal data units per pixel on both axes (maps, contour plots).
  void set_equal_aspect();

  void add_polyline(const std::vector<Vec2>& points, const Style& style,
                    std::string legend = {}, bool closed = false);
  void add_circle(Vec2 center, double radius_px, const Style& style);
  void add_triangle(Vec2 center, double size_px, const Style& style);
  void add_line(Vec2 from, Vec2 to, const Style& style);

  std::string render() const;

 private:
  double px(double x) const;
  double py(double y) const;

  double x_min_, x_max_, y_min_, y_max_;
  int width_, height_;
  std::string title_, x_label_, y_label_;
  std::vector<std::string> body_;
  std::vector<std::pair<Style, std::string>> legend_;
};

/// Empirical weighted CDF as a step curve, with the fitted scaled Rayleigh
/// (solid) and log-normal (dashed) CDFs.
std::string cdf_plot(const RadialSeries& series, const ChiFit& chi, const LogNormalFit& lognormal,
                     std::string_view title);

/// Empirical (vertical) against theoretical (horizontal) quantiles for both
/// fits, with the identity line.
std::string qq_plot(const GoFReport& gof, std::string_view title);

/// Events sized by severe probability over Mahalanobis contour ellipses.
std::string contour_plot(std::span<const HailEvent> events, const BinormalFit& fit,
                         const std::vector<double>& levels, std::string_view title);

/// printf %g formatting with the given number of significant digits.
std::string format_number(double value, int significant = 6);

}  // namespace hailchi::svg

#endif  // HAILCHI_SVG_H_
