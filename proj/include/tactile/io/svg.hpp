#pragma once

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

namespace tactile::io {

namespace detail {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
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

inline const char* palette(std::size_t i) {
  static const char* colors[] = {"#4e79a7", "#f28e2b", "#59a14f", "#e15759",
                                 "#76b7b2", "#edc948", "#b07aa1", "#9c755f"};
  return colors[i % 8];
}

inline std::string text(double x, double y, const std::string& s, const char* anchor = "middle",
                        int size = 12) {
  return "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-size=\"" + std::to_string(size) +
         "\" text-anchor=\"" + anchor + "\" font-family=\"sans-serif\">" + escape(s) + "</text>\n";
}

inline std::string rect(double x, double y, double w, double h, const char* fill,
                        const std::string& title = {}) {
  std::string out = "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) +
                    "\" height=\"" + num(h) + "\" fill=\"" + fill + "\"";
  if (title.empty()) return out + "/>\n";
  return out + "><title>" + escape(title) + "</title></rect>\n";
}

inline std::string line(double x1, double y1, double x2, double y2, const char* stroke,
                        const char* extra = "") {
  return "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" +
         num(y2) + "\" stroke=\"" + stroke + "\" " + extra + "/>\n";
}

}  // namespace detail

/// Grouped bars: one group per entry of `groups`, one bar per series, values in [0, 1].
inline std::string grouped_bar_chart_svg(const std::string& title,
                                         const std::vector<std::string>& groups,
                                         const std::vector<std::string>& series,
                                         const std::vector<std::vector<double>>& values,
                                         const std::string& y_label) {
  using namespace detail;
  const double left = 70, top = 50, plot_h = 300, bottom = 90;
  const double bar_w = 22, group_gap = 30;
  const double group_w = bar_w * static_cast<double>(series.size()) + group_gap;
  const double plot_w = std::max(300.0, group_w * static_cast<double>(groups.size()));
  const double width = left + plot_w + 40, height = top + plot_h + bottom;

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) +
                    "\" height=\"" + num(height) + "\" viewBox=\"0 0 " + num(width) + " " +
                    num(height) + "\">\n";
  svg += rect(0, 0, width, height, "white");
  svg += text(width / 2, 25, title, "middle", 16);
  for (int t = 0; t <= 5; ++t) {
    const double v = t / 5.0;
    const double y = top + plot_h * (1.0 - v);
    svg += line(left, y, left + plot_w, y, "#dddddd");
    svg += text(left - 8, y + 4, num(v), "end", 11);
  }
  svg += line(left, top, left, top + plot_h, "black");
  svg += line(left, top + plot_h, left + plot_w, top + plot_h, "black");
  svg += "<text x=\"18\" y=\"" + num(top + plot_h / 2) +
         "\" font-size=\"12\" font-family=\"sans-serif\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
         num(top + plot_h / 2) + ")\">" + escape(y_label) + "</text>\n";

  for (std::size_t g = 0; g < groups.size(); ++g) {
    const double gx = left + group_gap / 2 + static_cast<double>(g) * group_w;
    for (std::size_t s = 0; s < series.size(); ++s) {
      const double v = std::clamp(values[g][s], 0.0, 1.0);
      const double h = plot_h * v;
      svg += rect(gx + static_cast<double>(s) * bar_w, top + plot_h - h, bar_w - 2, h, palette(s),
                  groups[g] + " " + series[s] + ": " + std::to_string(values[g][s]));
    }
    svg += text(gx + bar_w * static_cast<double>(series.size()) / 2, top + plot_h + 18, groups[g]);
  }
  for (std::size_t s = 0; s < series.size(); ++s) {
    const double lx = left + static_cast<double>(s) * 110;
    svg += rect(lx, height - 40, 12, 12, palette(s));
    svg += text(lx + 16, height - 30, series[s], "start", 12);
  }
  svg += "</svg>\n";
  return svg;
}

/// One bar per feature with a dashed reference line at `threshold`.
inline std::string profile_chart_svg(const std::string& title, const std::vector<std::string>& labels,
                                     const std::vector<double>& values, double threshold) {
  using namespace detail;
  const double left = 70, top = 50, plot_h = 280, bottom = 80;
  const double bar_w = labels.size() > 20 ? 8 : 40;
  const double plot_w = std::max(300.0, bar_w * static_cast<double>(labels.size()) + 20);
  const double width = left + plot_w + 40, height = top + plot_h + bottom;
  const std::size_t label_every = labels.size() > 20 ? 6 : 1;

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) +
                    "\" height=\"" + num(height) + "\" viewBox=\"0 0 " + num(width) + " " +
                    num(height) + "\">\n";
  svg += rect(0, 0, width, height, "white");
  svg += text(width / 2, 25, title, "middle", 16);
  for (int t = 0; t <= 5; ++t) {
    const double v = t / 5.0;
    const double y = top + plot_h * (1.0 - v);
    svg += line(left, y, left + plot_w, y, "#dddddd");
    svg += text(left - 8, y + 4, num(v), "end", 11);
  }
  svg += line(left, top, left, top + plot_h, "black");
  svg += line(left, top + plot_h, left + plot_w, top + plot_h, "black");
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double x = left + 10 + static_cast<double>(i) * bar_w;
    const double h = plot_h * std::clamp(values[i], 0.0, 1.0);
    svg += rect(x, top + plot_h - h, bar_w - 1, h, palette(0),
                labels[i] + ": " + std::to_string(values[i]));
    if (i % label_every == 0) svg += text(x + bar_w / 2, top + plot_h + 16, labels[i], "middle", 10);
  }
  const double ty = top + plot_h * (1.0 - threshold);
  svg += line(left, ty, left + plot_w, ty, "#e15759", "stroke-dasharray=\"6 4\"");
  svg += text(left + plot_w, ty - 4, "p = " + num(threshold), "end", 11);
  svg += text(left + plot_w / 2, height - 20, "feature", "middle", 12);
  svg += "</svg>\n";
  return svg;
}

}  // namespace tactile::io
