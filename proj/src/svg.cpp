#include "noma/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

namespace noma::cli {

namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 480;
constexpr double kLeft = 80;
constexpr double kRight = 200;
constexpr double kTop = 40;
constexpr double kBottom = 60;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '&':
        out += "&amp;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

struct Range {
  double lo = 0.0;
  double hi = 1.0;
};

Range padded(double lo, double hi) {
  if (lo == hi) return {lo - 0.5, hi + 0.5};
  return {lo, hi};
}

}  // namespace

std::string render_svg(const CsvTable& table, const AxesSpec& axes) {
  if (table.empty()) throw std::invalid_argument("cannot plot an empty table");
  const std::size_t xc = table.column(axes.x_column);
  const std::size_t yc = table.column(axes.y_column);
  std::vector<std::size_t> sc;
  for (const auto& s : axes.series_columns) sc.push_back(table.column(s));

  // Series in first-appearance order.
  std::vector<std::string> names;
  std::map<std::string, std::vector<std::pair<double, double>>> series;
  bool clamped = false;
  for (std::size_t r = 0; r < table.size(); ++r) {
    std::string name;
    for (std::size_t i = 0; i < sc.size(); ++i) {
      if (i) name += " / ";
      name += table.text(r, sc[i]);
    }
    double y = table.number(r, yc);
    if (axes.log_y) {
      if (y <= kLogFloor) {
        clamped = clamped || y < kLogFloor;
        y = kLogFloor;
      }
      y = std::log10(y);
    }
    if (!series.count(name)) names.push_back(name);
    series[name].emplace_back(table.number(r, xc), y);
  }

  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (const auto& [_, pts] : series) {
    for (const auto& [x, y] : pts) {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  const Range xr = padded(xmin, xmax);
  Range yr = padded(ymin, ymax);
  if (axes.log_y) yr = {std::floor(yr.lo), std::ceil(yr.hi)};
  if (yr.lo == yr.hi) yr.hi = yr.lo + 1.0;

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto py = [&](double y) { return kTop + ph - (y - yr.lo) / (yr.hi - yr.lo) * ph; };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(kWidth) + "\" height=\"" +
         num(kHeight) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + num(kLeft) + "\" y=\"24\" font-size=\"16\">" + escape(axes.title) + "</text>\n";
  svg += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(pw) + "\" height=\"" + num(ph) +
         "\" fill=\"none\" stroke=\"black\"/>\n";

  // Ticks: five along x, one per decade (or five) along y.
  for (int i = 0; i <= 4; ++i) {
    const double x = xr.lo + (xr.hi - xr.lo) * i / 4.0;
    char label[32];
    std::snprintf(label, sizeof label, "%.4g", x);
    svg += "<text x=\"" + num(px(x)) + "\" y=\"" + num(kTop + ph + 18) + "\" font-size=\"11\" text-anchor=\"middle\">" +
           label + "</text>\n";
  }
  const int ysteps = axes.log_y ? static_cast<int>(yr.hi - yr.lo) : 4;
  for (int i = 0; i <= ysteps; ++i) {
    const double y = yr.lo + (yr.hi - yr.lo) * i / ysteps;
    char label[32];
    if (axes.log_y) {
      std::snprintf(label, sizeof label, "1e%d", static_cast<int>(std::lround(y)));
    } else {
      std::snprintf(label, sizeof label, "%.4g", y);
    }
    svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(py(y)) + "\" x2=\"" + num(kLeft + pw) + "\" y2=\"" +
           num(py(y)) + "\" stroke=\"#dddddd\"/>\n";
    svg += "<text x=\"" + num(kLeft - 6) + "\" y=\"" + num(py(y) + 4) +
           "\" font-size=\"11\" text-anchor=\"end\">" + label + "</text>\n";
  }
  svg += "<text x=\"" + num(kLeft + pw / 2) + "\" y=\"" + num(kHeight - 16) +
         "\" font-size=\"13\" text-anchor=\"middle\">" + escape(axes.x_label) + "</text>\n";
  svg += "<text x=\"18\" y=\"" + num(kTop + ph / 2) + "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
         num(kTop + ph / 2) + ")\">" + escape(axes.y_label) + "</text>\n";

  for (std::size_t s = 0; s < names.size(); ++s) {
    const auto& pts = series[names[s]];
    const char* colour = kPalette[s % std::size(kPalette)];
    if (pts.size() > 1) {
      svg += "<polyline fill=\"none\" stroke=\"" + std::string(colour) + "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) svg += ' ';
        svg += num(px(pts[i].first)) + "," + num(py(pts[i].second));
      }
      svg += "\"/>\n";
    }
    for (const auto& [x, y] : pts) {
      svg += "<circle cx=\"" + num(px(x)) + "\" cy=\"" + num(py(y)) + "\" r=\"3\" fill=\"" + colour + "\"/>\n";
    }
    const double ly = kTop + 14 + 18.0 * static_cast<double>(s);
    svg += "<line x1=\"" + num(kLeft + pw + 12) + "\" y1=\"" + num(ly - 4) + "\" x2=\"" + num(kLeft + pw + 32) +
           "\" y2=\"" + num(ly - 4) + "\" stroke=\"" + colour + "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + num(kLeft + pw + 38) + "\" y=\"" + num(ly) + "\" font-size=\"11\">" + escape(names[s]) +
           "</text>\n";
  }
  if (clamped) {
    svg += "<text x=\"" + num(kLeft + 6) + "\" y=\"" + num(kTop + ph - 6) +
           "\" font-size=\"10\" fill=\"#555555\">zero values drawn at 1e-7</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace noma::cli
