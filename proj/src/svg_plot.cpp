#include "zest/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace zest {

namespace {

struct Bounds {
  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;

  void include(Vec2 p) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

// Tick spacing of 1/2/5 x 10^k giving roughly six intervals.
double nice_step(double span) {
  if (!(span > 0.0)) return 1.0;
  const double raw = span / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (raw <= m * mag) return m * mag;
  }
  return 10.0 * mag;
}

}  // namespace

std::string trajectory_svg(const SimLog& log, const ScenarioConfig& config) {
  if (log.records.empty()) {
    throw std::invalid_argument("empty log");
  }
  const PlanarPath path = resolve_reference_path(config);

  Bounds b;
  b.xmin = b.xmax = log.records.front().white.x;
  b.ymin = b.ymax = log.records.front().white.y;
  for (const SimRecord& rec : log.records) {
    b.include(rec.white.position());
    if (rec.red.has_value()) b.include(rec.red->position());
  }
  for (Vec2 p : path.samples) b.include(p);

  const double pad = std::max(10.0, 0.05 * std::max(b.xmax - b.xmin, b.ymax - b.ymin));
  b.xmin -= pad;
  b.xmax += pad;
  b.ymin -= pad;
  b.ymax += pad;

  const double width = 800.0;
  const double height = 600.0;
  const double margin = 50.0;
  const double scale = std::min((width - 2.0 * margin) / (b.ymax - b.ymin),
                                (height - 2.0 * margin) / (b.xmax - b.xmin));
  // east right, north up
  const auto px = [&](Vec2 p) { return margin + (p.y - b.ymin) * scale; };
  const auto py = [&](Vec2 p) { return height - margin - (p.x - b.xmin) * scale; };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
      << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"#ffffff\"/>\n";

  // metric grid with labels
  const double step_e = nice_step(b.ymax - b.ymin);
  const double step_n = nice_step(b.xmax - b.xmin);
  svg << "<g id=\"grid\" stroke=\"#dddddd\" stroke-width=\"1\" font-size=\"11\" "
         "font-family=\"sans-serif\" fill=\"#555555\">\n";
  for (double e = std::ceil(b.ymin / step_e) * step_e; e <= b.ymax; e += step_e) {
    const double x = px({0.0, e});
    svg << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(margin) << "\" x2=\"" << fmt(x)
        << "\" y2=\"" << fmt(height - margin) << "\"/>\n";
    svg << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(height - margin + 16.0)
        << "\" text-anchor=\"middle\" stroke=\"none\">" << fmt(e) << "</text>\n";
  }
  for (double n = std::ceil(b.xmin / step_n) * step_n; n <= b.xmax; n += step_n) {
    const double y = py({n, 0.0});
    svg << "<line x1=\"" << fmt(margin) << "\" y1=\"" << fmt(y) << "\" x2=\""
        << fmt(width - margin) << "\" y2=\"" << fmt(y) << "\"/>\n";
    svg << "<text x=\"" << fmt(margin - 6.0) << "\" y=\"" << fmt(y + 4.0)
        << "\" text-anchor=\"end\" stroke=\"none\">" << fmt(n) << "</text>\n";
  }
  svg << "<text x=\"" << fmt(width / 2.0) << "\" y=\"" << fmt(height - 12.0)
      << "\" text-anchor=\"middle\" stroke=\"none\">east [m]</text>\n";
  svg << "<text x=\"14\" y=\"" << fmt(height / 2.0)
      << "\" text-anchor=\"middle\" stroke=\"none\" transform=\"rotate(-90 14 "
      << fmt(height / 2.0) << ")\">north [m]</text>\n";
  svg << "</g>\n";

  const auto polyline = [&](const char* id, const char* color, const char* dash,
                            auto&& points_fn, std::size_t count) {
    svg << "<polyline id=\"" << id << "\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"2\"";
    if (dash != nullptr) svg << " stroke-dasharray=\"" << dash << "\"";
    svg << " points=\"";
    for (std::size_t i = 0; i < count; ++i) {
      const Vec2 p = points_fn(i);
      if (i != 0) svg << ' ';
      svg << fmt(px(p)) << ',' << fmt(py(p));
    }
    svg << "\"/>\n";
  };

  polyline("reference-path", "#888888", "6 4",
           [&](std::size_t i) { return path.samples[i]; }, path.samples.size());
  polyline("white-track", "#1f77b4", nullptr,
           [&](std::size_t i) { return log.records[i].white.position(); },
           log.records.size());

  const bool has_red = log.records.front().red.has_value();
  if (has_red) {
    polyline("red-track", "#d62728", nullptr,
             [&](std::size_t i) { return log.records[i].red->position(); },
             log.records.size());

    // CPA markers at the minimum-separation record
    std::size_t cpa = 0;
    for (std::size_t i = 1; i < log.records.size(); ++i) {
      if (log.records[i].separation.has_value() &&
          *log.records[i].separation < *log.records[cpa].separation) {
        cpa = i;
      }
    }
    const Vec2 w = log.records[cpa].white.position();
    const Vec2 r = log.records[cpa].red->position();
    svg << "<g id=\"cpa\" stroke=\"#2ca02c\" fill=\"none\" stroke-width=\"1.5\">\n"
        << "<line stroke-dasharray=\"3 3\" x1=\"" << fmt(px(w)) << "\" y1=\"" << fmt(py(w))
        << "\" x2=\"" << fmt(px(r)) << "\" y2=\"" << fmt(py(r)) << "\"/>\n"
        << "<circle cx=\"" << fmt(px(w)) << "\" cy=\"" << fmt(py(w)) << "\" r=\"5\"/>\n"
        << "<circle cx=\"" << fmt(px(r)) << "\" cy=\"" << fmt(py(r)) << "\" r=\"5\"/>\n"
        << "<text x=\"" << fmt((px(w) + px(r)) / 2.0 + 8.0) << "\" y=\""
        << fmt((py(w) + py(r)) / 2.0) << "\" stroke=\"none\" fill=\"#2ca02c\" "
        << "font-size=\"11\" font-family=\"sans-serif\">CPA "
        << fmt(*log.records[cpa].separation) << " m</text>\n"
        << "</g>\n";
  }

  svg << "</svg>\n";
  return svg.str();
}

void render_trajectory_svg(const SimLog& log, const ScenarioConfig& config,
                           const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  out << trajectory_svg(log, config);
  if (!out) {
    throw std::runtime_error("write failed for '" + path + "'");
  }
}

}  // namespace zest
