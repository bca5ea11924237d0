#include "plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "report.hpp"

namespace zetalab::cli {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<')
      out += "&lt;";
    else if (c == '>')
      out += "&gt;";
    else if (c == '&')
      out += "&amp;";
    else
      out += c;
  }
  return out;
}

// Round step 1, 2 or 5 times a power of ten giving about `n` ticks.
double tick_step(double span, int n) {
  const double raw = span / n;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0})
    if (m * mag >= raw) return m * mag;
  return 10 * mag;
}

}  // namespace

std::string svg_plot(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                     const std::vector<Series>& series, int width, int height) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  if (!(x0 <= x1)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 == x0) x1 = x0 + 1;
  if (y1 == y0) y1 = y0 + 1;
  const double ml = 70, mr = 150, mt = 40, mb = 50;
  const double pw = width - ml - mr, ph = height - mt - mb;
  auto px = [&](double x) { return ml + (x - x0) / (x1 - x0) * pw; };
  auto py = [&](double y) { return mt + ph - (y - y0) / (y1 - y0) * ph; };

  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) + "\" height=\"" +
                  std::to_string(height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + fmt(width / 2.0) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" + escape(title) +
       "</text>\n";
  s += "<rect x=\"" + fmt(ml) + "\" y=\"" + fmt(mt) + "\" width=\"" + fmt(pw) + "\" height=\"" + fmt(ph) +
       "\" fill=\"none\" stroke=\"black\"/>\n";
  const double dx = tick_step(x1 - x0, 8), dy = tick_step(y1 - y0, 8);
  for (double t = std::ceil(x0 / dx) * dx; t <= x1 + 1e-9 * dx; t += dx)
    s += "<line x1=\"" + fmt(px(t)) + "\" y1=\"" + fmt(mt + ph) + "\" x2=\"" + fmt(px(t)) + "\" y2=\"" +
         fmt(mt + ph + 5) + "\" stroke=\"black\"/><text x=\"" + fmt(px(t)) + "\" y=\"" + fmt(mt + ph + 18) +
         "\" text-anchor=\"middle\">" + format_double(std::round(t / dx) * dx) + "</text>\n";
  for (double t = std::ceil(y0 / dy) * dy; t <= y1 + 1e-9 * dy; t += dy)
    s += "<line x1=\"" + fmt(ml - 5) + "\" y1=\"" + fmt(py(t)) + "\" x2=\"" + fmt(ml) + "\" y2=\"" + fmt(py(t)) +
         "\" stroke=\"black\"/><text x=\"" + fmt(ml - 8) + "\" y=\"" + fmt(py(t) + 4) + "\" text-anchor=\"end\">" +
         format_double(std::round(t / dy) * dy) + "</text>\n";
  s += "<text x=\"" + fmt(ml + pw / 2) + "\" y=\"" + fmt(height - 12.0) + "\" text-anchor=\"middle\">" +
       escape(xlabel) + "</text>\n";
  s += "<text transform=\"translate(18," + fmt(mt + ph / 2) + ") rotate(-90)\" text-anchor=\"middle\">" +
       escape(ylabel) + "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& ser = series[k];
    if (!ser.markers_only && ser.x.size() > 1) {
      s += "<polyline fill=\"none\" stroke=\"" + ser.color + "\" points=\"";
      for (std::size_t i = 0; i < ser.x.size(); ++i) s += fmt(px(ser.x[i])) + "," + fmt(py(ser.y[i])) + " ";
      s += "\"/>\n";
    }
    for (std::size_t i = 0; i < ser.x.size(); ++i)
      s += "<circle cx=\"" + fmt(px(ser.x[i])) + "\" cy=\"" + fmt(py(ser.y[i])) + "\" r=\"" +
           (k == 0 ? "3.5" : "2") + "\" fill=\"" + (k == 0 ? "none" : ser.color) + "\" stroke=\"" + ser.color +
           "\"/>\n";
    const double ly = mt + 10 + 18.0 * k;
    s += "<circle cx=\"" + fmt(ml + pw + 15) + "\" cy=\"" + fmt(ly) + "\" r=\"4\" fill=\"" + ser.color +
         "\"/><text x=\"" + fmt(ml + pw + 25) + "\" y=\"" + fmt(ly + 4) + "\">" + escape(ser.label) + "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

std::string dat_file(const std::vector<Series>& series) {
  std::string out;
  for (std::size_t k = 0; k < series.size(); ++k) {
    if (k) out += "\n\n";
    out += "# " + series[k].label + "\n";
    for (std::size_t i = 0; i < series[k].x.size(); ++i)
      out += format_double(series[k].x[i]) + " " + format_double(series[k].y[i]) + "\n";
  }
  return out;
}

}  // namespace zetalab::cli
