#pragma once

#include <string>
#include <vector>

namespace zetalab::cli {

struct Series {
  std::string label;
  std::string color;
  std::vector<double> x, y;
  bool markers_only = true;
};

// Self-contained SVG scatter plot with linear axes fitted to the data.
std::string svg_plot(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                     const std::vector<Series>& series, int width = 800, int height = 500);

// gnuplot-compatible text: one block per series, separated by two blank
// lines so that `index i` selects series i.
std::string dat_file(const std::vector<Series>& series);

}  // namespace zetalab::cli
