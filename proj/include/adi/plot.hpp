#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace adi::plot {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

struct HLine {
  double y;
  std::string label;
};

struct Chart {
  std::string title;
  std::string xlabel;
  std::string ylabel;
  std::vector<Series> series;
  std::vector<HLine> hlines;
};

// Minimal SVG line charts, stacked vertically when more than one is given.
void write_svg(std::ostream& os, const std::vector<Chart>& charts);

}  // namespace adi::plot
