#include "adi/plot.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

namespace adi::plot {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 320.0;
constexpr double kMarginL = 80.0;
constexpr double kMarginR = 20.0;
constexpr double kMarginT = 30.0;
constexpr double kMarginB = 45.0;
const char* kColors[] = {"#1f77b4", "#2ca02c", "#9467bd", "#8c564b"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  std::ostringstream ss;
  ss << std::setprecision(8) << v;
  return ss.str();
}

void chart(std::ostream& os, const Chart& c, double y_off) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : c.series) {
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  }
  for (const auto& h : c.hlines) {
    ymin = std::min(ymin, h.y);
    ymax = std::max(ymax, h.y);
  }
  if (!std::isfinite(xmin)) xmin = 0, xmax = 1;
  if (!std::isfinite(ymin)) ymin = 0, ymax = 1;
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;
  const double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;

  const double pw = kWidth - kMarginL - kMarginR;
  const double ph = kHeight - kMarginT - kMarginB;
  auto px = [&](double x) { return kMarginL + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return y_off + kMarginT + (ymax - y) / (ymax - ymin) * ph; };

  os << "<g>\n";
  os << "<rect x=\"" << kMarginL << "\" y=\"" << y_off + kMarginT << "\" width=\"" << pw
     << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"#333\"/>\n";
  os << "<text x=\"" << kWidth / 2 << "\" y=\"" << y_off + 18
     << "\" text-anchor=\"middle\" font-size=\"14\">" << escape(c.title) << "</text>\n";
  os << "<text x=\"" << kWidth / 2 << "\" y=\"" << y_off + kHeight - 8
     << "\" text-anchor=\"middle\" font-size=\"12\">" << escape(c.xlabel) << "</text>\n";
  os << "<text x=\"14\" y=\"" << y_off + kHeight / 2
     << "\" font-size=\"12\" transform=\"rotate(-90 14 " << y_off + kHeight / 2 << ")\">"
     << escape(c.ylabel) << "</text>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = xmin + (xmax - xmin) * i / 4.0;
    const double yv = ymin + (ymax - ymin) * i / 4.0;
    os << "<text x=\"" << px(xv) << "\" y=\"" << y_off + kHeight - kMarginB + 15
       << "\" text-anchor=\"middle\" font-size=\"10\">" << num(xv) << "</text>\n";
    os << "<text x=\"" << kMarginL - 4 << "\" y=\"" << py(yv) + 3
       << "\" text-anchor=\"end\" font-size=\"10\">" << num(yv) << "</text>\n";
  }
  for (const auto& h : c.hlines) {
    os << "<line x1=\"" << kMarginL << "\" x2=\"" << kMarginL + pw << "\" y1=\"" << py(h.y)
       << "\" y2=\"" << py(h.y) << "\" stroke=\"red\" stroke-dasharray=\"4 3\"/>\n";
    os << "<text x=\"" << kMarginL + pw - 4 << "\" y=\"" << py(h.y) - 4
       << "\" text-anchor=\"end\" font-size=\"10\" fill=\"red\">" << escape(h.label)
       << "</text>\n";
  }
  int ci = 0;
  for (const auto& s : c.series) {
    os << "<polyline fill=\"none\" stroke-width=\"1.5\" stroke=\"" << kColors[ci++ % 4]
       << "\" points=\"";
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      os << num(px(s.x[i])) << ',' << num(py(s.y[i])) << ' ';
    }
    os << "\"><title>" << escape(s.name) << "</title></polyline>\n";
  }
  os << "</g>\n";
}

}  // namespace

void write_svg(std::ostream& os, const std::vector<Chart>& charts) {
  const double total = kHeight * static_cast<double>(std::max<std::size_t>(charts.size(), 1));
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
     << total << "\" viewBox=\"0 0 " << kWidth << ' ' << total << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t i = 0; i < charts.size(); ++i) chart(os, charts[i], kHeight * i);
  os << "</svg>\n";
}

}  // namespace adi::plot
