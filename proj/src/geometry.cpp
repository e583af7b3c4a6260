#include "adi/geometry.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "adi/error.hpp"

namespace adi {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

PerimeterPoint PerimeterPoint::wrapped(double phi) {
  double w = std::fmod(phi, kTwoPi);
  if (w < 0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;
  return {w};
}

Point2 PerimeterPoint::embed() const { return perimeter_point(phi); }

Point2 TangentLine::at(double t) const { return tangent_point(phi, t); }

Point2 TangentLine::direction() const { return {std::sin(phi), -std::cos(phi)}; }

Point2 perimeter_point(double phi) { return {std::cos(phi), std::sin(phi)}; }

Point2 tangent_point(double phi, double t) {
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  return {c + t * s, s - t * c};
}

bool inspects(Point2 a, PerimeterPoint p) {
  return dot(a, p.embed()) >= 1.0 - kInspectSlack;
}

Polyline::Polyline(std::vector<Point2> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 2)
    throw Error(ErrorKind::InvalidArgument, "polyline needs at least two vertices");
  cumulative_.assign(vertices_.size(), 0.0);
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const Point2 v = vertices_[i];
    if (!std::isfinite(v.x) || !std::isfinite(v.y))
      throw Error(ErrorKind::InvalidArgument, "non-finite vertex", static_cast<long>(i));
    if (i == 0) continue;
    const double len = distance(vertices_[i - 1], v);
    if (!(len > 1e-15))
      throw Error(ErrorKind::InvalidArgument, "repeated consecutive vertex",
                  static_cast<long>(i));
    cumulative_[i] = cumulative_[i - 1] + len;
  }
}

std::optional<double> first_inspection_arclength(const Polyline& traj,
                                                 PerimeterPoint p) {
  const Point2 q = p.embed();
  const auto& v = traj.vertices();
  const auto& cum = traj.cumulative();
  double d_prev = dot(v[0], q) - 1.0;
  if (d_prev >= -kInspectSlack) return 0.0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    const double d = dot(v[i], q) - 1.0;
    if (d >= -kInspectSlack) {
      // dot(A(s), P) is affine along the segment: solve for dot = 1.
      const double lam = std::clamp((0.0 - d_prev) / (d - d_prev), 0.0, 1.0);
      return cum[i - 1] + lam * (cum[i] - cum[i - 1]);
    }
    d_prev = d;
  }
  return std::nullopt;
}

void write_csv(std::ostream& os, const Polyline& traj) {
  const auto old_prec = os.precision(std::numeric_limits<double>::max_digits10);
  os << "x,y\n";
  for (const auto& v : traj.vertices()) os << v.x << ',' << v.y << '\n';
  os.precision(old_prec);
}

Polyline read_polyline_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line))
    throw Error(ErrorKind::InvalidArgument, "empty polyline csv");
  if (line.rfind("x,y", 0) != 0)
    throw Error(ErrorKind::InvalidArgument, "polyline csv must start with header x,y");
  std::vector<Point2> pts;
  long row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    Point2 p;
    if (!(ss >> p.x >> p.y))
      throw Error(ErrorKind::InvalidArgument, "malformed polyline row", row);
    pts.push_back(p);
  }
  return Polyline(std::move(pts));
}

}  // namespace adi
