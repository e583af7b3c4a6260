#pragma once

#include <cmath>
#include <iosfwd>
#include <optional>
#include <vector>

namespace adi {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }

// Point on the unit circle, angle kept in [0, 2pi).
struct PerimeterPoint {
  double phi = 0.0;

  static PerimeterPoint wrapped(double phi);
  Point2 embed() const;
};

// Tangent line to the unit circle at angle phi, parameterized by t.
struct TangentLine {
  double phi = 0.0;
  Point2 at(double t) const;
  Point2 direction() const;
};

Point2 perimeter_point(double phi);
Point2 tangent_point(double phi, double t);

// Slack on the closed-halfplane visibility test dot(a, P) >= 1.
inline constexpr double kInspectSlack = 1e-12;

bool inspects(Point2 a, PerimeterPoint p);

class Polyline {
 public:
  // Throws InvalidArgument on fewer than two vertices, non-finite
  // coordinates or repeated consecutive vertices.
  explicit Polyline(std::vector<Point2> vertices);

  const std::vector<Point2>& vertices() const { return vertices_; }
  // cumulative()[i] is the arclength from vertex 0 to vertex i.
  const std::vector<double>& cumulative() const { return cumulative_; }
  double length() const { return cumulative_.back(); }
  std::size_t size() const { return vertices_.size(); }

 private:
  std::vector<Point2> vertices_;
  std::vector<double> cumulative_;
};

// Arclength to the first point of the polyline that inspects p, or nullopt
// when no point does.
std::optional<double> first_inspection_arclength(const Polyline& traj,
                                                 PerimeterPoint p);

void write_csv(std::ostream& os, const Polyline& traj);
Polyline read_polyline_csv(std::istream& is);

}  // namespace adi
