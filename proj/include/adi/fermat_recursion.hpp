#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include <json.hpp>

#include "adi/geometry.hpp"

namespace adi {

struct RecursionStep {
  int i;
  double x;  // incidence angle x_i
  double y;  // refraction angle y_i
  double t;  // tangent parameter t_i
  double d;  // segment length |A_i A_{i-1}|
};

// Polygonal chain A_0, A_1, ..., A_m with A_i on the tangent line at angle
// 2pi - i*alpha. In full-circle mode alpha = 2pi/n; in deployment-angle mode
// (theta set) alpha = 2(pi - theta)/k and n holds k.
struct DiscreteTrajectory {
  int n = 0;
  double alpha = 0.0;
  double tau0 = 0.0;
  std::optional<double> theta;
  std::vector<RecursionStep> steps;  // steps[j] has i = j + 1
  std::vector<Point2> points;        // A_0 .. A_m
  double cost_weighted = 0.0;        // sum i d_i / (m + 1)

  int m() const { return static_cast<int>(steps.size()); }
  std::vector<double> t_values() const;  // t_0 .. t_m
  double tangency_angle(int i) const;    // angle of the line holding A_i
};

// Runs the recursion forward from t_0 = tau0 with spacing alpha for m steps.
// Throws AngleDomain when y_{i-1} - alpha <= 0 and TriangleDegenerate when
// t_{i-1} <= tan(alpha/2); the error index is the offending i.
DiscreteTrajectory forward_recursion_alpha(double tau0, double alpha, int m);

// Full-circle mode, alpha = 2pi/n. Requires n >= 5 and m <= n.
DiscreteTrajectory forward_recursion(double tau0, int n, int m);

struct ShootOptions {
  double tol = 1e-10;
  double bracket_hi = 10.0;
  double bracket_lo_offset = 1e-6;
};

// Finds t_0 so that the recursion with alpha = 2(pi - theta)/k lands on
// t_k = tan(theta). The last vertex is set to exactly (1, tan theta).
DiscreteTrajectory shoot_theta(double theta, int k, const ShootOptions& opt = {});

enum class Weights { upper, lower };

double discrete_cost(const DiscreteTrajectory& traj, Weights w);

// Residual cos(x_i)/cos(y_i) - (i+1)/i.
double snell_residual(const RecursionStep& s);

struct RefractionInstance {
  Point2 a1;
  Point2 a2;
  double s1;
  double s2;
  double x_star;       // crossing abscissa on the interface y = 0
  double alpha1;       // incidence angle from the normal
  double alpha2;       // refraction angle from the normal
  double travel_time;
};

double refraction_travel_time(Point2 a1, Point2 a2, double s1, double s2, double x);

// Least-time crossing between two half-planes with speeds s1 (y > 0) and
// s2 (y < 0): golden section to 1e-10 followed by a Newton polish.
RefractionInstance refraction_optimum(Point2 a1, Point2 a2, double s1, double s2);

nlohmann::json to_json(const DiscreteTrajectory& traj);
Polyline to_polyline(const DiscreteTrajectory& traj);  // A_m -> ... -> A_0

}  // namespace adi
