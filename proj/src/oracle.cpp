#include "adi/oracle.hpp"

#include <cmath>
#include <limits>

#include "adi/error.hpp"
#include "adi/numerics.hpp"

namespace adi {

using num::kPi;

std::vector<double> inspection_times(const Polyline& traj, std::span<const double> phis,
                                     Exec exec) {
  std::vector<double> out(phis.size());
  parallel_for(exec, phis.size(), [&](std::size_t j) {
    const auto s = first_inspection_arclength(traj, PerimeterPoint::wrapped(phis[j]));
    out[j] = s ? *s : std::numeric_limits<double>::quiet_NaN();
  });
  return out;
}

OracleResult average_cost_at_angles(const Polyline& traj, std::span<const double> phis,
                                    Exec exec) {
  const auto times = inspection_times(traj, phis, exec);
  OracleResult r{0.0, static_cast<long>(phis.size()), 0, 0.0, traj.length()};
  double sum = 0.0;
  for (double v : times) {
    if (std::isnan(v)) {
      ++r.never_count;
      continue;
    }
    sum += v;
    r.max_cost = std::max(r.max_cost, v);
  }
  const long hit = r.samples - r.never_count;
  r.mean_cost = hit > 0 ? sum / hit : std::numeric_limits<double>::quiet_NaN();
  return r;
}

OracleResult average_cost_full(const Polyline& traj, long M, Exec exec) {
  if (M < 100) throw Error(ErrorKind::InvalidArgument, "M must be at least 100");
  const Point2 o = traj.vertices().front();
  if (o.x != 0.0 || o.y != 0.0)
    throw Error(ErrorKind::InvalidArgument, "trajectory must start at the origin");
  std::vector<double> phis(static_cast<std::size_t>(M));
  for (long j = 0; j < M; ++j) phis[j] = 2.0 * kPi * j / M + kPi / M;
  return average_cost_at_angles(traj, phis, exec);
}

OracleResult average_cost_partial(const Polyline& traj, double theta, long M, Exec exec) {
  if (M < 1) throw Error(ErrorKind::InvalidArgument, "M must be positive");
  if (!(theta >= 0.0 && theta < kPi / 2.0))
    throw Error(ErrorKind::InvalidArgument, "theta must lie in [0, pi/2)");
  const Point2 s = traj.vertices().front();
  if (std::abs(s.x - 1.0) > 1e-12 || std::abs(s.y - std::tan(theta)) > 1e-9)
    throw Error(ErrorKind::InvalidArgument, "trajectory must start at (1, tan theta)");
  const double lo = 2.0 * theta;
  const double span = 2.0 * kPi - lo;
  std::vector<double> phis(static_cast<std::size_t>(M));
  for (long j = 0; j < M; ++j) phis[j] = lo + span * (j + 0.5) / M;
  return average_cost_at_angles(traj, phis, exec);
}

bool is_inspective(const Polyline& traj, long resolution, Exec exec) {
  if (resolution < 1) throw Error(ErrorKind::InvalidArgument, "resolution must be positive");
  std::vector<double> phis(static_cast<std::size_t>(resolution));
  for (long j = 0; j < resolution; ++j) phis[j] = 2.0 * kPi * (j + 0.5) / resolution;
  return average_cost_at_angles(traj, phis, exec).never_count == 0;
}

std::vector<double> tangency_angles(const DiscreteTrajectory& traj) {
  std::vector<double> phis;
  phis.reserve(traj.points.size());
  for (int i = 0; i <= traj.m(); ++i) phis.push_back(traj.tangency_angle(i));
  if (traj.theta) phis.back() = 2.0 * *traj.theta;
  return phis;
}

Polyline assemble_trajectory(const OdeSolution& sol, double xi, int segments) {
  if (segments < 1) throw Error(ErrorKind::InvalidArgument, "segments must be positive");
  const double theta = (1.0 - xi) * kPi;
  std::vector<Point2> v;
  v.reserve(static_cast<std::size_t>(segments) + 2);
  v.push_back({0.0, 0.0});
  v.push_back({1.0, std::tan(theta)});
  const double a = sol.x_begin();
  for (int i = 0; i <= segments; ++i) {
    const double x = (i == segments) ? a : xi - (xi - a) * i / segments;
    const Point2 p = curve_point(sol, x);
    if (distance(p, v.back()) > 1e-15) v.push_back(p);
  }
  return Polyline(std::move(v));
}

nlohmann::json to_json(const OracleResult& r) {
  return {{"mean_cost", r.mean_cost},
          {"samples", r.samples},
          {"never_count", r.never_count},
          {"max_cost", r.max_cost},
          {"trajectory_length", r.trajectory_length}};
}

}  // namespace adi
