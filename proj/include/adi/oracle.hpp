#pragma once

#include <span>
#include <vector>

#include <json.hpp>

#include "adi/exec.hpp"
#include "adi/fermat_recursion.hpp"
#include "adi/geometry.hpp"
#include "adi/ode_system.hpp"

namespace adi {

struct OracleResult {
  double mean_cost;  // over inspected samples only
  long samples;
  long never_count;
  double max_cost;
  double trajectory_length;
};

// Mean first-inspection arclength over the given perimeter angles.
OracleResult average_cost_at_angles(const Polyline& traj, std::span<const double> phis,
                                    Exec exec = Exec::openmp);

// Per-angle first-inspection arclengths (NaN for never inspected).
std::vector<double> inspection_times(const Polyline& traj, std::span<const double> phis,
                                     Exec exec = Exec::openmp);

// Midpoint samples 2 pi j/M + pi/M over the whole circle. Requires the
// trajectory to start at the origin and M >= 100.
OracleResult average_cost_full(const Polyline& traj, long M, Exec exec = Exec::openmp);

// Midpoint samples over [2 theta, 2 pi] for a trajectory starting at
// (1, tan theta).
OracleResult average_cost_partial(const Polyline& traj, double theta, long M,
                                  Exec exec = Exec::openmp);

bool is_inspective(const Polyline& traj, long resolution, Exec exec = Exec::openmp);

// Tangency angles 2 pi - i alpha of a discrete chain, i = 0 .. m.
std::vector<double> tangency_angles(const DiscreteTrajectory& traj);

// Origin -> (1, tan theta) -> T(x) for x from xi down to x0 in `segments`
// equal parameter steps.
Polyline assemble_trajectory(const OdeSolution& sol, double xi, int segments = 10000);

nlohmann::json to_json(const OracleResult& r);

}  // namespace adi
