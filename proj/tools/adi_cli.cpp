#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "adi/bounds.hpp"
#include "adi/convergence.hpp"
#include "adi/cost.hpp"
#include "adi/error.hpp"
#include "adi/feasibility.hpp"
#include "adi/fermat_recursion.hpp"
#include "adi/ode_system.hpp"
#include "adi/optimizer.hpp"
#include "adi/oracle.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitCheck = 3;

constexpr double kRefTau0 = 1.6469768608776936;
constexpr double kReferenceCost = 3.5492596;
constexpr double kIsbellCost = 6.397242;  // 1 + sqrt(3) + 7 pi / 6

struct Config {
  std::optional<double> tau0;
  std::optional<double> theta;
  int k = 1000;
  std::optional<int> grid;
  std::optional<double> lo;
  std::optional<double> hi;
  double tol_ode = 1e-12;
  double tol_bisect = 1e-8;
  double tol_brent = 1e-10;
  double tol_quad_rel = 1e-12;
  double tol_quad_abs = 1e-14;
  double x0 = 1e-6;
  long samples = 100000;
  std::string out;
  std::vector<std::string> formats{"json"};
  std::uint64_t seed = 20240601;

  adi::PipelineOptions pipeline() const {
    adi::PipelineOptions p;
    p.ode.x0 = x0;
    p.ode.rtol = tol_ode;
    p.ode.atol = tol_ode;
    p.feas.tol_bisect = tol_bisect;
    p.feas.tol_brent = tol_brent;
    p.quad.rtol = tol_quad_rel;
    p.quad.atol = tol_quad_abs;
    return p;
  }
  bool wants(const std::string& f) const {
    return std::find(formats.begin(), formats.end(), f) != formats.end();
  }
};

// Writes <out>/<stem>.<ext> when --out is set and the format was requested.
void emit(const Config& c, const std::string& stem, const std::string& ext,
          const std::function<void(std::ostream&)>& body) {
  if (c.out.empty() || !c.wants(ext)) return;
  fs::create_directories(c.out);
  const fs::path p = fs::path(c.out) / (stem + "." + ext);
  std::ofstream os(p, std::ios::binary);
  if (!os) throw adi::Error(adi::ErrorKind::InvalidArgument, "cannot write " + p.string());
  body(os);
}

void emit_json(const Config& c, const std::string& stem, const json& j) {
  emit(c, stem, "json", [&](std::ostream& os) { os << j.dump(2) << '\n'; });
}

json check(const std::string& name, double value, double reference, double tol, bool pass) {
  return {{"name", name}, {"value", value}, {"reference", reference}, {"tol", tol}, {"pass", pass}};
}

int cmd_optimize(const Config& c) {
  adi::RefineOptions r;
  r.grid = c.grid.value_or(2000);
  const auto s = adi::refine_minimum(c.lo.value_or(adi::kWindowLo), c.hi.value_or(adi::kWindowHi),
                                     c.pipeline(), r);
  const json j = adi::to_json(s);
  emit_json(c, "optimize", j);
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_trace(const Config& c) {
  const auto p = c.pipeline();
  const double tau0 = c.tau0.value_or(kRefTau0);
  const auto sol = adi::integrate(tau0, p.ode);
  const auto rep = adi::assess_feasibility(sol, p.feas);
  json j = {{"ode", adi::metadata_json(sol)}, {"feasibility", adi::to_json(rep)}};
  const int resolution = c.grid.value_or(1000);
  emit(c, "trace_ode", "csv", [&](std::ostream& os) { adi::write_csv(os, sol, resolution); });
  if (rep.error || !rep.feasible) {
    j["error"] = {{"kind", rep.error ? adi::to_string(*rep.error) : "Infeasible"},
                  {"message", rep.message.empty() ? "clearance below threshold" : rep.message}};
    emit_json(c, "trace", j);
    std::cout << j.dump(2) << '\n';
    return kExitNumerical;
  }
  const double xi = adi::deployment_parameter_exact(sol, p.feas);
  j["cost"] = adi::to_json(adi::total_cost(sol, xi, p.quad));
  emit_json(c, "trace", j);
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_sweep_feasibility(const Config& c) {
  const auto p = c.pipeline();
  const double lo = c.lo.value_or(adi::kWindowLo), hi = c.hi.value_or(adi::kWindowHi);
  const int grid = c.grid.value_or(2000);
  const auto reps = adi::feasibility_sweep(lo, hi, grid, p.ode, p.feas);
  emit(c, "sweep_feasibility", "csv", [&](std::ostream& os) { adi::write_csv(os, reps); });
  emit(c, "sweep_feasibility", "svg", [&](std::ostream& os) { adi::write_svg(os, reps); });
  json arr = json::array();
  for (const auto& r : reps) arr.push_back(adi::to_json(r));
  emit_json(c, "sweep_feasibility", arr);

  long infeasible = 0;
  double tau_min = INFINITY, th_lo = INFINITY, th_hi = -INFINITY;
  bool xi_monotone = true;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const auto& r = reps[i];
    if (!r.feasible) {
      ++infeasible;
      continue;
    }
    tau_min = std::min(tau_min, r.tau_min);
    th_lo = std::min(th_lo, r.theta);
    th_hi = std::max(th_hi, r.theta);
    if (i > 0 && reps[i - 1].feasible && !(r.xi < reps[i - 1].xi)) xi_monotone = false;
  }
  const json s = {{"lo", lo},           {"hi", hi},
                  {"grid", grid},       {"infeasible", infeasible},
                  {"min_tau_min", tau_min}, {"theta_range", {th_lo, th_hi}},
                  {"xi_decreasing", xi_monotone}};
  std::cout << s.dump(2) << '\n';
  return infeasible == 0 ? 0 : kExitNumerical;
}

int cmd_sweep_cost(const Config& c) {
  const double lo = c.lo.value_or(adi::kWindowLo), hi = c.hi.value_or(adi::kWindowHi);
  const int grid = c.grid.value_or(2000);
  const auto sweep = adi::sweep_cost(lo, hi, grid, c.pipeline());
  emit(c, "sweep_cost", "csv", [&](std::ostream& os) { adi::write_csv(os, sweep); });
  emit(c, "sweep_cost", "svg", [&](std::ostream& os) { adi::write_svg(os, sweep); });
  json arr = json::array();
  long failed = 0;
  const adi::CostSample* best = nullptr;
  for (const auto& s : sweep) {
    arr.push_back({{"tau0", s.tau0},
                   {"cost", s.error ? json(nullptr) : json(s.cost)},
                   {"error", s.error ? json(adi::to_string(*s.error)) : json(nullptr)}});
    if (s.error) ++failed;
    else if (!best || s.cost < best->cost) best = &s;
  }
  emit_json(c, "sweep_cost", arr);
  json s = {{"lo", lo}, {"hi", hi}, {"grid", grid}, {"failed", failed}};
  if (best) s["min"] = {{"tau0", best->tau0}, {"cost", best->cost}};
  std::cout << s.dump(2) << '\n';
  return failed == 0 ? 0 : kExitNumerical;
}

int cmd_lower_bound(const Config& c) {
  if (c.theta) {
    const auto sol = adi::nlp_lower_bound(*c.theta, c.k);
    emit_json(c, "lower_bound", adi::to_json(sol, true));
    emit(c, "lower_bound", "csv", [&](std::ostream& os) { adi::write_csv(os, {sol}); });
    std::cout << adi::to_json(sol).dump(2) << '\n';
    return 0;
  }
  const double lo = c.lo.value_or(0.0), hi = c.hi.value_or(adi::kThetaLo);
  const int grid = c.grid.value_or(100);
  const auto sols = adi::nlp_sweep(lo, hi, grid, c.k);
  emit(c, "lower_bound_sweep", "csv", [&](std::ostream& os) { adi::write_csv(os, sols); });
  emit(c, "lower_bound_sweep", "svg", [&](std::ostream& os) { adi::write_svg(os, sols); });
  json arr = json::array();
  bool decreasing = true;
  double min_bound = INFINITY;
  for (std::size_t i = 0; i < sols.size(); ++i) {
    arr.push_back(adi::to_json(sols[i]));
    min_bound = std::min(min_bound, sols[i].composed_bound);
    if (i > 0 && !(sols[i].composed_bound < sols[i - 1].composed_bound)) decreasing = false;
  }
  emit_json(c, "lower_bound_sweep", arr);
  const json s = {{"theta_lo", lo},
                  {"theta_hi", hi},
                  {"grid", grid},
                  {"k", c.k},
                  {"strictly_decreasing", decreasing},
                  {"min_composed_bound", min_bound}};
  std::cout << s.dump(2) << '\n';
  return 0;
}

int cmd_angle_bounds(const Config& c) {
  const json j = adi::to_json(adi::theta_window(c.k));
  emit_json(c, "angle_bounds", j);
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_verify(const Config& c) {
  json checks = json::array();

  // Exact-angle oracle against the weighted-length formula on random chains.
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> theta_dist(0.3, 1.2);
  std::uniform_int_distribution<int> k_dist(50, 400);
  double worst = 0.0, worst_nodes = 0.0;
  json pairs = json::array();
  for (int r = 0; r < 20; ++r) {
    const double th = theta_dist(rng);
    const int k = k_dist(rng);
    const auto tr = adi::shoot_theta(th, k);
    const auto phis = adi::tangency_angles(tr);
    const auto times = adi::inspection_times(adi::to_polyline(tr), phis);
    double sum = 0.0;
    for (double v : times) sum += v;
    // Node i is reached after the segments k .. i+1. Node 0 is excluded: the
    // start (1, tan theta) already lies on its tangent line.
    double node_gap = 0.0, acc = 0.0;
    for (int i = tr.m(); i >= 1; --i) {
      node_gap = std::max(node_gap, std::abs(times[i] - acc));
      acc += tr.steps[i - 1].d;
    }
    const double upper = adi::discrete_cost(tr, adi::Weights::upper);
    const double gap = std::abs(sum / (tr.m() + 1) - upper);
    worst = std::max(worst, gap);
    worst_nodes = std::max(worst_nodes, node_gap);
    pairs.push_back({{"theta", th}, {"k", k}, {"oracle", sum / (tr.m() + 1)}, {"formula", upper}});
  }
  checks.push_back(check("oracle_vs_weighted_length", worst, 0.0, 1e-9, worst <= 1e-9));
  checks.push_back(
      check("oracle_vs_partial_lengths_nodes_1_to_k", worst_nodes, 0.0, 1e-9, worst_nodes <= 1e-9));

  // Sampled oracle on the assembled optimal trajectory.
  const auto p = c.pipeline();
  const double tau0 = c.tau0.value_or(kRefTau0);
  const auto sol = adi::integrate(tau0, p.ode);
  const double xi = adi::deployment_parameter_exact(sol, p.feas);
  const double formula = adi::total_cost(sol, xi, p.quad).total;
  const auto traj = adi::assemble_trajectory(sol, xi, 10000);
  const auto orc = adi::average_cost_full(traj, c.samples);
  checks.push_back(check("oracle_mean_vs_reference", orc.mean_cost, kReferenceCost, 2e-3,
                         std::abs(orc.mean_cost - kReferenceCost) <= 2e-3));
  checks.push_back(check("oracle_mean_vs_cost_formula", orc.mean_cost, formula, 2e-3,
                         std::abs(orc.mean_cost - formula) <= 2e-3));
  checks.push_back(check("never_inspected_samples", static_cast<double>(orc.never_count), 0.0, 0.0,
                         orc.never_count == 0));
  checks.push_back(check("max_cost_at_least_worst_case_optimum", orc.max_cost, kIsbellCost, 1e-6,
                         orc.max_cost >= kIsbellCost - 1e-6));

  bool ok = true;
  for (const auto& ch : checks) ok = ok && ch["pass"].get<bool>();
  const json j = {{"seed", c.seed},
                  {"tau0", tau0},
                  {"samples", c.samples},
                  {"oracle", adi::to_json(orc)},
                  {"random_pairs", pairs},
                  {"checks", checks},
                  {"pass", ok}};
  emit_json(c, "verify", j);
  std::cout << j.dump(2) << '\n';
  return ok ? 0 : kExitCheck;
}

int cmd_converge(const Config& c) {
  const int n = c.grid.value_or(1000);
  auto ode = c.pipeline().ode;
  ode.tau_start = adi::TauStart::quadratic;
  const auto rows = adi::convergence_table(c.tau0.value_or(kRefTau0), {n, 2 * n, 4 * n},
                                           c.lo.value_or(0.1), c.hi.value_or(0.8), ode);
  emit(c, "converge", "csv", [&](std::ostream& os) { adi::write_csv(os, rows); });
  const json j = {{"tau0", c.tau0.value_or(kRefTau0)}, {"rows", adi::to_json(rows)}};
  emit_json(c, "converge", j);
  std::cout << j.dump(2) << '\n';
  return 0;
}

void add_options(CLI::App* sub, Config& c) {
  auto pos = CLI::PositiveNumber;
  sub->add_option("--tau0", c.tau0, "initial tangent parameter");
  sub->add_option("--theta", c.theta, "deployment angle (radians)")->check(CLI::Range(0.0, 1.5707963));
  sub->add_option("--k", c.k, "discrete chain size")->check(CLI::Range(5, 100000000));
  sub->add_option("--grid", c.grid, "sweep grid size")->check(CLI::Range(2, 100000000));
  sub->add_option("--lo", c.lo, "sweep lower end");
  sub->add_option("--hi", c.hi, "sweep upper end");
  sub->add_option("--tol-ode", c.tol_ode, "ODE rtol and atol")->check(pos);
  sub->add_option("--tol-bisect", c.tol_bisect, "deployment bisection tolerance")->check(pos);
  sub->add_option("--tol-brent", c.tol_brent, "clearance Brent tolerance")->check(pos);
  sub->add_option("--tol-quad-rel", c.tol_quad_rel, "quadrature rtol")->check(pos);
  sub->add_option("--tol-quad-abs", c.tol_quad_abs, "quadrature atol")->check(pos);
  sub->add_option("--x0", c.x0, "series start point")->check(CLI::Range(1e-12, 1e-5));
  sub->add_option("--samples", c.samples, "oracle samples M")->check(CLI::Range(100L, 100000000L));
  sub->add_option("--out", c.out, "output directory");
  sub->add_option("--format", c.formats, "json, csv, svg")
      ->delimiter(',')
      ->check(CLI::IsMember({"json", "csv", "svg"}));
  sub->add_option("--seed", c.seed, "seed for randomized checks");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal average-case disk inspection"};
  app.require_subcommand(1);
  Config cfg;
  const std::vector<std::pair<std::string, std::function<int(const Config&)>>> commands = {
      {"optimize", cmd_optimize},
      {"trace", cmd_trace},
      {"sweep-feasibility", cmd_sweep_feasibility},
      {"sweep-cost", cmd_sweep_cost},
      {"lower-bound", cmd_lower_bound},
      {"angle-bounds", cmd_angle_bounds},
      {"verify", cmd_verify},
      {"converge", cmd_converge},
  };
  std::vector<CLI::App*> subs;
  for (const auto& [name, fn] : commands) subs.push_back(app.add_subcommand(name));
  subs[0]->description("minimize the cost over the feasible tau0 window");
  subs[1]->description("integrate one tau0: ODE samples, feasibility, cost");
  subs[2]->description("feasibility report over a tau0 grid");
  subs[3]->description("cost over a tau0 grid");
  subs[4]->description("NLP lower bound at --theta, or a theta sweep");
  subs[5]->description("admissible deployment-angle window");
  subs[6]->description("oracle cross-checks");
  subs[7]->description("discrete-to-continuum convergence table");
  for (auto* s : subs) add_options(s, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (!subs[i]->parsed()) continue;
    try {
      return commands[i].second(cfg);
    } catch (const adi::Error& e) {
      json j = {{"error", {{"kind", adi::to_string(e.kind())}, {"message", e.what()}}}};
      if (e.index() >= 0) j["error"]["index"] = e.index();
      std::cout << j.dump(2) << '\n';
      return kExitNumerical;
    } catch (const std::exception& e) {
      std::cout << json{{"error", {{"kind", "Internal"}, {"message", e.what()}}}}.dump(2) << '\n';
      return kExitNumerical;
    }
  }
  return kExitUsage;
}
