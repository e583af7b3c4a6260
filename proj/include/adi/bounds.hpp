#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include <json.hpp>

#include "adi/exec.hpp"

namespace adi {

// Best previously published average-cost upper bound.
inline constexpr double kPriorUpperBound = 3.5509015;
inline constexpr double kThetaLo = 0.52;
inline constexpr double kThetaHi = 1.148;

// Analytic lower bound h(theta) on the cost of any deployment angle theta.
double h_lower(double theta);
double h_prime(double theta);

// Denominator of the lower-bound weights (i - 1)/D.
enum class WeightDenominator { k, k_plus_1 };

struct NlpOptions {
  WeightDenominator denominator = WeightDenominator::k_plus_1;
  double kkt_tol = 1e-8;
  double stationarity_tol = 1e-9;
  int max_iterations = 500;
};

struct NlpSolution {
  double theta;
  int k;
  std::vector<double> t;  // t_0 .. t_k, t_k = tan(theta)
  double objective;
  double kkt_residual;
  double composed_bound;  // b_theta(theta, objective)
  int iterations;
};

// sum_{i=1}^{k} w_i |A_i - A_{i-1}| with A_i on the tangent line at
// 2pi - i*alpha, alpha = 2(pi - theta)/k. t has k + 1 entries.
double nlp_objective(double theta, int k, std::span<const double> t,
                     WeightDenominator den = WeightDenominator::k_plus_1);

// Gradient with respect to all k + 1 entries of t (zero subgradient choice
// on degenerate segments).
std::vector<double> nlp_gradient(double theta, int k, std::span<const double> t,
                                 WeightDenominator den = WeightDenominator::k_plus_1);

// max_j |t_j - max(0, t_j - g_j)| over the free entries t_0 .. t_{k-1}.
double nlp_kkt_residual(double theta, int k, std::span<const double> t,
                        WeightDenominator den = WeightDenominator::k_plus_1);

// Minimizes the objective over t_0..t_{k-1} >= 0 with t_k = tan(theta) by a
// projected Newton method. MaxIterations if the residual target is missed.
NlpSolution nlp_lower_bound(double theta, int k, const NlpOptions& opt = {});

std::vector<NlpSolution> nlp_sweep(double theta_lo, double theta_hi, int grid, int k,
                                   const NlpOptions& opt = {}, Exec exec = Exec::openmp);

struct AngleWindow {
  double theta_lo;
  double theta_hi;
  double h_at_hi;
  double nlp_bound_at_lo;
  double margin_hi;
  double margin_lo;
  int k;
};

// Re-derives both ends of the admissible deployment-angle window against the
// prior upper bound. WindowViolated if a margin is not positive.
AngleWindow theta_window(int k = 1000, const NlpOptions& opt = {});

nlohmann::json to_json(const NlpSolution& s, bool with_t = false);
nlohmann::json to_json(const AngleWindow& w);
void write_csv(std::ostream& os, const std::vector<NlpSolution>& sols);
void write_svg(std::ostream& os, const std::vector<NlpSolution>& sols);

}  // namespace adi
