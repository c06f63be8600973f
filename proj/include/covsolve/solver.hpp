#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "covsolve/instance.hpp"
#include "covsolve/objective.hpp"
#include "covsolve/reward.hpp"

namespace covsolve {

// Raised when log(d_R) vanishes (all right degrees 1): the objective is
// modular, greedy is exact, and the smoothing parameter is undefined.
// accelerated_solve catches this and returns the greedy point flagged.
struct DegenerateSmoothing : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Schedule {
  double mu = 0;
  double eta = 0;
  long long T = 0;
  double tol = 1e-6;
};

// mu = eps*C_greedy / (2 log d_R), eta = 4*mu/d_R,
// T = ceil( 2/(eps*C_greedy) * sqrt(k*d_R*log(d_R) / ((1-1/e)(1+1/e))) ).
// Expects values for a weight-normalized instance (sum w = 1).
Schedule make_schedule(double epsilon, double c_greedy, double d_r, std::int64_t k,
                       double tol = 1e-6);

// F(lambda; x) = sum_i clamp(x_i - lambda, 0, 1); continuous, nonincreasing,
// piecewise linear in lambda.
double clamped_shifted_sum(std::span<const double> x, double lambda);

// Euclidean projection onto Delta_{n,k}: y_i = clamp(x_i - lambda*, 0, 1)
// with lambda* located by sorting the 2n breakpoints {x_i - 1, x_i}
// (deduplicated), binary-searching the bracketing pair, and linear
// interpolation. O(n log n).
FractionalPoint hypersimplex_project(std::span<const double> x, std::int64_t k);

struct SolveOptions {
  double epsilon = 0.01;
  std::optional<double> eta;        // absolute step size override
  std::optional<double> eta_scale;  // multiplier on the theoretical 4*mu/d_R
  double tol = 1e-6;
  std::optional<long long> max_iter;
  bool early_stop = true;
  int early_stop_window = 10;
  bool record_trace = true;
};

struct SolveReport {
  // Schedule actually used (normalized weight units; see weight_scale).
  double epsilon = 0;
  double mu = 0;
  double eta = 0;
  long long T = 0;
  double tol = 0;

  // Objective values in the input weight scale.
  double greedy_value = 0;
  double best_value = 0;          // max true C(x^t) over all iterates
  double final_smooth_value = 0;  // smooth objective at the last iterate
  double final_true_value = 0;    // C at the last iterate

  long long iterations = 0;  // gradient steps executed
  bool stopped_early = false;
  bool degenerate = false;  // smoothing degenerate; greedy point returned
  double weight_scale = 1;  // sum of input weights

  // Index t holds values at x^(t); index 0 is the greedy start.
  std::vector<double> smooth_trace;
  std::vector<double> true_trace;

  double greedy_seconds = 0;
  double solve_seconds = 0;
};

struct SolveResult {
  FractionalPoint best_x;  // iterate with the best true objective seen
  std::vector<std::int32_t> greedy_set;
  SolveReport report;
};

// Algorithm: greedy initialization, schedule, FISTA with projection onto
// Delta_{n,k}, best-true-iterate tracking (never worse than greedy), early
// stop when the relative improvement of the smooth objective over a
// trailing window drops below tol.
SolveResult accelerated_solve(const CoverageInstance& inst, const Reward& reward,
                              std::int64_t k, const SolveOptions& opts = {});

}  // namespace covsolve
