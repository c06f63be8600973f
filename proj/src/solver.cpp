#include "covsolve/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "covsolve/greedy.hpp"

namespace covsolve {

namespace {

constexpr double kOneMinusInvE = 1.0 - 0.36787944117144233;
constexpr double kOnePlusInvE = 1.0 + 0.36787944117144233;

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

Schedule make_schedule(double epsilon, double c_greedy, double d_r, std::int64_t k,
                       double tol) {
  if (!(epsilon > 0)) throw std::invalid_argument("make_schedule: epsilon must be positive");
  if (k < 1) throw std::invalid_argument("make_schedule: k must be >= 1");
  if (tol < 0) throw std::invalid_argument("make_schedule: tol must be >= 0");
  if (!(c_greedy > 0) || d_r <= 1.0 + 1e-9)
    throw DegenerateSmoothing("smoothing undefined: log(d_R) or C(x_greedy) vanishes");

  Schedule s;
  s.tol = tol;
  double log_dr = std::log(d_r);
  s.mu = epsilon * c_greedy / (2.0 * log_dr);
  s.eta = 4.0 * s.mu / d_r;
  double t = std::ceil(2.0 / (epsilon * c_greedy) *
                       std::sqrt(static_cast<double>(k) * d_r * log_dr /
                                 (kOneMinusInvE * kOnePlusInvE)));
  s.T = t > 2e18 ? (1LL << 61) : static_cast<long long>(t);
  if (s.T < 1) s.T = 1;
  return s;
}

double clamped_shifted_sum(std::span<const double> x, double lambda) {
  double total = 0;
  for (double v : x) total += std::clamp(v - lambda, 0.0, 1.0);
  return total;
}

FractionalPoint hypersimplex_project(std::span<const double> x, std::int64_t k) {
  auto n = static_cast<std::int64_t>(x.size());
  if (k < 0 || k > n)
    throw std::invalid_argument("hypersimplex_project: k outside [0,n]");

  FractionalPoint out;
  out.k = k;
  if (k == 0) {
    out.x.assign(n, 0.0);
    return out;
  }
  if (k == n) {
    out.x.assign(n, 1.0);
    return out;
  }

  // Breakpoints of the clamped shifted sum, deduplicated so adjacent pairs
  // bracket segments of nonzero length.
  std::vector<double> points;
  points.reserve(2 * n);
  for (double v : x) {
    points.push_back(v - 1.0);
    points.push_back(v);
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  // F is nonincreasing with F(points.front()) = n >= k and
  // F(points.back()) = 0 < k; find the bracketing pair by binary search.
  double target = static_cast<double>(k);
  std::size_t lo = 0, hi = points.size() - 1;
  while (hi - lo > 1) {
    std::size_t mid = (lo + hi) / 2;
    if (clamped_shifted_sum(x, points[mid]) >= target)
      lo = mid;
    else
      hi = mid;
  }
  double lambda1 = points[lo], lambda2 = points[hi];
  double f1 = clamped_shifted_sum(x, lambda1);
  double f2 = clamped_shifted_sum(x, lambda2);
  // f1 >= k > f2, so the interpolation denominator is strictly positive.
  double lambda = lambda1 + (lambda2 - lambda1) * (f1 - target) / (f1 - f2);

  out.x.resize(n);
  for (std::int64_t i = 0; i < n; ++i) out.x[i] = std::clamp(x[i] - lambda, 0.0, 1.0);
  return out;
}

SolveResult accelerated_solve(const CoverageInstance& inst, const Reward& reward,
                              std::int64_t k, const SolveOptions& opts) {
  if (k < 0) throw std::invalid_argument("accelerated_solve: negative budget");
  if (!(opts.epsilon > 0)) throw std::invalid_argument("accelerated_solve: epsilon must be positive");
  if (opts.eta && opts.eta_scale)
    throw std::invalid_argument("accelerated_solve: eta and eta_scale are mutually exclusive");

  SolveResult result;
  SolveReport& rep = result.report;
  rep.epsilon = opts.epsilon;
  rep.tol = opts.tol;
  rep.weight_scale = inst.total_weight();
  if (!(rep.weight_scale > 0))
    throw std::invalid_argument("accelerated_solve: weight sum is zero");

  // The schedule formulas assume sum w_j = 1; run the whole iteration in
  // normalized units and rescale reported values at the end.
  const double scale = rep.weight_scale;
  const bool unit = std::abs(scale - 1.0) <= 1e-12;
  const CoverageInstance normalized = unit ? CoverageInstance{} : normalize_weights(inst);
  const CoverageInstance& work = unit ? inst : normalized;

  auto t0 = std::chrono::steady_clock::now();
  GreedyResult greedy = greedy_select(work, reward, k);
  rep.greedy_seconds = seconds_since(t0);
  std::int64_t kk = std::min(k, inst.n);  // effective budget
  rep.greedy_value = greedy.value * scale;
  result.greedy_set = greedy.selected;

  FractionalPoint x0 = greedy_indicator(greedy.selected, inst.n, kk);

  auto finish_with = [&](FractionalPoint point, double value_normalized) {
    result.best_x = std::move(point);
    rep.best_value = value_normalized * scale;
    rep.final_true_value = value_normalized * scale;
    rep.final_smooth_value = value_normalized * scale;
    if (opts.record_trace) {
      rep.smooth_trace.assign(1, rep.final_smooth_value);
      rep.true_trace.assign(1, rep.final_true_value);
    }
  };

  if (kk == 0) {
    finish_with(std::move(x0), 0.0);
    return result;
  }

  auto t1 = std::chrono::steady_clock::now();
  Schedule schedule;
  try {
    schedule = make_schedule(opts.epsilon, greedy.value, effective_degree(work), kk, opts.tol);
  } catch (const DegenerateSmoothing&) {
    // All right degrees are 1: the objective is modular and greedy is exact.
    rep.degenerate = true;
    finish_with(std::move(x0), greedy.value);
    rep.solve_seconds = seconds_since(t1);
    return result;
  }
  if (opts.eta)
    schedule.eta = *opts.eta;
  else if (opts.eta_scale)
    schedule.eta *= *opts.eta_scale;
  if (!(schedule.eta > 0)) throw std::invalid_argument("accelerated_solve: step size must be positive");
  rep.mu = schedule.mu;
  rep.eta = schedule.eta;
  rep.T = schedule.T;

  long long iter_budget = schedule.T;
  if (opts.max_iter) iter_budget = std::min(iter_budget, *opts.max_iter);

  SmoothingContext ctx = make_smoothing_context(work, reward, schedule.mu);

  std::vector<double> x_prev = x0.x;
  std::vector<double> x_cur = x0.x;
  std::vector<double> y = x0.x;
  std::vector<double> grad(inst.n, 0.0);

  auto [smooth0, true0] = smooth_and_fractional_value(work, ctx, reward, x0.x);
  double best_value = true0;
  std::vector<double> best_x = x0.x;
  if (opts.record_trace) {
    rep.smooth_trace.reserve(std::min<long long>(iter_budget + 1, 1 << 20));
    rep.smooth_trace.push_back(smooth0);
    rep.true_trace.push_back(true0);
  }

  double beta = 1.0;
  double last_smooth = smooth0;
  double last_true = true0;
  std::vector<double> window;  // trailing smooth values for the early stop
  window.push_back(smooth0);

  long long t = 0;
  for (; t < iter_budget; ++t) {
    smooth_gradient(work, ctx, y, grad);
    for (std::int64_t i = 0; i < inst.n; ++i) {
      double g = grad[i];
      if (!std::isfinite(g))
        throw std::runtime_error("accelerated_solve: non-finite gradient at iteration " +
                                 std::to_string(t));
      y[i] += schedule.eta * g;
    }
    FractionalPoint next = hypersimplex_project(y, kk);
    x_prev.swap(x_cur);
    x_cur = std::move(next.x);

    double beta_next = (1.0 + std::sqrt(1.0 + 4.0 * beta * beta)) / 2.0;
    double momentum = (beta - 1.0) / beta_next;
    for (std::int64_t i = 0; i < inst.n; ++i)
      y[i] = x_cur[i] + momentum * (x_cur[i] - x_prev[i]);
    beta = beta_next;

    auto [smooth_t, true_t] = smooth_and_fractional_value(work, ctx, reward, x_cur);
    if (opts.record_trace) {
      rep.smooth_trace.push_back(smooth_t);
      rep.true_trace.push_back(true_t);
    }
    if (true_t > best_value) {
      best_value = true_t;
      best_x = x_cur;
    }
    last_smooth = smooth_t;
    last_true = true_t;

    if (opts.early_stop && opts.early_stop_window > 0) {
      window.push_back(smooth_t);
      auto w = static_cast<std::size_t>(opts.early_stop_window);
      if (window.size() > w + 1) window.erase(window.begin());
      if (window.size() == w + 1) {
        double denom = std::max(std::abs(smooth_t), 1e-300);
        double rel = (smooth_t - window.front()) / (static_cast<double>(w) * denom);
        if (rel < schedule.tol) {
          ++t;
          rep.stopped_early = true;
          break;
        }
      }
    }
  }

  rep.iterations = t;
  rep.best_value = best_value * scale;
  rep.final_smooth_value = last_smooth * scale;
  rep.final_true_value = last_true * scale;
  if (opts.record_trace && !unit) {
    for (double& v : rep.smooth_trace) v *= scale;
    for (double& v : rep.true_trace) v *= scale;
  }
  result.best_x.k = kk;
  result.best_x.x = std::move(best_x);
  rep.solve_seconds = seconds_since(t1);
  return result;
}

}  // namespace covsolve
