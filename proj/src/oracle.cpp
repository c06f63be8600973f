#include "covsolve/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace covsolve::oracle {

std::pair<double, std::vector<std::int32_t>> brute_force_opt(const CoverageInstance& inst,
                                                             const Reward& reward,
                                                             std::int64_t k) {
  if (k < 0) throw std::invalid_argument("brute_force_opt: negative k");
  k = std::min(k, inst.n);

  double combos = 1.0;
  for (std::int64_t i = 0; i < k; ++i)
    combos *= static_cast<double>(inst.n - i) / static_cast<double>(i + 1);
  if (combos > 1e7)
    throw std::invalid_argument("brute_force_opt: C(n,k) exceeds the 1e7 budget");

  // Lexicographic enumeration with strict improvement keeps the smallest
  // argmax.
  std::vector<std::int32_t> pick(k);
  for (std::int64_t i = 0; i < k; ++i) pick[i] = static_cast<std::int32_t>(i);
  std::vector<std::int32_t> best = pick;
  double best_value = coverage_discrete(inst, reward, pick);
  if (k == 0) return {best_value, {}};

  while (true) {
    // Advance to the next k-combination of [0, n).
    std::int64_t pos = k - 1;
    while (pos >= 0 && pick[pos] == inst.n - k + pos) --pos;
    if (pos < 0) break;
    ++pick[pos];
    for (std::int64_t t = pos + 1; t < k; ++t) pick[t] = pick[t - 1] + 1;
    double value = coverage_discrete(inst, reward, pick);
    if (value > best_value) {
      best_value = value;
      best = pick;
    }
  }
  return {best_value, best};
}

std::vector<double> reference_project(std::span<const double> x, std::int64_t k) {
  auto n = static_cast<std::int64_t>(x.size());
  if (n > 2000) throw std::invalid_argument("reference_project: n exceeds 2000");
  if (k < 0 || k > n) throw std::invalid_argument("reference_project: k outside [0,n]");

  auto clamped_sum = [&](double lambda) {
    double s = 0;
    for (double v : x) {
      double y = v - lambda;
      if (y > 1)
        s += 1;
      else if (y > 0)
        s += y;
    }
    return s;
  };

  std::vector<double> out(n);
  if (k == 0) return out;
  if (k == n) {
    std::fill(out.begin(), out.end(), 1.0);
    return out;
  }

  std::vector<double> points;
  points.reserve(2 * n);
  for (double v : x) {
    points.push_back(v - 1.0);
    points.push_back(v);
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  double target = static_cast<double>(k);
  double lambda = points.front();
  for (std::size_t idx = 0; idx + 1 < points.size(); ++idx) {
    double f1 = clamped_sum(points[idx]);
    double f2 = clamped_sum(points[idx + 1]);
    if (f1 >= target && target > f2) {
      lambda = points[idx] + (points[idx + 1] - points[idx]) * (f1 - target) / (f1 - f2);
      break;
    }
  }
  for (std::int64_t i = 0; i < n; ++i)
    out[i] = std::clamp(x[i] - lambda, 0.0, 1.0);
  return out;
}

std::vector<double> fd_gradient(const CoverageInstance& inst, const Reward& reward,
                                std::span<const double> x, double mu, double h) {
  if (!(h > 0)) throw std::invalid_argument("fd_gradient: h must be positive");
  std::vector<double> probe(x.begin(), x.end());
  std::vector<double> grad(x.size());
  SmoothingContext ctx = make_smoothing_context(inst, reward, mu);
  for (std::size_t i = 0; i < probe.size(); ++i) {
    double orig = probe[i];
    probe[i] = orig + h;
    double up = smooth_value(inst, ctx, probe);
    probe[i] = orig - h;
    double down = smooth_value(inst, ctx, probe);
    probe[i] = orig;
    grad[i] = (up - down) / (2.0 * h);
  }
  return grad;
}

double exhaustive_multilinear(const CoverageInstance& inst, const Reward& reward,
                              std::span<const double> x) {
  if (inst.n > 20) throw std::invalid_argument("exhaustive_multilinear: n exceeds 20");
  if (static_cast<std::int64_t>(x.size()) != inst.n)
    throw std::invalid_argument("exhaustive_multilinear: vector length mismatch");

  double total = 0;
  auto full = static_cast<std::uint32_t>(1u << inst.n);
  std::vector<std::int32_t> members;
  for (std::uint32_t mask = 0; mask < full; ++mask) {
    double prob = 1.0;
    members.clear();
    for (std::int64_t i = 0; i < inst.n; ++i) {
      if (mask & (1u << i)) {
        prob *= x[i];
        members.push_back(static_cast<std::int32_t>(i));
      } else {
        prob *= 1.0 - x[i];
      }
    }
    if (prob > 0) total += prob * coverage_discrete(inst, reward, members);
  }
  return total;
}

}  // namespace covsolve::oracle
