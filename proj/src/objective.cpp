#include "covsolve/objective.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace covsolve {

namespace {

constexpr double kBoxSlack = 1e-9;

void check_box(std::span<const double> x) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= -kBoxSlack && x[i] <= 1.0 + kBoxSlack)) {
      throw std::invalid_argument("coordinate " + std::to_string(i) + " = " +
                                  std::to_string(x[i]) + " outside [0,1]");
    }
  }
}

double clamp01(double v) { return v < 0 ? 0 : (v > 1 ? 1 : v); }

// Pieces node j actually needs: trailing zero-slope pieces collapse.
std::int64_t piece_count(const SmoothingContext& ctx, std::int64_t deg) {
  return std::min<std::int64_t>(deg, static_cast<std::int64_t>(ctx.slopes.size()));
}

}  // namespace

void FractionalPoint::validate() const {
  double sum = 0;
  for (double v : x) {
    if (!(v >= -kBoxSlack && v <= 1.0 + kBoxSlack))
      throw std::invalid_argument("fractional point leaves the unit box");
    sum += v;
  }
  if (std::abs(sum - static_cast<double>(k)) > 1e-8)
    throw std::invalid_argument("fractional point sums to " + std::to_string(sum) +
                                ", expected " + std::to_string(k));
}

FractionalPoint FractionalPoint::from_set(std::span<const std::int32_t> s, std::int64_t n,
                                          std::int64_t k) {
  FractionalPoint p;
  p.k = k;
  p.x.assign(n, 0.0);
  for (std::int32_t i : s) {
    if (i < 0 || i >= n) throw std::invalid_argument("set index out of range");
    p.x[i] = 1.0;
  }
  return p;
}

double coverage_discrete(const CoverageInstance& inst, const Reward& reward,
                         std::span<const std::int32_t> s) {
  std::vector<std::int64_t> count(inst.r, 0);
  for (std::int32_t i : s) {
    if (i < 0 || i >= inst.n)
      throw std::invalid_argument("coverage_discrete: index " + std::to_string(i) +
                                  " out of range [0," + std::to_string(inst.n) + ")");
    for (std::int32_t j : inst.covered_by(i)) count[j]++;
  }
  double total = 0;
  for (std::int64_t j = 0; j < inst.r; ++j) total += inst.weights[j] * reward.phi(count[j]);
  return total;
}

double coverage_fractional(const CoverageInstance& inst, const Reward& reward,
                           std::span<const double> x) {
  if (static_cast<std::int64_t>(x.size()) != inst.n)
    throw std::invalid_argument("coverage_fractional: vector length mismatch");
  check_box(x);
  double total = 0;
  for (std::int64_t j = 0; j < inst.r; ++j) {
    double y = 0;
    for (std::int32_t i : inst.neighbors(j)) y += clamp01(x[i]);
    total += inst.weights[j] * reward.extended_phi(y);
  }
  return total;
}

double effective_degree(const CoverageInstance& inst) {
  double d = 0;
  for (std::int64_t j = 0; j < inst.r; ++j)
    d += inst.weights[j] * static_cast<double>(inst.degree(j));
  return d;
}

SmoothingContext make_smoothing_context(const CoverageInstance& inst,
                                        const Reward& reward, double mu) {
  if (!(mu > 0)) throw std::invalid_argument("smoothing temperature mu must be positive");
  std::int64_t max_deg = 0;
  for (std::int64_t j = 0; j < inst.r; ++j) max_deg = std::max(max_deg, inst.degree(j));
  auto pieces = static_cast<std::int64_t>(
      std::min<long long>(max_deg, reward.saturation_piece()));

  SmoothingContext ctx;
  ctx.mu = mu;
  ctx.d_r = effective_degree(inst);
  ctx.slopes.resize(pieces);
  ctx.intercepts.resize(pieces);
  for (std::int64_t p = 1; p <= pieces; ++p) {
    double s = reward.slope(p);
    ctx.slopes[p - 1] = s;
    ctx.intercepts[p - 1] = reward.phi(p - 1) - s * static_cast<double>(p - 1);
  }
  return ctx;
}

namespace {

// Softmin of the first `pieces` linear pieces at coordinate sum y. Shifting
// on the minimum keeps every exponent nonpositive, so the value never
// exceeds the true min even in floating point.
inline double lse_softmin(const SmoothingContext& ctx, double y, std::int64_t pieces) {
  double vmin = ctx.slopes[0] * y + ctx.intercepts[0];
  for (std::int64_t p = 1; p < pieces; ++p)
    vmin = std::min(vmin, ctx.slopes[p] * y + ctx.intercepts[p]);
  double acc = 0;
  for (std::int64_t p = 0; p < pieces; ++p)
    acc += std::exp((vmin - (ctx.slopes[p] * y + ctx.intercepts[p])) / ctx.mu);
  return vmin - ctx.mu * std::log(acc);
}

}  // namespace

double smooth_value(const CoverageInstance& inst, const SmoothingContext& ctx,
                    std::span<const double> x) {
  if (static_cast<std::int64_t>(x.size()) != inst.n)
    throw std::invalid_argument("smooth_value: vector length mismatch");
  double total = 0;
  for (std::int64_t j = 0; j < inst.r; ++j) {
    double y = 0;
    for (std::int32_t i : inst.neighbors(j)) y += x[i];
    total += inst.weights[j] * lse_softmin(ctx, y, piece_count(ctx, inst.degree(j)));
  }
  return total;
}

double smooth_value(const CoverageInstance& inst, const Reward& reward,
                    std::span<const double> x, double mu) {
  return smooth_value(inst, make_smoothing_context(inst, reward, mu), x);
}

void smooth_gradient(const CoverageInstance& inst, const SmoothingContext& ctx,
                     std::span<const double> x, std::span<double> grad) {
  if (static_cast<std::int64_t>(x.size()) != inst.n ||
      static_cast<std::int64_t>(grad.size()) != inst.n)
    throw std::invalid_argument("smooth_gradient: vector length mismatch");
  std::fill(grad.begin(), grad.end(), 0.0);
  for (std::int64_t j = 0; j < inst.r; ++j) {
    auto nbrs = inst.neighbors(j);
    double y = 0;
    for (std::int32_t i : nbrs) y += x[i];

    std::int64_t pieces = piece_count(ctx, inst.degree(j));
    double vmin = ctx.slopes[0] * y + ctx.intercepts[0];
    for (std::int64_t p = 1; p < pieces; ++p)
      vmin = std::min(vmin, ctx.slopes[p] * y + ctx.intercepts[p]);
    double norm = 0, expect = 0;
    for (std::int64_t p = 0; p < pieces; ++p) {
      double w = std::exp((vmin - (ctx.slopes[p] * y + ctx.intercepts[p])) / ctx.mu);
      norm += w;
      expect += w * ctx.slopes[p];
    }
    double coef = inst.weights[j] * expect / norm;
    for (std::int32_t i : nbrs) grad[i] += coef;
  }
}

std::vector<double> smooth_gradient(const CoverageInstance& inst, const Reward& reward,
                                    std::span<const double> x, double mu) {
  std::vector<double> g(inst.n, 0.0);
  smooth_gradient(inst, make_smoothing_context(inst, reward, mu), x, g);
  return g;
}

std::pair<double, double> smooth_and_fractional_value(const CoverageInstance& inst,
                                                      const SmoothingContext& ctx,
                                                      const Reward& reward,
                                                      std::span<const double> x) {
  double smooth = 0, truth = 0;
  for (std::int64_t j = 0; j < inst.r; ++j) {
    double y = 0;
    for (std::int32_t i : inst.neighbors(j)) y += clamp01(x[i]);
    smooth += inst.weights[j] * lse_softmin(ctx, y, piece_count(ctx, inst.degree(j)));
    truth += inst.weights[j] * reward.extended_phi(y);
  }
  return {smooth, truth};
}

double multilinear_extension(const CoverageInstance& inst, const Reward& reward,
                             std::span<const double> x) {
  if (static_cast<std::int64_t>(x.size()) != inst.n)
    throw std::invalid_argument("multilinear_extension: vector length mismatch");
  check_box(x);
  double total = 0;
  std::vector<double> dp;
  for (std::int64_t j = 0; j < inst.r; ++j) {
    auto nbrs = inst.neighbors(j);
    dp.assign(nbrs.size() + 1, 0.0);
    dp[0] = 1.0;
    std::size_t filled = 0;
    for (std::int32_t i : nbrs) {
      double p = clamp01(x[i]);
      ++filled;
      for (std::size_t b = filled; b > 0; --b) dp[b] = dp[b] * (1 - p) + dp[b - 1] * p;
      dp[0] *= (1 - p);
    }
    double e = 0;
    for (std::size_t b = 0; b <= filled; ++b)
      e += dp[b] * reward.phi(static_cast<long long>(b));
    total += inst.weights[j] * e;
  }
  return total;
}

}  // namespace covsolve
