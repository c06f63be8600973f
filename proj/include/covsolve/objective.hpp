#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "covsolve/instance.hpp"
#include "covsolve/reward.hpp"

namespace covsolve {

// Point of the hypersimplex Delta_{n,k} = {x in [0,1]^n : sum x_i = k}.
struct FractionalPoint {
  std::vector<double> x;
  std::int64_t k = 0;

  // Box within 1e-9 per coordinate, sum within 1e-8 of k.
  void validate() const;
  static FractionalPoint from_set(std::span<const std::int32_t> s, std::int64_t n,
                                  std::int64_t k);
};

// C(S) = sum_j w_j phi(|S cap N(j)|). O(m). Throws on out-of-range indices.
double coverage_discrete(const CoverageInstance& inst, const Reward& reward,
                         std::span<const std::int32_t> s);

// LP-relaxation objective C(x) = sum_j w_j phi_ext(sum_{i in N(j)} x_i) for
// x in the box [0,1]^n (checked within 1e-9). Equals coverage_discrete at
// integral points.
double coverage_fractional(const CoverageInstance& inst, const Reward& reward,
                           std::span<const double> x);

// d_R = sum_j w_j deg(j).
double effective_degree(const CoverageInstance& inst);

// Shared pieces of the per-node piecewise linear rewards plus the smoothing
// temperature. Piece p (1-based) is slope[p-1]*y + intercept[p-1]; node j
// uses its first min(deg(j), #pieces) of them (trailing zero-slope pieces
// collapse into one).
struct SmoothingContext {
  double mu = 0;
  double d_r = 0;
  std::vector<double> slopes;
  std::vector<double> intercepts;
};

SmoothingContext make_smoothing_context(const CoverageInstance& inst,
                                        const Reward& reward, double mu);

// Smoothed objective: per right node the log-sum-exp softmin of its linear
// pieces, stabilized by shifting on the minimum piece value. Defined for any
// real x (momentum iterates may leave the box); satisfies
// C(x) - mu*log(d_R) <= value <= C(x) on the box. Throws when mu <= 0.
double smooth_value(const CoverageInstance& inst, const SmoothingContext& ctx,
                    std::span<const double> x);
double smooth_value(const CoverageInstance& inst, const Reward& reward,
                    std::span<const double> x, double mu);

// Gradient sum_j w_j 1_{N(j)} E[Y_j(x)], with Y_j the slope random variable
// under the softmin probabilities. O(m); right nodes accumulated in
// ascending j for reproducibility.
void smooth_gradient(const CoverageInstance& inst, const SmoothingContext& ctx,
                     std::span<const double> x, std::span<double> grad);
std::vector<double> smooth_gradient(const CoverageInstance& inst, const Reward& reward,
                                    std::span<const double> x, double mu);

// One pass returning {smooth value, fractional value}; the solver calls this
// every iteration.
std::pair<double, double> smooth_and_fractional_value(const CoverageInstance& inst,
                                                      const SmoothingContext& ctx,
                                                      const Reward& reward,
                                                      std::span<const double> x);

// Multilinear extension F(x) = sum_j w_j E[phi(B_j)], B_j Poisson-binomial
// over x restricted to N(j), by exact probability convolution (O(deg^2) per
// node). Test oracle scale.
double multilinear_extension(const CoverageInstance& inst, const Reward& reward,
                             std::span<const double> x);

}  // namespace covsolve
