#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "covsolve/instance.hpp"
#include "covsolve/objective.hpp"
#include "covsolve/reward.hpp"

namespace covsolve::oracle {

// Exact discrete optimum over all k-subsets (lexicographically smallest
// argmax). Guarded: throws when C(n,k) exceeds 1e7.
std::pair<double, std::vector<std::int32_t>> brute_force_opt(const CoverageInstance& inst,
                                                             const Reward& reward,
                                                             std::int64_t k);

// O(n^2) projection reference: scans the deduplicated breakpoints of the
// clamped shifted sum and solves F(lambda; x) = k on the bracketing segment.
// Equality oracle for hypersimplex_project; n <= 2000.
std::vector<double> reference_project(std::span<const double> x, std::int64_t k);

// Central finite differences of smooth_value.
std::vector<double> fd_gradient(const CoverageInstance& inst, const Reward& reward,
                                std::span<const double> x, double mu, double h);

// F(x) by full 2^n enumeration; equality oracle for the convolution-based
// multilinear extension. n <= 20.
double exhaustive_multilinear(const CoverageInstance& inst, const Reward& reward,
                              std::span<const double> x);

}  // namespace covsolve::oracle
