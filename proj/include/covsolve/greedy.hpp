#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "covsolve/instance.hpp"
#include "covsolve/objective.hpp"
#include "covsolve/reward.hpp"

namespace covsolve {

struct GreedyResult {
  std::vector<std::int32_t> selected;  // pick order
  std::vector<double> gains;           // marginal gain of each pick
  std::vector<double> values;          // C(S_t) after each pick
  double value = 0.0;                  // C(S) of the final set
  bool clamped = false;                // k exceeded n and was clamped
};

// Lazy greedy over stale upper bounds (valid by submodularity): picks
// argmax marginal gain, ties to the smallest index, zero-gain elements still
// selected in index order to fill the budget. Identical output to naive
// greedy under the same tie rule.
GreedyResult greedy_select(const CoverageInstance& inst, const Reward& reward,
                           std::int64_t k);

// Indicator of S padded with the lowest-index unselected nodes up to sum k,
// so the result always lies in Delta_{n,k}.
FractionalPoint greedy_indicator(std::span<const std::int32_t> selected,
                                 std::int64_t n, std::int64_t k);

}  // namespace covsolve
