#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "covsolve/instance.hpp"
#include "covsolve/objective.hpp"
#include "covsolve/reward.hpp"
#include "covsolve/rng.hpp"

namespace covsolve {

struct DecompositionTerm {
  double weight = 0;                  // alpha_t > 0
  std::vector<std::int32_t> members;  // sorted k-subset
};

// Convex combination of hypersimplex vertices: sum_t weight_t * 1_{members_t}
// reconstructs the decomposed point; weights sum to 1; at most n terms.
struct Decomposition {
  std::int64_t n = 0;
  std::int64_t k = 0;
  std::vector<DecompositionTerm> terms;
};

// Vertex peeling: repeatedly take the k largest coordinates (ties to the
// lower index), peel the largest feasible multiple of that vertex, rescale
// the residual. Deterministic; randomness lives only in the merge stage.
Decomposition caratheodory_decompose(const FractionalPoint& x);

// Randomized swap merge of two weighted k-subsets. Elements of the two
// symmetric differences are sorted ascending and paired positionally; each
// pair resolves to v1's element with probability a1/(a1+a2). Every
// intermediate set has exactly k elements.
std::pair<double, std::vector<std::int32_t>> merge_bases(double a1,
                                                         std::vector<std::int32_t> v1,
                                                         double a2,
                                                         std::vector<std::int32_t> v2,
                                                         Rng& rng);

// Left-fold of merge_bases over the decomposition terms.
std::vector<std::int32_t> swap_round(const Decomposition& decomposition, Rng& rng);
std::vector<std::int32_t> swap_round(const FractionalPoint& x, Rng& rng);

struct RoundBestResult {
  std::vector<std::int32_t> set;
  double value = 0;
};

// Best of `trials` independent swap-round draws by C(S). The point is
// decomposed once; trial t draws from Rng::derive(seed, t), so results do
// not depend on evaluation order.
RoundBestResult round_best_of(const CoverageInstance& inst, const Reward& reward,
                              const FractionalPoint& x, int trials,
                              std::uint64_t seed);

}  // namespace covsolve
