#include "covsolve/greedy.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace covsolve {

namespace {

struct Candidate {
  double gain;
  std::int32_t node;
};

// Max-heap by gain, ties to the smaller index.
struct CandidateLess {
  bool operator()(const Candidate& a, const Candidate& b) const {
    if (a.gain != b.gain) return a.gain < b.gain;
    return a.node > b.node;
  }
};

}  // namespace

GreedyResult greedy_select(const CoverageInstance& inst, const Reward& reward,
                           std::int64_t k) {
  if (k < 0) throw std::invalid_argument("greedy_select: negative budget");
  GreedyResult result;
  result.clamped = k > inst.n;
  std::int64_t budget = std::min(k, inst.n);
  if (budget == 0) return result;

  // Current coverage count per right node; marginal gain of adding i is
  // sum over its right nodes of w_j * slope(count_j + 1).
  std::vector<std::int64_t> count(inst.r, 0);
  auto marginal = [&](std::int32_t i) {
    double g = 0;
    for (std::int32_t j : inst.covered_by(i)) g += inst.weights[j] * reward.slope(count[j] + 1);
    return g;
  };

  std::priority_queue<Candidate, std::vector<Candidate>, CandidateLess> heap;
  std::vector<std::int64_t> evaluated_at(inst.n, -1);
  for (std::int64_t i = 0; i < inst.n; ++i) {
    heap.push({marginal(static_cast<std::int32_t>(i)), static_cast<std::int32_t>(i)});
    evaluated_at[i] = 0;
  }

  result.selected.reserve(budget);
  double running = 0;
  for (std::int64_t t = 0; t < budget; ++t) {
    // Marginals only shrink as S grows, so a stale bound that still tops the
    // heap after re-evaluation is the true argmax (smallest index on ties,
    // because equal gains order by index).
    while (true) {
      Candidate top = heap.top();
      if (evaluated_at[top.node] == t) {
        heap.pop();
        for (std::int32_t j : inst.covered_by(top.node)) count[j]++;
        running += top.gain;
        result.selected.push_back(top.node);
        result.gains.push_back(top.gain);
        result.values.push_back(running);
        break;
      }
      heap.pop();
      top.gain = marginal(top.node);
      evaluated_at[top.node] = t;
      heap.push(top);
    }
  }
  result.value = coverage_discrete(inst, reward, result.selected);
  return result;
}

FractionalPoint greedy_indicator(std::span<const std::int32_t> selected,
                                 std::int64_t n, std::int64_t k) {
  if (k > n) throw std::invalid_argument("greedy_indicator: k exceeds n");
  if (static_cast<std::int64_t>(selected.size()) > k)
    throw std::invalid_argument("greedy_indicator: set larger than k");
  FractionalPoint p = FractionalPoint::from_set(selected, n, k);
  std::int64_t have = 0;
  for (double v : p.x) have += v > 0 ? 1 : 0;
  for (std::int64_t i = 0; i < n && have < k; ++i) {
    if (p.x[i] == 0.0) {
      p.x[i] = 1.0;
      ++have;
    }
  }
  return p;
}

}  // namespace covsolve
