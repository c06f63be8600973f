#pragma once

#include <cstdint>
#include <vector>

#include "covsolve/instance.hpp"

namespace covsolve {

struct HardPhase {
  long long base_length = 0;   // arc length this phase (extended arcs +1)
  long long num_arcs = 0;      // floor(k / base_length)
  long long num_extended = 0;  // k mod base_length, laid first
};

// c-multi-coverage instance on which greedy is capped near 1 - 1/e while the
// fractional optimum equals opt_value exactly. Parameters l = c-1, q = c+1,
// k = q*c; right side has l*q nodes of unit weight arranged in q blocks of l
// rows; the optimum is the k disjoint block columns; bait arcs over one
// fresh representative row per block out-tempt the columns phase by phase.
struct HardInstance {
  CoverageInstance instance;
  long long c = 0;
  long long l = 0;
  long long q = 0;
  long long k = 0;
  double opt_value = 0;  // l*q*c, in the instance's raw unit weights
  std::vector<HardPhase> phases;
  long long bait_count = 0;   // total bait left nodes emitted
  bool bait_truncated = false;  // block rows ran out before bait_count >= k
                                // (happens only for c <= 3, where the greedy
                                // bound is vacuous)
};

// Throws for c < 2 and on internal coverage-consistency failures.
HardInstance generate_hard_instance(long long c);

struct GreedyGapReport {
  double greedy_value = 0;
  double ratio = 0;  // greedy_value / opt_value
  double bound = 0;  // 1 - 1/e + 3.3/l
};

// Runs greedy with the instance's budget and checks ratio <= bound; a
// violation means the construction is broken and throws.
GreedyGapReport greedy_gap_report(const HardInstance& hard);

}  // namespace covsolve
