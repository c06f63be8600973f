#include "covsolve/hardgen.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "covsolve/greedy.hpp"
#include "covsolve/objective.hpp"
#include "covsolve/reward.hpp"

namespace covsolve {

HardInstance generate_hard_instance(long long c) {
  if (c < 2) throw std::invalid_argument("generate_hard_instance: c must be >= 2");

  HardInstance hard;
  hard.c = c;
  hard.l = c - 1;
  hard.q = c + 1;
  hard.k = hard.q * c;
  const long long l = hard.l, q = hard.q, k = hard.k;
  const long long rows = l * q;
  hard.opt_value = static_cast<double>(l * q * c);

  std::vector<std::pair<std::int32_t, std::int32_t>> edges;

  // Optimum columns: q diagonal blocks of c columns, each column covering
  // the l rows of its block, so every row is covered exactly c times and
  // the columns are worth a disjoint l each.
  for (long long b = 0; b < q; ++b) {
    for (long long t = 0; t < c; ++t) {
      auto col = static_cast<std::int32_t>(b * c + t);
      for (long long s = 0; s < l; ++s)
        edges.emplace_back(col, static_cast<std::int32_t>(b * l + s));
    }
  }

  // Bait arcs. Phase i uses the fresh representative row i-1 of every block
  // (positions 0..q-1 around a cycle) and lays floor(k / (l+2-i)) arcs of
  // that base length consecutively, the first k mod (l+2-i) of them extended
  // by one. The arcs tile the cyclic walk of length k = q*c, so every
  // representative is covered exactly c times within the phase, and each
  // arc's marginal at pick time equals its length.
  long long next_left = k;
  for (long long phase = 1; hard.bait_count < k; ++phase) {
    if (phase > l) {
      hard.bait_truncated = true;  // no fresh rows left; see module notes
      break;
    }
    HardPhase ph;
    ph.base_length = l + 2 - phase;
    ph.num_arcs = k / ph.base_length;
    ph.num_extended = k % ph.base_length;

    std::vector<long long> rep_cover(q, 0);
    long long cursor = 0;
    for (long long a = 0; a < ph.num_arcs; ++a) {
      long long len = ph.base_length + (a < ph.num_extended ? 1 : 0);
      if (len > q)
        throw std::runtime_error("generate_hard_instance: arc longer than the cycle (c=" +
                                 std::to_string(c) + ", phase " + std::to_string(phase) + ")");
      auto arc = static_cast<std::int32_t>(next_left++);
      for (long long z = 0; z < len; ++z) {
        long long pos = (cursor + z) % q;
        rep_cover[pos]++;
        edges.emplace_back(arc, static_cast<std::int32_t>(pos * l + (phase - 1)));
      }
      cursor += len;
    }
    for (long long pos = 0; pos < q; ++pos) {
      if (rep_cover[pos] != c)
        throw std::runtime_error(
            "generate_hard_instance: representative " + std::to_string(pos) + " covered " +
            std::to_string(rep_cover[pos]) + " times in phase " + std::to_string(phase) +
            ", expected " + std::to_string(c));
    }
    hard.bait_count += ph.num_arcs;
    hard.phases.push_back(ph);
  }

  // Raw unit weights so opt_value stays in coverage units.
  hard.instance = CoverageInstance::build(next_left, rows, std::move(edges),
                                          std::vector<double>(rows, 1.0));
  return hard;
}

GreedyGapReport greedy_gap_report(const HardInstance& hard) {
  GreedyGapReport rep;
  GreedyResult greedy =
      greedy_select(hard.instance, Reward::multi_coverage(hard.c), hard.k);
  rep.greedy_value = greedy.value;
  rep.ratio = greedy.value / hard.opt_value;
  rep.bound = 1.0 - 1.0 / std::exp(1.0) + 3.3 / static_cast<double>(hard.l);
  if (rep.ratio > rep.bound + 1e-12)
    throw std::logic_error("greedy_gap_report: greedy ratio " + std::to_string(rep.ratio) +
                           " exceeds the bound " + std::to_string(rep.bound));
  return rep;
}

}  // namespace covsolve
