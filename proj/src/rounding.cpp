#include "covsolve/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace covsolve {

namespace {

constexpr double kBetaFloor = 1e-14;
constexpr double kSnapEps = 1e-12;
// Rescaling by 1/(1-beta) amplifies residual noise while shrinking the
// remaining mass by the same factor, so mass * noise is invariant; once the
// remaining mass is this small the residual carries no trustworthy signal
// and is emitted wholesale (reconstruction error <= kMassFloor).
constexpr double kMassFloor = 1e-11;

// Residual rescaling amplifies roundoff by 1/(1 - beta); coordinates this
// close to the bounds are treated as already integral.
void snap(std::vector<double>& x) {
  for (double& v : x) {
    if (std::abs(v) <= kSnapEps) v = 0.0;
    if (std::abs(v - 1.0) <= kSnapEps) v = 1.0;
  }
}

}  // namespace

Decomposition caratheodory_decompose(const FractionalPoint& point) {
  point.validate();
  auto n = static_cast<std::int64_t>(point.x.size());
  std::int64_t k = point.k;
  if (k < 0 || k > n) throw std::invalid_argument("caratheodory_decompose: k outside [0,n]");

  Decomposition d;
  d.n = n;
  d.k = k;

  std::vector<double> x = point.x;
  snap(x);
  std::vector<std::int32_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto larger = [&x](std::int32_t a, std::int32_t b) {
    if (x[a] != x[b]) return x[a] > x[b];
    return a < b;
  };

  double mass = 1.0;  // remaining probability mass w_t
  // Every round either emits a term or snaps a coordinate, and each of those
  // fixes at least one coordinate at 0 or 1, so 2n+2 rounds always suffice.
  for (std::int64_t round = 0; round <= 2 * n + 2; ++round) {
    // Vertex on the k largest coordinates, ties to the lower index.
    if (k > 0 && k < n)
      std::nth_element(order.begin(), order.begin() + (k - 1), order.end(), larger);
    DecompositionTerm term;
    term.members.assign(order.begin(), order.begin() + k);
    std::sort(term.members.begin(), term.members.end());

    if (mass <= kMassFloor) {
      // Unresolvable dust; fold it into the previous term instead of
      // spending a decomposition slot on it (keeps r <= n exact).
      if (d.terms.empty()) {
        term.weight = mass;
        d.terms.push_back(std::move(term));
      } else {
        d.terms.back().weight += mass;
      }
      return d;
    }
    if (static_cast<std::int64_t>(d.terms.size()) == n) {
      // n emissions already fixed every coordinate, so whatever remains is
      // roundoff dust; anything larger means the peeling logic is broken.
      if (mass > 1e-9)
        throw std::runtime_error("caratheodory_decompose: mass left after n rounds");
      d.terms.back().weight += mass;
      return d;
    }

    double beta = 1.0;
    for (std::int64_t p = 0; p < k; ++p) beta = std::min(beta, x[term.members[p]]);
    for (std::int64_t p = k; p < n; ++p) beta = std::min(beta, 1.0 - x[order[p]]);

    if (beta >= 1.0 - kBetaFloor) {
      term.weight = mass;
      d.terms.push_back(std::move(term));
      return d;
    }
    if (beta < kBetaFloor) {
      // Roundoff produced a vanishing step; snap and retry without emitting
      // a zero-weight term.
      snap(x);
      continue;
    }

    term.weight = beta * mass;
    d.terms.push_back(std::move(term));
    const DecompositionTerm& emitted = d.terms.back();

    // The rescale amplifies representation error by 1/(1-beta); clamping
    // keeps the residual inside the box (the mass it can misplace is paid
    // back by the matching shrink of the remaining weight).
    double rescale = 1.0 / (1.0 - beta);
    std::size_t next = 0;
    for (std::int64_t i = 0; i < n; ++i) {
      bool selected = next < emitted.members.size() &&
                      emitted.members[next] == static_cast<std::int32_t>(i);
      if (selected) {
        x[i] = std::clamp((x[i] - beta) * rescale, 0.0, 1.0);
        ++next;
      } else {
        x[i] = std::clamp(x[i] * rescale, 0.0, 1.0);
      }
    }
    snap(x);
    mass *= (1.0 - beta);
  }
  throw std::runtime_error("caratheodory_decompose: failed to terminate");
}

std::pair<double, std::vector<std::int32_t>> merge_bases(double a1,
                                                         std::vector<std::int32_t> v1,
                                                         double a2,
                                                         std::vector<std::int32_t> v2,
                                                         Rng& rng) {
  if (v1.size() != v2.size()) throw std::invalid_argument("merge_bases: size mismatch");
  if (!(a1 > 0) || !(a2 > 0)) throw std::invalid_argument("merge_bases: weights must be positive");
  double total = a1 + a2;
  if (v1 == v2) return {total, std::move(v1)};

  std::vector<std::int32_t> only1, only2;
  std::set_difference(v1.begin(), v1.end(), v2.begin(), v2.end(), std::back_inserter(only1));
  std::set_difference(v2.begin(), v2.end(), v1.begin(), v1.end(), std::back_inserter(only2));

  // Positional pairing of the ascending symmetric differences; each pair
  // keeps v1's element with probability a1/(a1+a2), which resolves the pair
  // in one draw while preserving cardinality.
  double p = a1 / total;
  std::vector<std::int32_t> merged;
  merged.reserve(v1.size());
  std::set_intersection(v1.begin(), v1.end(), v2.begin(), v2.end(), std::back_inserter(merged));
  for (std::size_t t = 0; t < only1.size(); ++t)
    merged.push_back(rng.next_double() < p ? only1[t] : only2[t]);
  std::sort(merged.begin(), merged.end());
  return {total, std::move(merged)};
}

std::vector<std::int32_t> swap_round(const Decomposition& decomposition, Rng& rng) {
  if (decomposition.terms.empty()) return {};
  double weight = decomposition.terms[0].weight;
  std::vector<std::int32_t> base = decomposition.terms[0].members;
  for (std::size_t t = 1; t < decomposition.terms.size(); ++t) {
    auto [w, merged] = merge_bases(weight, std::move(base), decomposition.terms[t].weight,
                                   decomposition.terms[t].members, rng);
    weight = w;
    base = std::move(merged);
  }
  return base;
}

std::vector<std::int32_t> swap_round(const FractionalPoint& x, Rng& rng) {
  return swap_round(caratheodory_decompose(x), rng);
}

RoundBestResult round_best_of(const CoverageInstance& inst, const Reward& reward,
                              const FractionalPoint& x, int trials,
                              std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("round_best_of: trials must be >= 1");
  // The decomposition is deterministic, so it is shared across trials; all
  // randomness sits in the merges, drawn from per-trial derived streams.
  Decomposition d = caratheodory_decompose(x);
  RoundBestResult best;
  best.value = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(t));
    std::vector<std::int32_t> s = swap_round(d, rng);
    double value = coverage_discrete(inst, reward, s);
    if (value > best.value) {
      best.value = value;
      best.set = std::move(s);
    }
  }
  return best;
}

}  // namespace covsolve
