#pragma once

#include <cstdint>

#include "covsolve/reward.hpp"

namespace covsolve {

// Poisson pmf/cdf evaluated per term in log space, so they stay finite for
// large rates.
double poisson_pmf(long long i, double rate);
double poisson_cdf(long long i, double rate);  // P(X <= i); -1 gives 0

// E[phi(Pois(rate))] by truncated series with N = ceil(rate + 12 sqrt(rate)
// + 30) terms (tail below 1e-12 for linearly bounded phi).
double poisson_expectation(const Reward& reward, double rate);

// E[min(Pois(rate), c)] = rate*P(X <= c-2) + c*P(X >= c).
double expected_min_closed_form(double rate, long long c);

// d/drate E[min(Pois(rate), c)] = P(X <= c-1).
double expected_min_derivative(double rate, long long c);

// alpha_phi(x) = E[phi(Pois(x))] / phi(x), x >= 1. Scale invariant in phi.
double alpha_at(const Reward& reward, long long x);

struct AlphaResult {
  double value = 0;
  long long argmin = 0;        // x attaining the ratio (0 when closed-form
                               // without a meaningful witness)
  bool at_search_limit = false;  // numeric minimum hit the search boundary
};

// Poisson concavity ratio alpha_phi = inf over positive integers of
// alpha_at. Closed forms: multi-coverage 1 - c^c e^{-c}/c! (log-gamma),
// piecewise linear 1 - (1-beta) c^c e^{-c}/c!, isoelastic
// (1/e) sum n^{1-gamma}/n!. Log searches x = 1..4 and certifies the rest
// with the bound alpha(x) >= 1 - 1/(x log(1+x)); table rewards search
// x in [1, search_limit] and flag boundary minima. search_limit 0 picks the
// default 10*max(scale, 10).
AlphaResult alpha(const Reward& reward, long long search_limit = 0);

// Closed-form integral for the isoelastic ratio,
// (1/(e Gamma(gamma))) * int_0^1 e^x / (-log x)^(1-gamma) dx, by
// double-exponential quadrature. Equals the series value.
double isoelastic_alpha_integral(double gamma);

}  // namespace covsolve
