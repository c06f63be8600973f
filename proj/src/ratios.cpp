#include "covsolve/ratios.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace covsolve {

namespace {

// log of the mode term c^c e^{-c} / c!; evaluated via lgamma so it stays
// finite for c in the thousands.
double log_mode_mass(long long c) {
  double cd = static_cast<double>(c);
  return cd * std::log(cd) - cd - std::lgamma(cd + 1.0);
}

long long series_length(double rate) {
  return static_cast<long long>(std::ceil(rate + 12.0 * std::sqrt(rate) + 30.0));
}

}  // namespace

double poisson_pmf(long long i, double rate) {
  if (i < 0) return 0.0;
  if (!(rate > 0)) throw std::invalid_argument("poisson_pmf: rate must be positive");
  double logp = -rate + static_cast<double>(i) * std::log(rate) - std::lgamma(static_cast<double>(i) + 1.0);
  return std::exp(logp);
}

double poisson_cdf(long long i, double rate) {
  if (i < 0) return 0.0;
  double acc = 0;
  for (long long t = 0; t <= i; ++t) acc += poisson_pmf(t, rate);
  return std::min(acc, 1.0);
}

double poisson_expectation(const Reward& reward, double rate) {
  if (!(rate > 0)) throw std::invalid_argument("poisson_expectation: rate must be positive");
  long long n = series_length(rate);
  double acc = 0;
  for (long long i = 1; i <= n; ++i) acc += reward.phi(i) * poisson_pmf(i, rate);
  acc += reward.phi(0) * poisson_pmf(0, rate);
  return acc;
}

double expected_min_closed_form(double rate, long long c) {
  if (!(rate > 0)) throw std::invalid_argument("expected_min_closed_form: rate must be positive");
  if (c < 0) throw std::invalid_argument("expected_min_closed_form: c must be >= 0");
  if (c == 0) return 0.0;
  double below = poisson_cdf(c - 2, rate);        // P(X <= c-2)
  double at_least = 1.0 - poisson_cdf(c - 1, rate);  // P(X >= c)
  return rate * below + static_cast<double>(c) * at_least;
}

double expected_min_derivative(double rate, long long c) {
  if (!(rate > 0)) throw std::invalid_argument("expected_min_derivative: rate must be positive");
  if (c < 1) throw std::invalid_argument("expected_min_derivative: c must be >= 1");
  return poisson_cdf(c - 1, rate);
}

double alpha_at(const Reward& reward, long long x) {
  if (x < 1) throw std::invalid_argument("alpha_at: x must be >= 1");
  double denom = reward.phi(x);
  if (!(denom > 0)) throw std::invalid_argument("alpha_at: phi(x) is zero");
  return poisson_expectation(reward, static_cast<double>(x)) / denom;
}

AlphaResult alpha(const Reward& reward, long long search_limit) {
  if (!reward.is_normalized())
    throw std::invalid_argument("alpha: reward must be normalized");

  AlphaResult res;
  switch (reward.kind()) {
    case RewardKind::multi_coverage:
      res.value = 1.0 - std::exp(log_mode_mass(reward.c()));
      res.argmin = reward.c();
      return res;
    case RewardKind::piecewise_linear:
      res.value = 1.0 - (1.0 - reward.beta()) * std::exp(log_mode_mass(reward.c()));
      res.argmin = reward.c();
      return res;
    case RewardKind::isoelastic: {
      // (1/e) sum_{n>=1} n^(1-gamma)/n!; terms vanish by n ~ 80.
      double acc = 0;
      for (long long n = 1; n <= 96; ++n)
        acc += std::exp((1.0 - reward.gamma()) * std::log(static_cast<double>(n)) -
                        std::lgamma(static_cast<double>(n) + 1.0));
      res.value = acc / std::exp(1.0);
      res.argmin = 0;
      return res;
    }
    case RewardKind::log: {
      // alpha(x) >= 1 - 1/(x log(1+x)), increasing, certifies that no
      // x >= 4 can undercut the numeric minimum over 1..4.
      res.value = alpha_at(reward, 1);
      res.argmin = 1;
      for (long long x = 2; x <= 4; ++x) {
        double v = alpha_at(reward, x);
        if (v < res.value) {
          res.value = v;
          res.argmin = x;
        }
      }
      double cutoff = 1.0 - 1.0 / (4.0 * std::log(5.0));
      if (cutoff < res.value) {
        // The certificate failed (cannot happen for log(1+x)); fall through
        // to an explicit search so the result stays sound.
        long long limit = search_limit > 0 ? search_limit : 100;
        for (long long x = 5; x <= limit; ++x) {
          double v = alpha_at(reward, x);
          if (v < res.value) {
            res.value = v;
            res.argmin = x;
          }
        }
        res.at_search_limit = res.argmin == limit;
      }
      return res;
    }
    case RewardKind::table: {
      auto scale = static_cast<long long>(reward.values().size());
      long long limit = search_limit > 0 ? search_limit : 10 * std::max<long long>(scale, 10);
      res.value = alpha_at(reward, 1);
      res.argmin = 1;
      for (long long x = 2; x <= limit; ++x) {
        double v = alpha_at(reward, x);
        if (v < res.value) {
          res.value = v;
          res.argmin = x;
        }
      }
      res.at_search_limit = res.argmin == limit;
      return res;
    }
  }
  throw std::logic_error("alpha: unknown reward kind");
}

double isoelastic_alpha_integral(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw std::invalid_argument("isoelastic_alpha_integral: gamma must lie in (0,1)");

  // Integrand e^x / (-log x)^(1-gamma) on (0,1); algebraic singularity at
  // x = 1. Double-exponential substitution x = (1 + tanh((pi/2) sinh t))/2;
  // 1 - x is computed directly to keep -log x accurate near the endpoint.
  auto term = [&](double t) {
    double u = 1.5707963267948966 * std::sinh(t);
    double sech = 1.0 / std::cosh(u);
    double w = 1.5707963267948966 * std::cosh(t) * 0.5 * sech * sech;  // dx/dt
    double one_minus_x = 1.0 / (std::exp(2.0 * u) + 1.0);              // (1 - tanh u)/2
    if (one_minus_x <= 0.0 || one_minus_x >= 1.0) return 0.0;
    double x = 1.0 - one_minus_x;
    double neg_log_x = -std::log1p(-one_minus_x);
    return w * std::exp(x) * std::pow(neg_log_x, gamma - 1.0);
  };

  // The tail decays like exp(-gamma * (pi/2) e^t), so small gamma needs a
  // wide window; t = 7.5 covers gamma >= 0.01 to below 1e-14.
  const double t_max = 7.5;
  double h = 0.5;
  double sum = term(0.0);
  for (double t = h; t <= t_max; t += h) sum += term(t) + term(-t);
  double integral = sum * h;
  for (int level = 0; level < 10; ++level) {
    h *= 0.5;
    double add = 0;
    for (double t = h; t <= t_max; t += 2.0 * h) add += term(t) + term(-t);
    double refined = integral / 2.0 + add * h;
    if (std::abs(refined - integral) <= 1e-13 * std::max(1.0, std::abs(refined)) && level >= 3) {
      integral = refined;
      break;
    }
    integral = refined;
  }
  return integral / (std::exp(1.0) * std::tgamma(gamma));
}

}  // namespace covsolve
