#include "covsolve/reward.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace covsolve {

namespace {

constexpr double kLog2 = 0.6931471805599453094;

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

double parse_real(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("reward spec: bad " + what + " '" + s + "'");
  }
  require(pos == s.size(), "reward spec: bad " + what + " '" + s + "'");
  return v;
}

long long parse_int(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("reward spec: bad " + what + " '" + s + "'");
  }
  require(pos == s.size(), "reward spec: bad " + what + " '" + s + "'");
  return v;
}

}  // namespace

Reward Reward::multi_coverage(long long c) {
  require(c >= 1, "multi_coverage: c must be >= 1");
  Reward r;
  r.kind_ = RewardKind::multi_coverage;
  r.c_ = c;
  return r;
}

Reward Reward::log_reward() {
  Reward r;
  r.kind_ = RewardKind::log;
  return r;
}

Reward Reward::isoelastic(double gamma) {
  require(gamma > 0.0 && gamma < 1.0, "isoelastic: gamma must lie in (0,1)");
  Reward r;
  r.kind_ = RewardKind::isoelastic;
  r.gamma_ = gamma;
  return r;
}

Reward Reward::piecewise_linear(long long c, double beta) {
  require(c >= 1, "piecewise_linear: c must be >= 1");
  require(beta >= 0.0 && beta <= 1.0, "piecewise_linear: beta must lie in [0,1]");
  Reward r;
  r.kind_ = RewardKind::piecewise_linear;
  r.c_ = c;
  r.beta_ = beta;
  return r;
}

Reward Reward::table(std::vector<double> values) {
  require(!values.empty(), "table reward: empty value list");
  for (std::size_t i = 0; i < values.size(); ++i) {
    require(std::isfinite(values[i]), "table reward: non-finite value");
  }
  // Monotone nondecreasing with nonincreasing slopes; the implicit zero
  // slope past the table end is always admissible.
  constexpr double eps = 1e-12;
  double prev_slope = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < values.size(); ++i) {
    double s = values[i] - values[i - 1];
    require(s >= -eps, "table reward: values must be nondecreasing");
    require(s <= prev_slope + eps, "table reward: values must be concave");
    prev_slope = s;
  }
  Reward r;
  r.kind_ = RewardKind::table;
  r.values_ = std::move(values);
  return r;
}

double Reward::phi(long long i) const {
  if (i < 0) throw std::invalid_argument("phi: negative argument");
  switch (kind_) {
    case RewardKind::multi_coverage:
      return static_cast<double>(std::min(i, c_));
    case RewardKind::log:
      return std::log1p(static_cast<double>(i)) / kLog2;
    case RewardKind::isoelastic:
      return std::pow(static_cast<double>(i), 1.0 - gamma_);
    case RewardKind::piecewise_linear:
      return beta_ * static_cast<double>(i) +
             (1.0 - beta_) * static_cast<double>(std::min(i, c_));
    case RewardKind::table: {
      auto idx = static_cast<std::size_t>(
          std::min<long long>(i, static_cast<long long>(values_.size()) - 1));
      return values_[idx];
    }
  }
  return 0;
}

double Reward::slope(long long i) const {
  if (i < 1) throw std::invalid_argument("slope: argument must be >= 1");
  switch (kind_) {
    case RewardKind::multi_coverage:
      return i <= c_ ? 1.0 : 0.0;
    case RewardKind::piecewise_linear:
      return i <= c_ ? 1.0 : beta_;
    case RewardKind::table:
      if (i >= static_cast<long long>(values_.size())) return 0.0;
      return values_[i] - values_[i - 1];
    default:
      return phi(i) - phi(i - 1);
  }
}

double Reward::extended_phi(double x) const {
  if (x < 0) {
    if (x < -1e-9) throw std::invalid_argument("extended_phi: negative argument");
    x = 0;
  }
  double fl = std::floor(x);
  auto i = static_cast<long long>(fl);
  double lambda = 1.0 - (x - fl);
  if (lambda == 1.0) return phi(i);
  return lambda * phi(i) + (1.0 - lambda) * phi(i + 1);
}

bool Reward::is_normalized() const {
  return std::abs(phi(0)) <= 1e-12 && std::abs(phi(1) - 1.0) <= 1e-12;
}

Reward Reward::normalized() const {
  if (is_normalized()) return *this;
  // Only tables can be unnormalized; the closed forms are normalized by
  // construction.
  double p0 = phi(0);
  double scale = phi(1) - p0;
  if (scale <= 0) throw std::invalid_argument("normalize: degenerate reward (phi(1) == phi(0))");
  Reward r = *this;
  for (double& v : r.values_) v = (v - p0) / scale;
  return r;
}

long long Reward::saturation_piece() const {
  switch (kind_) {
    case RewardKind::multi_coverage:
      return c_ + 1;
    case RewardKind::piecewise_linear:
      return beta_ > 0.0 ? huge() : c_ + 1;
    case RewardKind::table: {
      auto len = static_cast<long long>(values_.size());
      for (long long i = 1; i < len; ++i) {
        if (values_[i] - values_[i - 1] <= 0.0) return i;
      }
      return len;
    }
    default:
      return huge();
  }
}

Reward Reward::parse(const std::string& spec) {
  auto colon = spec.find(':');
  std::string name = spec.substr(0, colon);
  std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);

  auto split = [](const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, sep)) out.push_back(tok);
    return out;
  };
  auto keyed = [&](const std::string& part, const std::string& key) {
    require(part.size() > key.size() + 1 && part.compare(0, key.size(), key) == 0 &&
                part[key.size()] == '=',
            "reward spec: expected " + key + "=<value>, got '" + part + "'");
    return part.substr(key.size() + 1);
  };

  if (name == "log") {
    require(args.empty(), "reward spec: log takes no arguments");
    return log_reward();
  }
  if (name == "min") {
    return multi_coverage(parse_int(keyed(args, "c"), "c"));
  }
  if (name == "pow") {
    return isoelastic(parse_real(keyed(args, "gamma"), "gamma"));
  }
  if (name == "plin") {
    auto parts = split(args, ',');
    require(parts.size() == 2, "reward spec: plin needs c=<int>,beta=<real>");
    return piecewise_linear(parse_int(keyed(parts[0], "c"), "c"),
                            parse_real(keyed(parts[1], "beta"), "beta"));
  }
  if (name == "table") {
    auto parts = split(args, ',');
    require(!parts.empty(), "reward spec: table needs values");
    std::vector<double> vals;
    vals.reserve(parts.size());
    for (const auto& p : parts) vals.push_back(parse_real(p, "table value"));
    return table(std::move(vals));
  }
  throw std::invalid_argument("reward spec: unknown reward '" + name + "'");
}

std::string Reward::to_string() const {
  char buf[64];
  switch (kind_) {
    case RewardKind::multi_coverage:
      std::snprintf(buf, sizeof buf, "min:c=%lld", c_);
      return buf;
    case RewardKind::log:
      return "log";
    case RewardKind::isoelastic:
      std::snprintf(buf, sizeof buf, "pow:gamma=%.17g", gamma_);
      return buf;
    case RewardKind::piecewise_linear:
      std::snprintf(buf, sizeof buf, "plin:c=%lld,beta=%.17g", c_, beta_);
      return buf;
    case RewardKind::table: {
      std::string out = "table:";
      for (std::size_t i = 0; i < values_.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", values_[i]);
        if (i) out += ',';
        out += buf;
      }
      return out;
    }
  }
  return "";
}

}  // namespace covsolve
