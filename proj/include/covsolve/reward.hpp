#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace covsolve {

enum class RewardKind { multi_coverage, log, isoelastic, piecewise_linear, table };

// Concave nondecreasing reward phi on nonnegative integers. Closed forms are
// defined pre-normalized (phi(0) = 0, phi(1) = 1); table rewards may be built
// raw and normalized explicitly. Immutable and freely shareable.
class Reward {
 public:
  // min(x, c), c >= 1.
  static Reward multi_coverage(long long c);
  // log(1 + x) / log 2.
  static Reward log_reward();
  // x^(1 - gamma), gamma in (0, 1).
  static Reward isoelastic(double gamma);
  // beta * x + (1 - beta) * min(x, c), c >= 1, beta in [0, 1].
  static Reward piecewise_linear(long long c, double beta);
  // Explicit values phi(0), phi(1), ...; must be nondecreasing and concave.
  // Saturates (constant) beyond the table length.
  static Reward table(std::vector<double> values);

  double phi(long long i) const;
  // phi(i) - phi(i-1), i >= 1.
  double slope(long long i) const;
  // Piecewise linear extension: lambda*phi(floor(x)) + (1-lambda)*phi(floor(x)+1)
  // with lambda = 1 - (x - floor(x)). Agrees with phi at integers.
  double extended_phi(double x) const;

  bool is_normalized() const;
  // Affine rescale to phi(0) = 0, phi(1) = 1. Identity when already
  // normalized; throws for degenerate rewards (phi(1) == phi(0)).
  Reward normalized() const;

  // Smallest piece index i >= 1 with slope(i) == 0, or huge() when slopes
  // never vanish. Pieces at or beyond it are one constant piece, so the
  // smoothed objective only needs min(deg, saturation_piece()) pieces.
  long long saturation_piece() const;
  static constexpr long long huge() { return 1LL << 60; }

  RewardKind kind() const { return kind_; }
  long long c() const { return c_; }
  double beta() const { return beta_; }
  double gamma() const { return gamma_; }
  const std::vector<double>& values() const { return values_; }

  // Spec strings: min:c=<int> | log | pow:gamma=<real> |
  // plin:c=<int>,beta=<real> | table:<v0,v1,...>
  static Reward parse(const std::string& spec);
  std::string to_string() const;

 private:
  Reward() = default;

  RewardKind kind_ = RewardKind::multi_coverage;
  long long c_ = 1;
  double beta_ = 0.0;
  double gamma_ = 0.5;
  std::vector<double> values_;
};

}  // namespace covsolve
