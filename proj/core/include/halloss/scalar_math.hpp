#pragma once

#include <cmath>

// Stable special-function helpers and the sigma/tau/alpha quantities the
// loss and density modules are built on.
namespace halloss::math {

// Clamp bounds for the log-variance parameter s = log(sigma^2). Keeps
// sigma = exp(s/2) inside [e^-10, e^10] so no downstream exp/log can
// produce inf or NaN.
inline constexpr double kLogVarMin = -20.0;
inline constexpr double kLogVarMax = 20.0;

// Cap applied to the Laplace rate when tau underflows to zero. The rate
// is reported saturated instead of raising, so a trainer can transit
// extreme s values without dying.
inline constexpr double kAlphaCap = 1e6;

/// Learnable log-variance s = log(sigma^2), clamped to [-20, 20].
class LogVariance {
 public:
  LogVariance() = default;
  explicit LogVariance(double log_var);

  double s() const { return s_; }
  double sigma() const { return std::exp(0.5 * s_); }
  /// 1 / sigma^2 = exp(-s).
  double inv_var() const { return std::exp(-s_); }

 private:
  double s_ = 0.0;
};

/// Branch-threshold parameter beta > 0; the quadratic/linear switch of the
/// Smooth L1 family sits at eps = 1/beta^2.
class ThresholdParam {
 public:
  ThresholdParam() = default;
  explicit ThresholdParam(double beta);

  double beta() const { return beta_; }
  double beta_sq() const { return beta_ * beta_; }
  double switch_point() const { return 1.0 / (beta_ * beta_); }

 private:
  double beta_ = 1.0;
};

/// Complementary error function. Never computed as 1 - erf(x), so there is
/// no cancellation for large positive arguments. Throws std::domain_error
/// for non-finite input.
double erfc_stable(double x);

/// tau = erfc(1/(beta^2 * sigma * sqrt(2))) in (0, 1): the probability mass
/// a N(0, sigma^2) leaves outside the inner region |t| < 1/beta^2.
double tau(ThresholdParam beta, double sigma);

struct AlphaResult {
  double value = 0.0;
  bool saturated = false;
};

/// Laplace rate alpha = -beta^2 * log(tau). Saturates at kAlphaCap when tau
/// underflows (sigma extremely small for the given beta).
AlphaResult laplace_rate_alpha_checked(ThresholdParam beta, double sigma);

/// Value-only convenience over laplace_rate_alpha_checked.
double laplace_rate_alpha(ThresholdParam beta, double sigma);

/// sigma = exp(s/2).
double sigma_from_log_variance(LogVariance s);

}  // namespace halloss::math
