#include "halloss/scalar_math.hpp"

#include <algorithm>
#include <stdexcept>

namespace halloss::math {

LogVariance::LogVariance(double log_var) {
  if (!std::isfinite(log_var)) {
    throw std::domain_error("LogVariance: s must be finite");
  }
  s_ = std::clamp(log_var, kLogVarMin, kLogVarMax);
}

ThresholdParam::ThresholdParam(double beta) {
  if (!std::isfinite(beta) || beta <= 0.0) {
    throw std::domain_error("ThresholdParam: beta must be finite and > 0");
  }
  beta_ = beta;
}

double erfc_stable(double x) {
  if (!std::isfinite(x)) {
    throw std::domain_error("erfc_stable: argument must be finite");
  }
  // libm's erfc uses a direct rational/asymptotic expansion per range and is
  // accurate to a couple ulp across the board, including the far positive
  // tail where 1 - erf(x) would lose every digit.
  return std::erfc(x);
}

double tau(ThresholdParam beta, double sigma) {
  if (!std::isfinite(sigma) || sigma <= 0.0) {
    throw std::domain_error("tau: sigma must be finite and > 0");
  }
  const double z = 1.0 / (beta.beta_sq() * sigma * std::sqrt(2.0));
  return erfc_stable(z);
}

AlphaResult laplace_rate_alpha_checked(ThresholdParam beta, double sigma) {
  const double t = tau(beta, sigma);
  if (t <= 0.0) {
    return {kAlphaCap, true};
  }
  const double alpha = -beta.beta_sq() * std::log(t);
  if (alpha > kAlphaCap) {
    return {kAlphaCap, true};
  }
  return {alpha, false};
}

double laplace_rate_alpha(ThresholdParam beta, double sigma) {
  return laplace_rate_alpha_checked(beta, sigma).value;
}

double sigma_from_log_variance(LogVariance s) { return s.sigma(); }

}  // namespace halloss::math
