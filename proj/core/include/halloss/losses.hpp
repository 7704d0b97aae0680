#pragma once

#include <cstddef>
#include <span>

#include "halloss/scalar_math.hpp"

// Closed-form losses with homoscedastic aleatoric uncertainty, plus the
// plain Smooth L1 / Focal baselines and the reference multi-task forms.
// All gradients are hand-derived closed forms; no autodiff anywhere.
namespace halloss::loss {

using math::LogVariance;
using math::ThresholdParam;

/// Hyperparameters shared by the uncertainty-aware losses. Not every loss
/// reads every field: the Smooth L1 family uses beta and s, the Focal
/// family gamma and s.
struct LossParams {
  ThresholdParam beta{};
  double gamma = 2.0;
  LogVariance s{};

  LossParams() = default;
  LossParams(ThresholdParam beta_, double gamma_, LogVariance s_);
};

/// A loss value with its analytic partials. d_input is the derivative
/// w.r.t. the prediction-side argument: eps for the regression losses, p_t
/// for the focal losses, logits[c] for the Boltzmann log-likelihood.
struct LossEval {
  double value = 0.0;
  double d_input = 0.0;
  double d_s = 0.0;
  // True when the Laplace rate hit its cap (tau underflow); the capped rate
  // is treated as a constant in s there.
  bool saturated = false;
};

/// eps = ||y - f(x)|| >= 0.
class ErrorNorm {
 public:
  ErrorNorm() = default;
  explicit ErrorNorm(double eps);
  double eps() const { return eps_; }

 private:
  double eps_ = 0.0;
};

/// Probability of the true class, clamped to [1e-7, 1 - 1e-7].
class ClassProb {
 public:
  static constexpr double kEps = 1e-7;

  ClassProb() = default;
  explicit ClassProb(double p_t);
  double p_t() const { return p_t_; }
  /// True when the raw input fell outside the clamp interval.
  bool clamped() const { return clamped_; }

 private:
  double p_t_ = 0.5;
  bool clamped_ = false;
};

/// Smooth L1: (beta^2/2) eps^2 below eps = 1/beta^2, eps - 1/(2 beta^2)
/// above. Continuous at the switch point.
double smooth_l1(ErrorNorm eps, ThresholdParam beta);

/// Focal loss -(1 - p_t)^gamma * log(p_t).
double focal(ClassProb p_t, double gamma);

/// Bayesian Smooth L1 with sigma = exp(s/2):
///   inner (eps < 1/beta^2):  eps^2/(2 sigma^2) + log(sigma)
///   outer:                   alpha*eps - alpha/beta^2 + 1/(2 sigma^2 beta^4)
///                            + log(sigma),  alpha = -beta^2 log(tau)
/// The outer form is the continuity-smoothed one; both branches meet at
/// 1/(2 sigma^2 beta^4) + log(sigma). Value-continuous only: the slope
/// jumps from 1/(beta^2 sigma^2) to alpha at the switch point.
LossEval bayesian_smooth_l1(ErrorNorm eps, const LossParams& params);

/// Bayesian Focal loss, grouping as typeset:
///   -[(1/sigma) * (1-p_t)^(1/sigma^2)]^gamma
///     * ((1/sigma^2) log(p_t) - log(sigma))
/// Reduces bit-exactly to focal(p_t, gamma) at s = 0. May go negative for
/// sigma < 1 and p_t near 1; that is the likelihood speaking, not a bug.
LossEval bayesian_focal(ClassProb p_t, const LossParams& params);

/// Bayesian L2: eps^2/(2 sigma^2) + log(sigma).
LossEval bayesian_l2(ErrorNorm eps, LogVariance s);

/// Negative Boltzmann softmax log-likelihood with temperature sigma:
///   -logits[c]/sigma^2 + logsumexp(logits/sigma^2)
/// computed with the max-shift trick. d_input is d/d logits[c].
LossEval boltzmann_softmax_nll(std::span<const double> logits, std::size_t c,
                               LogVariance s);

/// Reference multi-task objective:
///   l_reg/(2 sigma1^2) + log(sigma1) + l_cls/sigma2^2 + log(sigma2).
double kendall_gal_multitask(double l_reg, double l_cls, LogVariance s1,
                             LogVariance s2);

/// reg.value + class_weight * cls.value. The balancing coefficient here is
/// unrelated to the Laplace rate despite the shared name upstream.
double multitask_loss(const LossEval& reg, const LossEval& cls,
                      double class_weight);

enum class Reduction { kMean, kSum };

namespace detail {
// The two branch formulas of bayesian_smooth_l1, evaluated unconditionally.
// Exposed so the continuity of the smoothed form can be checked directly.
double bsl1_inner_value(double eps, const LossParams& params);
double bsl1_outer_value(double eps, const LossParams& params);
}  // namespace detail

}  // namespace halloss::loss
