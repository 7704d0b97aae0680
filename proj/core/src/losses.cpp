#include "halloss/losses.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace halloss::loss {

LossParams::LossParams(ThresholdParam beta_, double gamma_, LogVariance s_)
    : beta(beta_), gamma(gamma_), s(s_) {
  if (!std::isfinite(gamma) || gamma < 0.0) {
    throw std::domain_error("LossParams: gamma must be finite and >= 0");
  }
}

ErrorNorm::ErrorNorm(double eps) {
  if (!std::isfinite(eps) || eps < 0.0) {
    throw std::domain_error("ErrorNorm: eps must be finite and >= 0");
  }
  eps_ = eps;
}

ClassProb::ClassProb(double p_t) {
  if (std::isnan(p_t)) {
    throw std::domain_error("ClassProb: p_t must not be NaN");
  }
  clamped_ = p_t < kEps || p_t > 1.0 - kEps;
  p_t_ = std::clamp(p_t, kEps, 1.0 - kEps);
}

double smooth_l1(ErrorNorm eps, ThresholdParam beta) {
  const double e = eps.eps();
  if (e < beta.switch_point()) {
    return 0.5 * beta.beta_sq() * e * e;
  }
  return e - 0.5 * beta.switch_point();
}

double focal(ClassProb p_t, double gamma) {
  if (!std::isfinite(gamma) || gamma < 0.0) {
    throw std::domain_error("focal: gamma must be finite and >= 0");
  }
  const double p = p_t.p_t();
  return -(std::pow(1.0 - p, gamma) * std::log(p));
}

namespace detail {

double bsl1_inner_value(double eps, const LossParams& params) {
  const double inv_var = params.s.inv_var();
  return 0.5 * eps * eps * inv_var + 0.5 * params.s.s();
}

double bsl1_outer_value(double eps, const LossParams& params) {
  const auto alpha =
      math::laplace_rate_alpha_checked(params.beta, params.s.sigma());
  const double b4 = params.beta.beta_sq() * params.beta.beta_sq();
  // alpha*eps - alpha/beta^2 equals -beta^2*eps*log(tau) + log(tau); the
  // remaining two terms are the continuity correction.
  return alpha.value * eps - alpha.value * params.beta.switch_point() +
         0.5 * params.s.inv_var() / b4 + 0.5 * params.s.s();
}

}  // namespace detail

LossEval bayesian_smooth_l1(ErrorNorm eps, const LossParams& params) {
  const double e = eps.eps();
  const double s = params.s.s();
  const double inv_var = params.s.inv_var();

  if (e < params.beta.switch_point()) {
    LossEval out;
    out.value = 0.5 * e * e * inv_var + 0.5 * s;
    out.d_input = e * inv_var;
    out.d_s = -0.5 * e * e * inv_var + 0.5;
    return out;
  }

  const double sigma = params.s.sigma();
  const auto alpha = math::laplace_rate_alpha_checked(params.beta, sigma);
  const double b2 = params.beta.beta_sq();
  const double b4 = b2 * b2;

  LossEval out;
  out.saturated = alpha.saturated;
  out.value = alpha.value * e - alpha.value * params.beta.switch_point() +
              0.5 * inv_var / b4 + 0.5 * s;
  out.d_input = alpha.value;

  // d alpha/ds = -beta^2 * z e^{-z^2} / (sqrt(pi) tau) with z the erfc
  // argument; zero in the saturated regime where alpha is pinned at the cap.
  double dalpha_ds = 0.0;
  if (!alpha.saturated) {
    const double z = 1.0 / (b2 * sigma * std::sqrt(2.0));
    const double t = math::tau(params.beta, sigma);
    dalpha_ds =
        -b2 * z * std::exp(-z * z) / (std::sqrt(std::numbers::pi) * t);
  }
  out.d_s = dalpha_ds * (e - params.beta.switch_point()) -
            0.5 * inv_var / b4 + 0.5;
  return out;
}

LossEval bayesian_focal(ClassProb p_t, const LossParams& params) {
  const double p = p_t.p_t();
  const double u = 1.0 - p;
  const double s = params.s.s();
  const double gamma = params.gamma;
  const double k = params.s.inv_var();
  const double log_p = std::log(p);
  const double log_u = std::log(u);

  // Prefactor [(1/sigma)(1-p_t)^{1/sigma^2}]^gamma, kept as
  // sigma^{-gamma} * u^{gamma k} so the s = 0 case degenerates to
  // pow(u, gamma) bit-for-bit.
  const double sig_pow = std::exp(-0.5 * gamma * s);
  const double u_pow = std::pow(u, gamma * k);
  const double prefactor = u_pow == 0.0 ? 0.0 : sig_pow * u_pow;
  const double bracket = k * log_p - 0.5 * s;

  LossEval out;
  out.value = -(prefactor * bracket);
  out.d_input = prefactor * k * (gamma * bracket / u - 1.0 / p);
  out.d_s = prefactor *
            (gamma * (0.5 + k * log_u) * bracket + k * log_p + 0.5);
  return out;
}

LossEval bayesian_l2(ErrorNorm eps, LogVariance s) {
  const double e = eps.eps();
  const double inv_var = s.inv_var();
  LossEval out;
  out.value = 0.5 * e * e * inv_var + 0.5 * s.s();
  out.d_input = e * inv_var;
  out.d_s = -0.5 * e * e * inv_var + 0.5;
  return out;
}

LossEval boltzmann_softmax_nll(std::span<const double> logits, std::size_t c,
                               LogVariance s) {
  if (logits.empty()) {
    throw std::invalid_argument("boltzmann_softmax_nll: empty logits");
  }
  if (c >= logits.size()) {
    throw std::out_of_range("boltzmann_softmax_nll: class index out of range");
  }

  const double k = s.inv_var();
  double max_g = -std::numeric_limits<double>::infinity();
  for (const double f : logits) {
    max_g = std::max(max_g, k * f);
  }
  double norm = 0.0;
  for (const double f : logits) {
    norm += std::exp(k * f - max_g);
  }
  const double lse = max_g + std::log(norm);

  // Softmax expectation of the logits, for d/ds.
  double mean_f = 0.0;
  for (const double f : logits) {
    mean_f += std::exp(k * f - max_g) / norm * f;
  }

  const double p_c = std::exp(k * logits[c] - max_g) / norm;

  LossEval out;
  out.value = -k * logits[c] + lse;
  out.d_input = k * (p_c - 1.0);
  out.d_s = k * (logits[c] - mean_f);
  return out;
}

double kendall_gal_multitask(double l_reg, double l_cls, LogVariance s1,
                             LogVariance s2) {
  if (!std::isfinite(l_reg) || !std::isfinite(l_cls)) {
    throw std::domain_error("kendall_gal_multitask: losses must be finite");
  }
  return 0.5 * s1.inv_var() * l_reg + 0.5 * s1.s() + s2.inv_var() * l_cls +
         0.5 * s2.s();
}

double multitask_loss(const LossEval& reg, const LossEval& cls,
                      double class_weight) {
  if (!std::isfinite(class_weight) || class_weight < 0.0) {
    throw std::domain_error("multitask_loss: class_weight must be >= 0");
  }
  return reg.value + class_weight * cls.value;
}

}  // namespace halloss::loss
