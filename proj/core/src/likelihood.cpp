#include "halloss/likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace halloss::density {

PiecewiseDensitySpec::PiecewiseDensitySpec(double sigma_,
                                           math::ThresholdParam beta_,
                                           double alpha_rate_)
    : sigma(sigma_), beta(beta_), alpha_rate(alpha_rate_) {
  if (!std::isfinite(sigma) || sigma <= 0.0) {
    throw std::domain_error("PiecewiseDensitySpec: sigma must be > 0");
  }
  if (!std::isfinite(alpha_rate) || alpha_rate <= 0.0) {
    throw std::domain_error("PiecewiseDensitySpec: alpha_rate must be > 0");
  }
}

double piecewise_density(double t, const PiecewiseDensitySpec& spec) {
  const double at = std::fabs(t);
  if (at < spec.boundary()) {
    const double z = at / spec.sigma;
    return std::exp(-0.5 * z * z) /
           (spec.sigma * std::sqrt(2.0 * std::numbers::pi));
  }
  return 0.5 * spec.alpha_rate * std::exp(-spec.alpha_rate * at);
}

namespace {

// Gauss-Kronrod 7-15 nodes/weights on [-1, 1]. Nodes are the positive
// half; index 0 is the center. g7 weights are zero on the Kronrod-only
// nodes.
struct Gk15Row {
  double node, g7, k15;
};
constexpr Gk15Row kGk15[8] = {
    {0.000000000000000000, 0.417959183673469388, 0.209482141084727828},
    {0.405845151377397167, 0.381830050505118945, 0.190350578064785410},
    {0.741531185599394440, 0.279705391489276668, 0.140653259715525919},
    {0.949107912342758525, 0.129484966168869693, 0.063092092629978553},
    {0.207784955007898468, 0.0, 0.204432940075298892},
    {0.586087235467691130, 0.0, 0.169004726639267903},
    {0.864864423359769073, 0.0, 0.104790010322250184},
    {0.991455371120812639, 0.0, 0.022935322010529225},
};

struct Interval {
  double a, b, value, error;
};

Interval gk15(double (*f)(double, const void*), const void* ctx, double a,
              double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  const double fc = f(center, ctx);
  double g7 = kGk15[0].g7 * fc;
  double k15 = kGk15[0].k15 * fc;
  for (int i = 1; i < 8; ++i) {
    const double dx = half * kGk15[i].node;
    const double fsum = f(center + dx, ctx) + f(center - dx, ctx);
    g7 += kGk15[i].g7 * fsum;
    k15 += kGk15[i].k15 * fsum;
  }
  g7 *= half;
  k15 *= half;

  const double diff = std::fabs(g7 - k15);
  // QUADPACK-style sharpened estimate; min keeps it from exceeding diff.
  const double err = std::min(diff, 200.0 * diff * std::sqrt(200.0 * diff));
  return {a, b, k15, err};
}

}  // namespace

QuadResult integrate_adaptive(double (*f)(double, const void*),
                              const void* ctx, double a, double b,
                              const QuadConfig& quad) {
  std::vector<Interval> stack;
  stack.push_back(gk15(f, ctx, a, b));

  double value = 0.0;
  double error = 0.0;
  int used = 1;
  while (!stack.empty()) {
    const Interval iv = stack.back();
    stack.pop_back();
    const double local_tol = std::max(
        quad.abs_tol * (iv.b - iv.a) / (b - a), quad.rel_tol * std::fabs(iv.value));
    if (iv.error <= local_tol || used >= quad.max_intervals) {
      value += iv.value;
      error += iv.error;
      continue;
    }
    const double mid = 0.5 * (iv.a + iv.b);
    stack.push_back(gk15(f, ctx, iv.a, mid));
    stack.push_back(gk15(f, ctx, mid, iv.b));
    used += 2;
  }

  QuadResult out;
  out.value = value;
  out.error_estimate = error;
  out.converged =
      error <= std::max(quad.abs_tol, quad.rel_tol * std::fabs(value));
  return out;
}

namespace {

double density_adapter(double t, const void* ctx) {
  return piecewise_density(t, *static_cast<const PiecewiseDensitySpec*>(ctx));
}

}  // namespace

MassResult total_mass(const PiecewiseDensitySpec& spec,
                      const QuadConfig& quad) {
  const double boundary = spec.boundary();
  const double cut = quad.tail_cut > 0.0 ? quad.tail_cut : boundary;
  const double t = math::tau(spec.beta, spec.sigma);

  MassResult out;
  // Inner Gaussian mass is 1 - tau by the erf identity; the Laplace tail
  // beyond the boundary integrates to e^{-alpha/beta^2}.
  out.mass = (1.0 - t) + std::exp(-spec.alpha_rate * boundary);

  // Numeric route: density integrated over [-cut, cut] (even, so twice the
  // half-range; split at the boundary where the density jumps), analytic
  // Laplace tail beyond.
  QuadResult core;
  if (cut <= boundary) {
    core = integrate_adaptive(density_adapter, &spec, 0.0, cut, quad);
  } else {
    QuadConfig half = quad;
    half.abs_tol = 0.5 * quad.abs_tol;
    const QuadResult inner =
        integrate_adaptive(density_adapter, &spec, 0.0, boundary, half);
    const QuadResult outer =
        integrate_adaptive(density_adapter, &spec, boundary, cut, half);
    core.value = inner.value + outer.value;
    core.error_estimate = inner.error_estimate + outer.error_estimate;
    core.converged = inner.converged && outer.converged;
  }
  const double tail = std::exp(-spec.alpha_rate * std::max(cut, boundary));
  out.mass_quadrature = 2.0 * core.value + tail;
  out.quad_error = 2.0 * core.error_estimate;
  out.quad_converged = core.converged;
  return out;
}

double solve_alpha(double sigma, math::ThresholdParam beta,
                   const QuadConfig& quad) {
  if (!std::isfinite(sigma) || sigma <= 0.0) {
    throw std::domain_error("solve_alpha: sigma must be > 0");
  }
  const double t = math::tau(beta, sigma);
  if (t < std::numeric_limits<double>::min()) {
    throw std::domain_error(
        "solve_alpha: outer mass underflows for this (sigma, beta); "
        "the rate is saturated and has no bracketable root");
  }

  const double boundary = beta.switch_point();
  // Mass residual as a function of alpha: the Gaussian core contributes
  // 1 - tau independent of alpha, so total_mass - 1 = e^{-alpha/beta^2} - tau.
  // Strictly decreasing in alpha, hence a plain bisection bracket.
  const auto residual = [&](double alpha) {
    return std::exp(-alpha * boundary) - t;
  };

  double lo = 1e-8;
  double hi = 1e8;
  double r_lo = residual(lo);
  double r_hi = residual(hi);
  if (r_lo < 0.0 || r_hi > 0.0) {
    throw std::domain_error("solve_alpha: root not bracketed on [1e-8, 1e8]");
  }

  // The residual tolerance alone cannot terminate the search when tau is
  // tiny (the residual is below any fixed tolerance on a huge alpha range),
  // so bisect until the bracket itself is tight.
  for (int i = 0; i < 200 && hi - lo > 1e-14 * std::max(1.0, lo); ++i) {
    const double mid = 0.5 * (lo + hi);
    const double r = residual(mid);
    if (r == 0.0) {
      lo = hi = mid;
      break;
    }
    if (r > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double alpha = 0.5 * (lo + hi);

  // Postcondition from the contract: the solved rate closes the mass gap.
  const PiecewiseDensitySpec spec(sigma, beta, alpha);
  const MassResult m = total_mass(spec, quad);
  if (std::fabs(m.mass - 1.0) > 1e-10) {
    throw std::runtime_error("solve_alpha: mass residual above 1e-10");
  }
  return alpha;
}

}  // namespace halloss::density
