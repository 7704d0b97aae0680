#pragma once

#include "halloss/scalar_math.hpp"

// Numerical verification of the piecewise Gaussian/Laplace likelihood
// density: its total mass, and an independent solver for the Laplace rate
// that inverts the normalization condition instead of using the closed
// form alpha = -beta^2 log(tau).
namespace halloss::density {

/// Gaussian pdf N(0, sigma^2) on |t| < 1/beta^2, full Laplace pdf
/// (alpha/2) e^{-alpha |t|} outside. Generally discontinuous at the
/// boundary; that is the model, not an artifact.
struct PiecewiseDensitySpec {
  double sigma = 1.0;
  math::ThresholdParam beta{};
  double alpha_rate = 1.0;

  PiecewiseDensitySpec() = default;
  PiecewiseDensitySpec(double sigma_, math::ThresholdParam beta_,
                       double alpha_rate_);

  double boundary() const { return beta.switch_point(); }
};

struct QuadConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  // Quadrature covers [-tail_cut, tail_cut]; the Laplace tail beyond it is
  // integrated analytically. 0 means "use the branch boundary".
  double tail_cut = 0.0;
  int max_intervals = 4000;
};

double piecewise_density(double t, const PiecewiseDensitySpec& spec);

struct MassResult {
  /// erf-based closed form: (1 - tau) + e^{-alpha/beta^2}.
  double mass = 0.0;
  /// Adaptive quadrature of the density plus the analytic Laplace tail.
  double mass_quadrature = 0.0;
  /// Achieved quadrature error estimate.
  double quad_error = 0.0;
  bool quad_converged = false;
};

/// Total mass of the density. The closed form is authoritative; the
/// quadrature route is the cross-check that keeps it honest.
MassResult total_mass(const PiecewiseDensitySpec& spec,
                      const QuadConfig& quad = {});

/// Solves total_mass(alpha) = 1 for the Laplace rate by bisection on
/// [1e-8, 1e8]. Matches laplace_rate_alpha(beta, sigma) to ~1e-12 relative;
/// the agreement is what validates the closed form. Throws
/// std::domain_error when sigma is so small the outer mass underflows
/// (saturated regime, no bracketable root).
double solve_alpha(double sigma, math::ThresholdParam beta,
                   const QuadConfig& quad = {});

/// Adaptive Gauss-Kronrod (G7,K15) integration of f over [a, b].
/// Exposed for tests; the interval stack splits until the local error
/// estimate meets the tolerances or max_intervals is exhausted.
struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = false;
};
QuadResult integrate_adaptive(double (*f)(double, const void*),
                              const void* ctx, double a, double b,
                              const QuadConfig& quad);

}  // namespace halloss::density
