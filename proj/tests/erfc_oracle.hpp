#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>

// Test-only erfc, deliberately independent of both libm's erfc and the
// library under test: Maclaurin series of erf on |x| <= 2, Laplace
// continued fraction (modified Lentz) beyond, reflection for negatives.
namespace halloss::testing {

namespace detail {

inline double erf_series(double x) {
  // erf(x) = (2/sqrt(pi)) sum (-1)^n x^{2n+1} / (n! (2n+1))
  const double x2 = x * x;
  double term = x;
  double sum = x;
  for (std::size_t n = 1; n < 200; ++n) {
    term *= -x2 / static_cast<double>(n);
    const double inc = term / static_cast<double>(2 * n + 1);
    sum += inc;
    if (std::fabs(inc) < 1e-18 * std::fabs(sum)) break;
  }
  return 2.0 / std::sqrt(std::numbers::pi) * sum;
}

inline double erfc_continued_fraction(double x) {
  // sqrt(pi) e^{x^2} erfc(x) = 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
  // evaluated with modified Lentz; partial numerator a_j = (j-1)/2 for
  // j >= 2, a_1 = 1, all partial denominators are x.
  constexpr double kTiny = 1e-300;
  double f = kTiny;
  double c = f;
  double d = 0.0;
  for (std::size_t j = 1; j < 400; ++j) {
    const double a = j == 1 ? 1.0 : static_cast<double>(j - 1) / 2.0;
    d = x + a * d;
    if (d == 0.0) d = kTiny;
    c = x + a / c;
    if (c == 0.0) c = kTiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::fabs(delta - 1.0) < 1e-17) break;
  }
  return std::exp(-x * x) / std::sqrt(std::numbers::pi) * f;
}

}  // namespace detail

inline double erfc_oracle(double x) {
  if (x < 0.0) return 2.0 - erfc_oracle(-x);
  if (x <= 2.0) return 1.0 - detail::erf_series(x);
  return detail::erfc_continued_fraction(x);
}

// mpmath reference values, 18 significant digits.
struct ErfcRef {
  double x;
  double value;
};
inline constexpr ErfcRef kErfcTable[] = {
    {0.1, 0.887537083981715108},
    {0.5, 0.479500122186953462},
    {1, 0.157299207050285131},
    {1.5, 0.0338948535246892729},
    {2, 0.00467773498104726584},
    {2.5, 0.00040695201744495894},
    {3, 0.0000220904969985854414},
    {4, 1.54172579002800189e-8},
    {4.5, 1.96616044154288748e-10},
    {5, 1.53745979442803485e-12},
    {6, 2.15197367124989131e-17},
    {-0.5, 1.52049987781304654},
    {-1, 1.84270079294971487},
    {-2, 1.99532226501895273},
    {-3, 1.99997790950300141},
    {-4.5, 1.99999999980338396},
    {-6, 1.99999999999999998},
};

}  // namespace halloss::testing
