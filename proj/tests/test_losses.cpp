#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "halloss/losses.hpp"
#include "halloss/scalar_math.hpp"

using namespace halloss;
using loss::ClassProb;
using loss::ErrorNorm;
using loss::LossParams;
using math::LogVariance;
using math::ThresholdParam;

namespace {
LossParams params(double beta, double gamma, double s) {
  return LossParams(ThresholdParam(beta), gamma, LogVariance(s));
}
}  // namespace

TEST_CASE("smooth_l1 branch values and continuity") {
  const ThresholdParam beta(1.0);
  CHECK(loss::smooth_l1(ErrorNorm(0.0), beta) == 0.0);
  CHECK(loss::smooth_l1(ErrorNorm(0.5), beta) == doctest::Approx(0.125));
  CHECK(loss::smooth_l1(ErrorNorm(2.0), beta) == doctest::Approx(1.5));

  for (const double b : {0.5, 1.0, 2.0, 3.0}) {
    const ThresholdParam bp(b);
    const double kink = bp.switch_point();
    const double below = loss::smooth_l1(ErrorNorm(kink * (1.0 - 1e-9)), bp);
    const double at = loss::smooth_l1(ErrorNorm(kink), bp);
    CHECK(std::fabs(at - below) < 1e-8 * std::max(1.0, at));
  }
}

TEST_CASE("smooth_l1 and focal are nonnegative") {
  for (double e = 0.0; e < 5.0; e += 0.31) {
    for (const double b : {0.5, 1.0, 2.0}) {
      CHECK(loss::smooth_l1(ErrorNorm(e), ThresholdParam(b)) >= 0.0);
    }
  }
  for (double p = 0.01; p < 1.0; p += 0.07) {
    for (const double g : {0.0, 1.0, 2.0, 5.0}) {
      CHECK(loss::focal(ClassProb(p), g) >= 0.0);
    }
  }
}

TEST_CASE("focal reference values") {
  CHECK(loss::focal(ClassProb(0.5), 0.0) ==
        doctest::Approx(0.69314718055994531).epsilon(1e-14));
  CHECK(loss::focal(ClassProb(0.5), 2.0) ==
        doctest::Approx(0.17328679513998633).epsilon(1e-14));
  // Perfectly classified: clamped at 1 - 1e-7, value vanishes.
  CHECK(loss::focal(ClassProb(1.0), 2.0) < 1e-12);
  CHECK(loss::focal(ClassProb(1.0), 0.0) < 1e-6);
}

TEST_CASE("ClassProb clamps and flags") {
  CHECK(ClassProb(0.5).p_t() == 0.5);
  CHECK(!ClassProb(0.5).clamped());
  CHECK(ClassProb(0.0).p_t() == ClassProb::kEps);
  CHECK(ClassProb(1.0).p_t() == 1.0 - ClassProb::kEps);
  CHECK(ClassProb(2.0).clamped());
  CHECK_THROWS_AS(ClassProb(std::nan("")), std::domain_error);
  CHECK_THROWS_AS(ErrorNorm(-0.1), std::domain_error);
}

TEST_CASE("bayesian_smooth_l1 reference values") {
  CHECK(loss::bayesian_smooth_l1(ErrorNorm(0.0), params(1, 2, 0)).value ==
        0.0);
  CHECK(loss::bayesian_smooth_l1(ErrorNorm(0.5), params(1, 2, std::log(4.0)))
            .value == doctest::Approx(0.72439718055994531).epsilon(1e-14));
  CHECK(loss::bayesian_smooth_l1(ErrorNorm(2.0), params(1, 2, 0)).value ==
        doctest::Approx(1.6478744644493182).epsilon(1e-12));
}

TEST_CASE("bayesian_smooth_l1 branches meet at the switch point") {
  for (const double sg : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    for (const double b : {0.5, 1.0, 2.0}) {
      const LossParams p = params(b, 2.0, 2.0 * std::log(sg));
      const double kink = p.beta.switch_point();
      const double inner = loss::detail::bsl1_inner_value(kink, p);
      const double outer = loss::detail::bsl1_outer_value(kink, p);
      CHECK(std::fabs(inner - outer) < 1e-9);
      // Both equal the stated meeting value.
      const double meet =
          0.5 / (sg * sg * std::pow(b, 4)) + std::log(sg);
      CHECK(inner == doctest::Approx(meet).epsilon(1e-12));
    }
  }
}

TEST_CASE("bayesian_smooth_l1 inner curvature is 1/sigma^2") {
  for (const double sg : {0.5, 1.0, 2.0}) {
    const LossParams p = params(0.5, 2.0, 2.0 * std::log(sg));
    const double h = 1e-4;
    for (double e = 0.3; e < 3.0; e += 0.5) {
      const double f0 =
          loss::bayesian_smooth_l1(ErrorNorm(e - h), p).value;
      const double f1 = loss::bayesian_smooth_l1(ErrorNorm(e), p).value;
      const double f2 =
          loss::bayesian_smooth_l1(ErrorNorm(e + h), p).value;
      const double second = (f2 - 2.0 * f1 + f0) / (h * h);
      CHECK(second == doctest::Approx(1.0 / (sg * sg)).epsilon(1e-6));
    }
  }
}

TEST_CASE("bayesian_smooth_l1 outer slope equals the Laplace rate") {
  for (const double sg : {0.5, 1.0, 2.0}) {
    for (const double b : {0.5, 1.0}) {
      const LossParams p = params(b, 2.0, 2.0 * std::log(sg));
      const double e = p.beta.switch_point() * 2.0;
      const auto ev = loss::bayesian_smooth_l1(ErrorNorm(e), p);
      // Exact identity, not approximate: both sides share the computation.
      CHECK(ev.d_input ==
            math::laplace_rate_alpha(p.beta, sg));
    }
  }
}

TEST_CASE("bayesian_smooth_l1 noise ordering at small errors") {
  // At eps = 0 the loss is log sigma: increasing in sigma.
  double prev = -1e9;
  for (const double sg : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    const double v =
        loss::bayesian_smooth_l1(ErrorNorm(0.0), params(1, 2, 2 * std::log(sg)))
            .value;
    CHECK(v > prev);
    prev = v;
  }
  // Inner-branch slope at fixed eps decreases with sigma.
  prev = 1e9;
  for (const double sg : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    const auto ev = loss::bayesian_smooth_l1(
        ErrorNorm(0.5), params(1, 2, 2 * std::log(sg)));
    CHECK(ev.d_input < prev);
    prev = ev.d_input;
  }
}

TEST_CASE("bayesian_smooth_l1 saturated regime stays finite and flagged") {
  const auto ev =
      loss::bayesian_smooth_l1(ErrorNorm(2.0), params(1.0, 2.0, -18.0));
  CHECK(ev.saturated);
  CHECK(std::isfinite(ev.value));
  CHECK(std::isfinite(ev.d_s));
  CHECK(ev.d_input == math::kAlphaCap);
}

TEST_CASE("bayesian_focal reduces to focal at s = 0, bit for bit") {
  for (int i = 1; i <= 99; ++i) {
    const double pt = static_cast<double>(i) / 100.0;
    for (const double g : {0.0, 1.0, 2.0, 5.0}) {
      const double bayes =
          loss::bayesian_focal(ClassProb(pt), params(1, g, 0)).value;
      const double plain = loss::focal(ClassProb(pt), g);
      CHECK(bayes == plain);
    }
  }
}

TEST_CASE("bayesian_focal reference values") {
  CHECK(loss::bayesian_focal(ClassProb(0.5), params(1, 2, 0)).value ==
        doctest::Approx(0.17328679513998633).epsilon(1e-14));
  CHECK(
      loss::bayesian_focal(ClassProb(0.5), params(1, 2, std::log(4.0))).value ==
      doctest::Approx(0.15316533491696050).epsilon(1e-13));
  CHECK(std::fabs(
            loss::bayesian_focal(ClassProb(1.0), params(1, 2, 0)).value) <
        1e-12);
}

TEST_CASE("bayesian_focal can dip negative for sharp sigma near p_t = 1") {
  const auto ev = loss::bayesian_focal(ClassProb(0.99), params(1, 2, -2.0));
  CHECK(ev.value < 0.0);
  CHECK(std::isfinite(ev.value));
}

TEST_CASE("bayesian_l2 reference values") {
  CHECK(loss::bayesian_l2(ErrorNorm(0.0), LogVariance(0.0)).value == 0.0);
  CHECK(loss::bayesian_l2(ErrorNorm(1.0), LogVariance(0.0)).value ==
        doctest::Approx(0.5).epsilon(1e-15));
  CHECK(loss::bayesian_l2(ErrorNorm(1.0), LogVariance(std::log(4.0))).value ==
        doctest::Approx(0.81814718055994531).epsilon(1e-14));
  CHECK(loss::bayesian_l2(ErrorNorm(0.0), LogVariance(0.7)).d_input == 0.0);
}

TEST_CASE("boltzmann_softmax_nll values, limits and errors") {
  const std::vector<double> two_zero{0.0, 0.0};
  CHECK(loss::boltzmann_softmax_nll(two_zero, 0, LogVariance(0)).value ==
        doctest::Approx(0.69314718055994531).epsilon(1e-14));
  const std::vector<double> one_zero{1.0, 0.0};
  CHECK(loss::boltzmann_softmax_nll(one_zero, 0, LogVariance(0)).value ==
        doctest::Approx(0.31326168751822285).epsilon(1e-13));

  // Temperature to infinity: the Boltzmann distribution flattens to 1/K.
  const std::vector<double> logits{3.0, -1.0, 0.5, 2.0, -2.5};
  CHECK(loss::boltzmann_softmax_nll(logits, 0, LogVariance(20.0)).value ==
        doctest::Approx(std::log(5.0)).epsilon(1e-6));

  CHECK_THROWS_AS(
      loss::boltzmann_softmax_nll(std::vector<double>{}, 0, LogVariance(0)),
      std::invalid_argument);
  CHECK_THROWS_AS(loss::boltzmann_softmax_nll(two_zero, 5, LogVariance(0)),
                  std::out_of_range);
}

TEST_CASE("kendall_gal_multitask reference values") {
  CHECK(loss::kendall_gal_multitask(1, 1, LogVariance(0), LogVariance(0)) ==
        doctest::Approx(1.5).epsilon(1e-15));
  CHECK(loss::kendall_gal_multitask(0, 0, LogVariance(0), LogVariance(0)) ==
        0.0);
  CHECK(loss::kendall_gal_multitask(1, 0, LogVariance(std::log(4.0)),
                                    LogVariance(0)) ==
        doctest::Approx(0.81814718055994531).epsilon(1e-14));
}

TEST_CASE("multitask_loss is linear in the class weight") {
  loss::LossEval reg;
  reg.value = 0.5;
  loss::LossEval cls;
  cls.value = 0.2;
  CHECK(loss::multitask_loss(reg, cls, 1.0) == doctest::Approx(0.7));
  CHECK(loss::multitask_loss(reg, cls, 0.0) == doctest::Approx(0.5));
  CHECK(loss::multitask_loss(reg, cls, 2.0) == doctest::Approx(0.9));
  CHECK_THROWS_AS(loss::multitask_loss(reg, cls, -1.0), std::domain_error);
}

TEST_CASE("LossParams validates gamma") {
  CHECK_THROWS_AS(params(1.0, -0.5, 0.0), std::domain_error);
  CHECK_THROWS_AS(params(1.0, std::nan(""), 0.0), std::domain_error);
}
