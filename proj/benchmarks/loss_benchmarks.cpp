#include <benchmark/benchmark.h>

#include <vector>

#include "halloss/gradient_check.hpp"
#include "halloss/likelihood.hpp"
#include "halloss/losses.hpp"
#include "halloss/scalar_math.hpp"
#include "halloss/synth_data.hpp"
#include "halloss/trainer.hpp"

using namespace halloss;

static void BM_ErfcStable(benchmark::State& state) {
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(math::erfc_stable(x));
    x += 1e-6;
    if (x > 6.0) x = -6.0;
  }
}
BENCHMARK(BM_ErfcStable);

static void BM_LaplaceRateAlpha(benchmark::State& state) {
  const math::ThresholdParam beta(1.0);
  double sg = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(math::laplace_rate_alpha(beta, sg));
    sg += 1e-6;
    if (sg > 4.0) sg = 0.3;
  }
}
BENCHMARK(BM_LaplaceRateAlpha);

static void BM_BayesianSmoothL1(benchmark::State& state) {
  const loss::LossParams params(math::ThresholdParam(1.0), 2.0,
                                math::LogVariance(0.4));
  double eps = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        loss::bayesian_smooth_l1(loss::ErrorNorm(eps), params));
    eps += 1e-5;
    if (eps > 3.0) eps = 0.0;
  }
}
BENCHMARK(BM_BayesianSmoothL1);

static void BM_BayesianFocal(benchmark::State& state) {
  const loss::LossParams params(math::ThresholdParam(1.0), 2.0,
                                math::LogVariance(-0.6));
  double pt = 0.02;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        loss::bayesian_focal(loss::ClassProb(pt), params));
    pt += 1e-5;
    if (pt > 0.98) pt = 0.02;
  }
}
BENCHMARK(BM_BayesianFocal);

static void BM_BoltzmannNll(benchmark::State& state) {
  std::vector<double> logits(state.range(0));
  for (std::size_t i = 0; i < logits.size(); ++i) {
    logits[i] = 0.37 * static_cast<double>(i % 7) - 1.0;
  }
  const math::LogVariance s(0.2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(loss::boltzmann_softmax_nll(logits, 0, s));
  }
}
BENCHMARK(BM_BoltzmannNll)->Arg(2)->Arg(16)->Arg(128);

static void BM_TotalMassQuadrature(benchmark::State& state) {
  const math::ThresholdParam beta(1.0);
  const density::PiecewiseDensitySpec spec(
      1.0, beta, math::laplace_rate_alpha(beta, 1.0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(density::total_mass(spec));
  }
}
BENCHMARK(BM_TotalMassQuadrature);

static void BM_SolveAlpha(benchmark::State& state) {
  const math::ThresholdParam beta(1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(density::solve_alpha(0.5, beta));
  }
}
BENCHMARK(BM_SolveAlpha);

static void BM_GenerateRegression(benchmark::State& state) {
  const std::vector<double> w{1.5, -2.0, 0.7, 0.3, 0.25};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        synth::generate_regression(state.range(0), w, 0.3, 1));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GenerateRegression)->Arg(1000)->Arg(10000);

static void BM_TrainIteration(benchmark::State& state) {
  const std::vector<double> w{1.5, -2.0, 0.7, 0.3, 0.25};
  const auto reg = synth::generate_regression(state.range(0), w, 0.3, 1);
  const auto cls = synth::generate_classification(state.range(0), w, 0.1, 2);
  train::TrainConfig cfg;
  cfg.iterations = 1;
  cfg.record_every = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(train::train(cfg, reg, cls));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TrainIteration)->Arg(1000)->Arg(10000);

BENCHMARK_MAIN();
