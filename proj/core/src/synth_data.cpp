#include "halloss/synth_data.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "halloss/format.hpp"
#include "halloss/rng.hpp"

namespace halloss::synth {

namespace {

double affine(std::span<const double> weights, std::span<const double> x) {
  double acc = weights[x.size()];  // bias last
  for (std::size_t k = 0; k < x.size(); ++k) {
    acc += weights[k] * x[k];
  }
  return acc;
}

void validate_weights(std::span<const double> true_weights) {
  if (true_weights.size() < 2) {
    throw std::invalid_argument(
        "generate: true_weights needs at least one weight plus a bias");
  }
  for (const double w : true_weights) {
    if (!std::isfinite(w)) {
      throw std::invalid_argument("generate: true_weights must be finite");
    }
  }
}

}  // namespace

void SyntheticDataset::write_csv(std::ostream& os) const {
  for (std::size_t k = 0; k < dim; ++k) {
    os << 'x' << k << ',';
  }
  os << "target,clean_target\n";
  for (std::size_t i = 0; i < size(); ++i) {
    for (const double v : input(i)) {
      os << io::dtos(v) << ',';
    }
    os << io::dtos(targets[i]) << ',' << io::dtos(clean_targets[i]) << '\n';
  }
}

SyntheticDataset generate_regression(std::size_t n,
                                     std::span<const double> true_weights,
                                     double sigma_true, std::uint64_t seed) {
  validate_weights(true_weights);
  if (!std::isfinite(sigma_true) || sigma_true < 0.0) {
    throw std::invalid_argument("generate_regression: sigma_true must be >= 0");
  }

  SyntheticDataset ds;
  ds.dim = true_weights.size() - 1;
  ds.noise = {NoiseSpec::Kind::kGaussian, sigma_true, 0.0};
  ds.seed = seed;
  ds.true_weights.assign(true_weights.begin(), true_weights.end());
  ds.inputs.reserve(n * ds.dim);
  ds.targets.reserve(n);
  ds.clean_targets.reserve(n);

  Xoshiro256pp rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < ds.dim; ++k) {
      ds.inputs.push_back(rng.uniform(-1.0, 1.0));
    }
    const double clean = affine(true_weights, ds.input(i));
    ds.clean_targets.push_back(clean);
    ds.targets.push_back(clean + sigma_true * rng.gaussian());
  }
  return ds;
}

SyntheticDataset generate_classification(std::size_t n,
                                         std::span<const double> true_weights,
                                         double flip_rate,
                                         std::uint64_t seed) {
  validate_weights(true_weights);
  if (!std::isfinite(flip_rate) || flip_rate < 0.0 || flip_rate >= 0.5) {
    throw std::invalid_argument(
        "generate_classification: flip_rate must lie in [0, 0.5)");
  }

  SyntheticDataset ds;
  ds.dim = true_weights.size() - 1;
  ds.noise = {NoiseSpec::Kind::kLabelFlip, 0.0, flip_rate};
  ds.seed = seed;
  ds.true_weights.assign(true_weights.begin(), true_weights.end());
  ds.inputs.reserve(n * ds.dim);
  ds.targets.reserve(n);
  ds.clean_targets.reserve(n);

  Xoshiro256pp rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < ds.dim; ++k) {
      ds.inputs.push_back(rng.uniform(-1.0, 1.0));
    }
    const double clean = affine(true_weights, ds.input(i)) > 0.0 ? 1.0 : 0.0;
    const bool flip = rng.uniform01() < flip_rate;
    ds.clean_targets.push_back(clean);
    ds.targets.push_back(flip ? 1.0 - clean : clean);
  }
  return ds;
}

}  // namespace halloss::synth
