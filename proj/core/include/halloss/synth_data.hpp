#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

// Deterministic generators for small regression/classification datasets
// with controllable homoscedastic noise.
namespace halloss::synth {

struct NoiseSpec {
  enum class Kind { kGaussian, kLabelFlip };
  Kind kind = Kind::kGaussian;
  double sigma_true = 0.0;  // Gaussian target noise (regression)
  double flip_rate = 0.0;   // independent label-flip probability
};

struct SyntheticDataset {
  std::size_t dim = 0;
  std::vector<double> inputs;         // row-major, size() * dim
  std::vector<double> targets;        // noisy target / possibly flipped label
  std::vector<double> clean_targets;  // noise-free counterpart
  NoiseSpec noise;
  std::uint64_t seed = 0;
  std::vector<double> true_weights;  // dim weights then bias

  std::size_t size() const { return targets.size(); }
  std::span<const double> input(std::size_t i) const {
    return {inputs.data() + i * dim, dim};
  }

  /// CSV with header x0..x{d-1},target,clean_target.
  void write_csv(std::ostream& os) const;
};

/// Inputs uniform on [-1, 1]^d; target = w.x + b + N(0, sigma_true^2).
/// true_weights carries d weights followed by the bias. Per sample the
/// stream consumes d uniforms then one gaussian (always drawn, scaled by
/// sigma_true, so the inputs coincide across noise levels for one seed).
SyntheticDataset generate_regression(std::size_t n,
                                     std::span<const double> true_weights,
                                     double sigma_true, std::uint64_t seed);

/// Clean label = 1{w.x + b > 0}; each label flips independently with
/// probability flip_rate. Per sample: d uniforms then one flip uniform.
/// Flip events nest across rates for a fixed seed (same flip uniforms).
SyntheticDataset generate_classification(std::size_t n,
                                         std::span<const double> true_weights,
                                         double flip_rate, std::uint64_t seed);

}  // namespace halloss::synth
