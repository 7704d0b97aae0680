#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "halloss/losses.hpp"
#include "halloss/synth_data.hpp"

// Deterministic full-batch first-order trainer that jointly learns linear
// task weights and the two log-variances by minimizing
//   L(W, s1, s2) = BSmoothL1 + class_weight * BFL.
namespace halloss::train {

struct ToyModel {
  std::vector<double> weights_reg;  // dim weights then bias
  std::vector<double> weights_cls;
};

enum class Optimizer { kGradientDescent, kAdam };

struct TrainConfig {
  double learning_rate = 1e-2;
  // Multiplier on the learning rate for s1/s2 (same rate by default).
  double s_lr_scale = 1.0;
  std::size_t iterations = 5000;
  double s1_init = 1.0;
  double s2_init = 0.0;
  double beta = 1.0;
  double gamma = 2.0;
  double class_weight = 1.0;
  std::uint64_t seed = 0;
  // Magnitude of the uniform random weight init; 0 means all-zeros.
  double init_scale = 0.0;
  loss::Reduction reduction = loss::Reduction::kMean;
  Optimizer optimizer = Optimizer::kGradientDescent;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
  std::size_t record_every = 1;
  double divergence_threshold = 1e6;
};

struct TrajectoryPoint {
  std::size_t iteration;
  double total;
  double reg;
  double cls;
};

struct TrainReport {
  ToyModel final_model;
  double s1_final = 0.0;
  double s2_final = 0.0;
  double sigma1_hat = 0.0;
  double sigma2_hat = 0.0;
  std::vector<TrajectoryPoint> loss_trajectory;
  double wall_time_seconds = 0.0;
  bool diverged = false;
  std::size_t iterations_run = 0;
};

/// Full-batch training. cls_data may be empty only when class_weight == 0.
/// Everything is single-threaded and bitwise deterministic for a given
/// config and data. Aborts early (diverged=true) when the total loss goes
/// non-finite or above divergence_threshold.
TrainReport train(const TrainConfig& config,
                  const synth::SyntheticDataset& reg_data,
                  const synth::SyntheticDataset& cls_data);

/// Root mean square of |y - w.x - b| over a regression dataset.
double residual_rms(const ToyModel& model,
                    const synth::SyntheticDataset& reg_data);

/// Fraction of samples whose sign prediction matches the given labels.
double classification_accuracy(const ToyModel& model,
                               const synth::SyntheticDataset& cls_data,
                               bool against_clean);

/// Key=value report with every result field (weights, log-variances,
/// recovered sigmas, trajectory). Deliberately excludes wall time so that
/// identical runs serialize byte-for-byte; timing goes to the caller's log.
void write_report(std::ostream& os, const TrainConfig& config,
                  const TrainReport& report);

/// Trajectory CSV: iteration,total,reg,cls.
void write_trajectory_csv(std::ostream& os, const TrainReport& report);

}  // namespace halloss::train
