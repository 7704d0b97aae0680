#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

// Central finite-difference verification of the analytic partials exposed
// by the LossEval-returning losses.
namespace halloss::train {

enum class LossId {
  kBayesianSmoothL1,
  kBayesianFocal,
  kBayesianL2,
  kBoltzmannSoftmaxNll,
};

const char* loss_id_name(LossId id);
std::optional<LossId> parse_loss_id(const std::string& name);
inline constexpr LossId kAllLossIds[] = {
    LossId::kBayesianSmoothL1,
    LossId::kBayesianFocal,
    LossId::kBayesianL2,
    LossId::kBoltzmannSoftmaxNll,
};

struct GradCheckEntry {
  std::string point;    // "eps=...;s=...;beta=..." style, ';'-separated
  std::string partial;  // "d_input" or "d_s"
  double analytic = 0.0;
  double numeric = 0.0;
  double rel_error = 0.0;
};

struct GradCheckReport {
  LossId loss;
  std::vector<GradCheckEntry> entries;
  double max_rel_error = 0.0;
};

/// Samples `points` random parameter points (kink neighborhood excluded for
/// the Smooth L1 family) and compares each analytic partial against a
/// symmetric difference quotient with step ~1e-6 * max(1, |x|).
GradCheckReport gradient_check(LossId loss, std::size_t points,
                               std::uint64_t seed);

std::vector<GradCheckReport> gradient_check_all(std::size_t points,
                                                std::uint64_t seed);

}  // namespace halloss::train
