#include "halloss/trainer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "halloss/format.hpp"
#include "halloss/rng.hpp"
#include "halloss/scalar_math.hpp"

namespace halloss::train {

namespace {

double sigmoid(double z) {
  if (z >= 0.0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double predict(const std::vector<double>& weights, std::span<const double> x) {
  double acc = weights[x.size()];
  for (std::size_t k = 0; k < x.size(); ++k) {
    acc += weights[k] * x[k];
  }
  return acc;
}

// w.x + b where [w | b] lives at params[offset .. offset + x.size()].
double predict_at(const std::vector<double>& params, std::size_t offset,
                  std::span<const double> x) {
  double acc = params[offset + x.size()];
  for (std::size_t k = 0; k < x.size(); ++k) {
    acc += params[offset + k] * x[k];
  }
  return acc;
}

// One first-order update; Adam state owned by the caller.
struct AdamState {
  std::vector<double> m, v;
  double beta1_pow = 1.0, beta2_pow = 1.0;
};

void apply_update(std::vector<double>& params,
                  const std::vector<double>& grads,
                  const std::vector<double>& rates, const TrainConfig& cfg,
                  AdamState& adam) {
  if (cfg.optimizer == Optimizer::kGradientDescent) {
    for (std::size_t i = 0; i < params.size(); ++i) {
      params[i] -= rates[i] * grads[i];
    }
    return;
  }
  if (adam.m.empty()) {
    adam.m.assign(params.size(), 0.0);
    adam.v.assign(params.size(), 0.0);
  }
  adam.beta1_pow *= cfg.adam_beta1;
  adam.beta2_pow *= cfg.adam_beta2;
  for (std::size_t i = 0; i < params.size(); ++i) {
    adam.m[i] = cfg.adam_beta1 * adam.m[i] + (1.0 - cfg.adam_beta1) * grads[i];
    adam.v[i] = cfg.adam_beta2 * adam.v[i] +
                (1.0 - cfg.adam_beta2) * grads[i] * grads[i];
    const double m_hat = adam.m[i] / (1.0 - adam.beta1_pow);
    const double v_hat = adam.v[i] / (1.0 - adam.beta2_pow);
    params[i] -= rates[i] * m_hat / (std::sqrt(v_hat) + cfg.adam_eps);
  }
}

void validate(const TrainConfig& cfg, const synth::SyntheticDataset& reg_data,
              const synth::SyntheticDataset& cls_data) {
  if (!(cfg.learning_rate > 0.0) || !std::isfinite(cfg.learning_rate)) {
    throw std::invalid_argument("train: learning_rate must be > 0");
  }
  if (cfg.iterations < 1) {
    throw std::invalid_argument("train: iterations must be >= 1");
  }
  if (cfg.record_every < 1) {
    throw std::invalid_argument("train: record_every must be >= 1");
  }
  if (cfg.class_weight < 0.0 || !std::isfinite(cfg.class_weight)) {
    throw std::invalid_argument("train: class_weight must be >= 0");
  }
  if (reg_data.size() == 0) {
    throw std::invalid_argument("train: regression dataset is empty");
  }
  if (cls_data.size() == 0 && cfg.class_weight != 0.0) {
    throw std::invalid_argument(
        "train: classification dataset is empty but class_weight != 0");
  }
}

}  // namespace

TrainReport train(const TrainConfig& config,
                  const synth::SyntheticDataset& reg_data,
                  const synth::SyntheticDataset& cls_data) {
  validate(config, reg_data, cls_data);
  const auto t0 = std::chrono::steady_clock::now();

  const bool use_cls = config.class_weight != 0.0 && cls_data.size() > 0;
  const std::size_t dim_reg = reg_data.dim;
  const std::size_t dim_cls = use_cls ? cls_data.dim : dim_reg;

  // Parameter vector: [w_reg (dim+1) | w_cls (dim+1) | s1 | s2].
  const std::size_t nw_reg = dim_reg + 1;
  const std::size_t nw_cls = dim_cls + 1;
  std::vector<double> params(nw_reg + nw_cls + 2, 0.0);
  if (config.init_scale > 0.0) {
    synth::Xoshiro256pp rng(config.seed);
    for (std::size_t i = 0; i < nw_reg + nw_cls; ++i) {
      params[i] = rng.uniform(-config.init_scale, config.init_scale);
    }
  }
  const std::size_t s1_ix = nw_reg + nw_cls;
  const std::size_t s2_ix = s1_ix + 1;
  params[s1_ix] = math::LogVariance(config.s1_init).s();
  params[s2_ix] = math::LogVariance(config.s2_init).s();

  std::vector<double> rates(params.size(), config.learning_rate);
  rates[s1_ix] = config.learning_rate * config.s_lr_scale;
  rates[s2_ix] = config.learning_rate * config.s_lr_scale;

  const math::ThresholdParam beta(config.beta);
  const double red_reg = config.reduction == loss::Reduction::kMean
                             ? 1.0 / static_cast<double>(reg_data.size())
                             : 1.0;
  const double red_cls =
      use_cls ? (config.reduction == loss::Reduction::kMean
                     ? 1.0 / static_cast<double>(cls_data.size())
                     : 1.0)
              : 0.0;

  TrainReport report;
  std::vector<double> grads(params.size(), 0.0);
  AdamState adam;

  for (std::size_t it = 0; it < config.iterations; ++it) {
    std::fill(grads.begin(), grads.end(), 0.0);
    const math::LogVariance s1(params[s1_ix]);
    const math::LogVariance s2(params[s2_ix]);

    // Regression task: eps_i = |y_i - w.x_i - b| through Bayesian Smooth L1.
    const loss::LossParams reg_params(beta, config.gamma, s1);
    double loss_reg = 0.0;
    for (std::size_t i = 0; i < reg_data.size(); ++i) {
      const auto x = reg_data.input(i);
      const double res = reg_data.targets[i] - predict_at(params, 0, x);
      const double eps = std::fabs(res);
      const auto ev =
          loss::bayesian_smooth_l1(loss::ErrorNorm(eps), reg_params);
      loss_reg += red_reg * ev.value;
      // d eps / d pred = -sign(res); sign(0) contributes nothing since
      // d_input vanishes at eps = 0 on the inner branch.
      const double dpred =
          red_reg * ev.d_input * (res > 0.0 ? -1.0 : (res < 0.0 ? 1.0 : 0.0));
      for (std::size_t k = 0; k < dim_reg; ++k) {
        grads[k] += dpred * x[k];
      }
      grads[dim_reg] += dpred;
      grads[s1_ix] += red_reg * ev.d_s;
    }

    // Classification task: p_t through Bayesian Focal.
    double loss_cls = 0.0;
    if (use_cls) {
      const loss::LossParams cls_params(beta, config.gamma, s2);
      for (std::size_t j = 0; j < cls_data.size(); ++j) {
        const auto x = cls_data.input(j);
        const double z = predict_at(params, nw_reg, x);
        const double p = sigmoid(z);
        const bool positive = cls_data.targets[j] > 0.5;
        const loss::ClassProb pt(positive ? p : 1.0 - p);
        const auto ev = loss::bayesian_focal(pt, cls_params);
        loss_cls += red_cls * ev.value;
        // dp_t/dz; zero where the clamp is active.
        const double dpt_dz =
            pt.clamped() ? 0.0 : (positive ? 1.0 : -1.0) * p * (1.0 - p);
        const double dz = red_cls * ev.d_input * dpt_dz;
        for (std::size_t k = 0; k < dim_cls; ++k) {
          grads[nw_reg + k] += dz * x[k];
        }
        grads[nw_reg + dim_cls] += dz;
        grads[s2_ix] += red_cls * ev.d_s;
      }
    }

    const double total = loss_reg + config.class_weight * loss_cls;
    if (it % config.record_every == 0 || it + 1 == config.iterations) {
      report.loss_trajectory.push_back({it, total, loss_reg, loss_cls});
    }
    report.iterations_run = it + 1;

    if (!std::isfinite(total) || total > config.divergence_threshold) {
      report.diverged = true;
      break;
    }

    // class_weight scales the whole classification term, s2 included.
    for (std::size_t k = nw_reg; k < nw_reg + nw_cls; ++k) {
      grads[k] *= config.class_weight;
    }
    grads[s2_ix] *= config.class_weight;

    apply_update(params, grads, rates, config, adam);
    params[s1_ix] = std::clamp(params[s1_ix], math::kLogVarMin,
                               math::kLogVarMax);
    params[s2_ix] = std::clamp(params[s2_ix], math::kLogVarMin,
                               math::kLogVarMax);
  }

  report.final_model.weights_reg.assign(params.begin(),
                                        params.begin() + nw_reg);
  report.final_model.weights_cls.assign(params.begin() + nw_reg,
                                        params.begin() + nw_reg + nw_cls);
  report.s1_final = params[s1_ix];
  report.s2_final = params[s2_ix];
  report.sigma1_hat = math::LogVariance(params[s1_ix]).sigma();
  report.sigma2_hat = math::LogVariance(params[s2_ix]).sigma();
  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return report;
}

double residual_rms(const ToyModel& model,
                    const synth::SyntheticDataset& reg_data) {
  if (reg_data.size() == 0) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < reg_data.size(); ++i) {
    const double res =
        reg_data.targets[i] - predict(model.weights_reg, reg_data.input(i));
    acc += res * res;
  }
  return std::sqrt(acc / static_cast<double>(reg_data.size()));
}

double classification_accuracy(const ToyModel& model,
                               const synth::SyntheticDataset& cls_data,
                               bool against_clean) {
  if (cls_data.size() == 0) return 0.0;
  std::size_t hits = 0;
  const auto& labels =
      against_clean ? cls_data.clean_targets : cls_data.targets;
  for (std::size_t i = 0; i < cls_data.size(); ++i) {
    const double z = predict(model.weights_cls, cls_data.input(i));
    const double predicted = z > 0.0 ? 1.0 : 0.0;
    hits += predicted == labels[i] ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(cls_data.size());
}

void write_report(std::ostream& os, const TrainConfig& config,
                  const TrainReport& report) {
  const auto put = [&](const char* key, const std::string& value) {
    os << key << '=' << value << '\n';
  };
  const auto putd = [&](const char* key, double v) { put(key, io::dtos(v)); };

  os << "# halloss train report\n";
  putd("learning_rate", config.learning_rate);
  putd("s_lr_scale", config.s_lr_scale);
  put("iterations", std::to_string(config.iterations));
  putd("s1_init", config.s1_init);
  putd("s2_init", config.s2_init);
  putd("beta", config.beta);
  putd("gamma", config.gamma);
  putd("class_weight", config.class_weight);
  put("seed", std::to_string(config.seed));
  putd("init_scale", config.init_scale);
  put("reduction",
      config.reduction == loss::Reduction::kMean ? "mean" : "sum");
  put("optimizer",
      config.optimizer == Optimizer::kGradientDescent ? "gd" : "adam");
  put("record_every", std::to_string(config.record_every));

  put("diverged", report.diverged ? "true" : "false");
  put("iterations_run", std::to_string(report.iterations_run));
  putd("s1_final", report.s1_final);
  putd("s2_final", report.s2_final);
  putd("sigma1_hat", report.sigma1_hat);
  putd("sigma2_hat", report.sigma2_hat);

  const auto put_weights = [&](const char* key,
                               const std::vector<double>& w) {
    os << key << '=';
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i != 0) os << ',';
      os << io::dtos(w[i]);
    }
    os << '\n';
  };
  put_weights("weights_reg", report.final_model.weights_reg);
  put_weights("weights_cls", report.final_model.weights_cls);
  put("trajectory_points", std::to_string(report.loss_trajectory.size()));
  if (!report.loss_trajectory.empty()) {
    const auto& last = report.loss_trajectory.back();
    putd("final_total_loss", last.total);
    putd("final_reg_loss", last.reg);
    putd("final_cls_loss", last.cls);
  }
}

void write_trajectory_csv(std::ostream& os, const TrainReport& report) {
  os << "iteration,total,reg,cls\n";
  for (const auto& p : report.loss_trajectory) {
    os << p.iteration << ',' << io::dtos(p.total) << ',' << io::dtos(p.reg)
       << ',' << io::dtos(p.cls) << '\n';
  }
}

}  // namespace halloss::train
