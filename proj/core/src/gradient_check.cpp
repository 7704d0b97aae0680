#include "halloss/gradient_check.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>

#include "halloss/format.hpp"
#include "halloss/losses.hpp"
#include "halloss/rng.hpp"

namespace halloss::train {

namespace {

constexpr double kKinkExclusion = 1e-3;

double central_diff(const std::function<double(double)>& f, double x) {
  const double h = 1e-6 * std::max(1.0, std::fabs(x));
  const double xp = x + h;
  const double xm = x - h;
  return (f(xp) - f(xm)) / (xp - xm);
}

double rel_error(double analytic, double numeric) {
  const double scale =
      std::max({1.0, std::fabs(analytic), std::fabs(numeric)});
  return std::fabs(analytic - numeric) / scale;
}

void push_entry(GradCheckReport& rep, std::string point, const char* partial,
                double analytic, double numeric) {
  GradCheckEntry e;
  e.point = std::move(point);
  e.partial = partial;
  e.analytic = analytic;
  e.numeric = numeric;
  e.rel_error = rel_error(analytic, numeric);
  rep.max_rel_error = std::max(rep.max_rel_error, e.rel_error);
  rep.entries.push_back(std::move(e));
}

std::string describe(std::initializer_list<std::pair<const char*, double>> kv) {
  std::string out;
  for (const auto& [name, value] : kv) {
    if (!out.empty()) out += ';';
    out += name;
    out += '=';
    out += io::dtos(value);
  }
  return out;
}

void check_bsl1(GradCheckReport& rep, synth::Xoshiro256pp& rng) {
  const double beta_v = rng.uniform(0.5, 2.0);
  const math::ThresholdParam beta(beta_v);
  const double s = rng.uniform(-2.0, 2.0);
  double eps = rng.uniform(0.01, 4.0);
  while (std::fabs(eps - beta.switch_point()) < kKinkExclusion) {
    eps = rng.uniform(0.01, 4.0);
  }
  const loss::LossParams params(beta, 2.0, math::LogVariance(s));
  const auto ev = loss::bayesian_smooth_l1(loss::ErrorNorm(eps), params);
  const std::string point = describe({{"eps", eps}, {"beta", beta_v}, {"s", s}});

  push_entry(rep, point, "d_input", ev.d_input, central_diff(
      [&](double e) {
        return loss::bayesian_smooth_l1(loss::ErrorNorm(e), params).value;
      },
      eps));
  push_entry(rep, point, "d_s", ev.d_s, central_diff(
      [&](double sv) {
        const loss::LossParams p(beta, 2.0, math::LogVariance(sv));
        return loss::bayesian_smooth_l1(loss::ErrorNorm(eps), p).value;
      },
      s));
}

void check_bfocal(GradCheckReport& rep, synth::Xoshiro256pp& rng) {
  constexpr double kGammas[] = {0.0, 1.0, 2.0, 5.0};
  const double gamma = kGammas[rng.next() % 4];
  const double s = rng.uniform(-2.0, 2.0);
  const double pt = rng.uniform(0.02, 0.98);
  const loss::LossParams params(math::ThresholdParam(1.0), gamma,
                                math::LogVariance(s));
  const auto ev = loss::bayesian_focal(loss::ClassProb(pt), params);
  const std::string point = describe({{"p_t", pt}, {"gamma", gamma}, {"s", s}});

  push_entry(rep, point, "d_input", ev.d_input, central_diff(
      [&](double p) {
        return loss::bayesian_focal(loss::ClassProb(p), params).value;
      },
      pt));
  push_entry(rep, point, "d_s", ev.d_s, central_diff(
      [&](double sv) {
        const loss::LossParams p(math::ThresholdParam(1.0), gamma,
                                 math::LogVariance(sv));
        return loss::bayesian_focal(loss::ClassProb(pt), p).value;
      },
      s));
}

void check_bl2(GradCheckReport& rep, synth::Xoshiro256pp& rng) {
  const double s = rng.uniform(-2.0, 2.0);
  const double eps = rng.uniform(0.01, 4.0);
  const auto ev =
      loss::bayesian_l2(loss::ErrorNorm(eps), math::LogVariance(s));
  const std::string point = describe({{"eps", eps}, {"s", s}});

  push_entry(rep, point, "d_input", ev.d_input, central_diff(
      [&](double e) {
        return loss::bayesian_l2(loss::ErrorNorm(e), math::LogVariance(s))
            .value;
      },
      eps));
  push_entry(rep, point, "d_s", ev.d_s, central_diff(
      [&](double sv) {
        return loss::bayesian_l2(loss::ErrorNorm(eps), math::LogVariance(sv))
            .value;
      },
      s));
}

void check_boltzmann(GradCheckReport& rep, synth::Xoshiro256pp& rng) {
  const std::size_t k_classes = 2 + rng.next() % 5;
  std::vector<double> logits(k_classes);
  for (auto& v : logits) {
    v = rng.uniform(-3.0, 3.0);
  }
  const std::size_t c = rng.next() % k_classes;
  const double s = rng.uniform(-2.0, 2.0);
  const auto ev =
      loss::boltzmann_softmax_nll(logits, c, math::LogVariance(s));
  const std::string point =
      describe({{"k", static_cast<double>(k_classes)},
                {"c", static_cast<double>(c)},
                {"logit_c", logits[c]},
                {"s", s}});

  push_entry(rep, point, "d_input", ev.d_input, central_diff(
      [&](double fc) {
        std::vector<double> shifted = logits;
        shifted[c] = fc;
        return loss::boltzmann_softmax_nll(shifted, c, math::LogVariance(s))
            .value;
      },
      logits[c]));
  push_entry(rep, point, "d_s", ev.d_s, central_diff(
      [&](double sv) {
        return loss::boltzmann_softmax_nll(logits, c, math::LogVariance(sv))
            .value;
      },
      s));
}

}  // namespace

const char* loss_id_name(LossId id) {
  switch (id) {
    case LossId::kBayesianSmoothL1:
      return "bsmooth_l1";
    case LossId::kBayesianFocal:
      return "bfocal";
    case LossId::kBayesianL2:
      return "bl2";
    case LossId::kBoltzmannSoftmaxNll:
      return "boltzmann";
  }
  return "unknown";
}

std::optional<LossId> parse_loss_id(const std::string& name) {
  for (const LossId id : kAllLossIds) {
    if (name == loss_id_name(id)) return id;
  }
  return std::nullopt;
}

GradCheckReport gradient_check(LossId loss, std::size_t points,
                               std::uint64_t seed) {
  GradCheckReport rep;
  rep.loss = loss;
  synth::Xoshiro256pp rng(seed ^ (static_cast<std::uint64_t>(loss) << 32));
  for (std::size_t i = 0; i < points; ++i) {
    switch (loss) {
      case LossId::kBayesianSmoothL1:
        check_bsl1(rep, rng);
        break;
      case LossId::kBayesianFocal:
        check_bfocal(rep, rng);
        break;
      case LossId::kBayesianL2:
        check_bl2(rep, rng);
        break;
      case LossId::kBoltzmannSoftmaxNll:
        check_boltzmann(rep, rng);
        break;
    }
  }
  return rep;
}

std::vector<GradCheckReport> gradient_check_all(std::size_t points,
                                                std::uint64_t seed) {
  std::vector<GradCheckReport> out;
  out.reserve(std::size(kAllLossIds));
  for (const LossId id : kAllLossIds) {
    out.push_back(gradient_check(id, points, seed));
  }
  return out;
}

}  // namespace halloss::train
