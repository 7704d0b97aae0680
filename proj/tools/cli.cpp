#include "cli.hpp"

#include <CLI11.hpp>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <thread>

#include "halloss/config_file.hpp"
#include "halloss/format.hpp"
#include "halloss/gradient_check.hpp"
#include "halloss/likelihood.hpp"
#include "halloss/losses.hpp"
#include "halloss/scalar_math.hpp"
#include "halloss/svg.hpp"
#include "halloss/synth_data.hpp"
#include "halloss/trainer.hpp"

namespace halloss::cli {

namespace {

namespace fs = std::filesystem;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsageError = 2;

std::ofstream open_out(const fs::path& dir, const std::string& name) {
  fs::create_directories(dir);
  std::ofstream out(dir / name, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open " + (dir / name).string());
  }
  return out;
}

// Applies a flat key=value config file to a subcommand's options. Keys are
// the long option names without the leading dashes; values given on the
// command line win over the file.
void apply_config(CLI::App* cmd, const std::string& path) {
  const auto cfg = io::ConfigFile::parse_file(path);
  for (const auto& [key, value] : cfg.entries()) {
    CLI::Option* opt = cmd->get_option_no_throw("--" + key);
    if (opt == nullptr) {
      throw std::invalid_argument("config: unknown key '" + key + "'");
    }
    if (opt->count() > 0) continue;  // flag overrides file
    if (opt->get_expected_min() == 0) {
      // Flag-style option: accept truthy values only.
      if (value == "true" || value == "1" || value == "yes") {
        opt->add_result("true");
        opt->run_callback();
      }
      continue;
    }
    opt->add_result(value);
    opt->run_callback();
  }
}

void add_config_flag(CLI::App* cmd, std::string& path) {
  cmd->add_option("--config", path,
                  "Flat key=value config file; flags override it");
}

std::size_t thread_budget(std::size_t jobs) {
  std::size_t cap = 0;  // 0 = auto
  if (const char* env = std::getenv("HAL_LOSS_THREADS")) {
    cap = static_cast<std::size_t>(std::strtoull(env, nullptr, 10));
  }
  std::size_t hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (cap == 0) cap = hw;
  return std::max<std::size_t>(1, std::min(cap, jobs));
}

// Runs fn(i) for i in [0, jobs) on up to thread_budget(jobs) workers.
// Output slots are per-index, so the aggregation is schedule-independent.
void parallel_for(std::size_t jobs, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = thread_budget(jobs);
  if (workers == 1) {
    for (std::size_t i = 0; i < jobs; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < jobs;
           i = next.fetch_add(1)) {
        fn(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

// ---------------------------------------------------------------- curves

struct CurvesOptions {
  std::string loss = "bsmooth_l1";
  std::vector<double> sigmas;
  double beta = 1.0;
  double gamma = 2.0;
  double eps_max = 4.0;
  double pt_min = 0.01;
  double pt_max = 0.99;
  double step = 0.01;
  std::string out_dir = ".";
  bool svg = false;
};

int cmd_curves(const CurvesOptions& opt) {
  std::vector<double> sigmas = opt.sigmas;
  if (sigmas.empty()) {
    sigmas = opt.loss == "bfocal" ? std::vector<double>{0.7, 1.0, 2.0}
                                  : std::vector<double>{0.5, 2.0};
  }
  const math::ThresholdParam beta(opt.beta);

  std::vector<std::string> header;
  std::vector<io::PlotSeries> series;
  std::vector<std::vector<double>> columns;
  std::vector<double> xs;

  if (opt.loss == "bsmooth_l1") {
    const auto n = static_cast<long long>(std::llround(opt.eps_max / opt.step));
    header = {"eps", "smooth_l1"};
    for (const double sg : sigmas) {
      header.push_back("bsmooth_l1[sigma=" + io::dtos(sg) + "]");
    }
    columns.assign(header.size() - 1, {});
    for (long long i = 0; i <= n; ++i) {
      const double eps = static_cast<double>(i) * opt.step;
      xs.push_back(eps);
      columns[0].push_back(smooth_l1(loss::ErrorNorm(eps), beta));
      for (std::size_t si = 0; si < sigmas.size(); ++si) {
        const loss::LossParams params(
            beta, opt.gamma, math::LogVariance(2.0 * std::log(sigmas[si])));
        columns[si + 1].push_back(
            loss::bayesian_smooth_l1(loss::ErrorNorm(eps), params).value);
      }
    }
  } else if (opt.loss == "bfocal") {
    header = {"p_t", "focal"};
    for (const double sg : sigmas) {
      header.push_back("bfocal[sigma=" + io::dtos(sg) + "]");
    }
    columns.assign(header.size() - 1, {});
    const auto lo = static_cast<long long>(std::llround(opt.pt_min / opt.step));
    const auto hi = static_cast<long long>(std::llround(opt.pt_max / opt.step));
    for (long long i = lo; i <= hi; ++i) {
      const double pt = static_cast<double>(i) * opt.step;
      if (pt <= 0.0 || pt >= 1.0) continue;
      xs.push_back(pt);
      columns[0].push_back(focal(loss::ClassProb(pt), opt.gamma));
      for (std::size_t si = 0; si < sigmas.size(); ++si) {
        const loss::LossParams params(
            beta, opt.gamma, math::LogVariance(2.0 * std::log(sigmas[si])));
        columns[si + 1].push_back(
            loss::bayesian_focal(loss::ClassProb(pt), params).value);
      }
    }
  } else {
    std::cerr << "curves: unknown --loss '" << opt.loss
              << "' (expected bsmooth_l1 or bfocal)\n";
    return kUsageError;
  }

  auto csv = open_out(opt.out_dir, "curves_" + opt.loss + ".csv");
  io::CsvWriter writer(csv);
  writer.header(header);
  std::vector<double> row(header.size());
  for (std::size_t r = 0; r < xs.size(); ++r) {
    row[0] = xs[r];
    for (std::size_t c = 0; c < columns.size(); ++c) {
      row[c + 1] = columns[c][r];
    }
    writer.row(row);
  }

  if (opt.svg) {
    series.reserve(columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
      series.push_back({header[c + 1], xs, columns[c]});
    }
    auto svg = open_out(opt.out_dir, "curves_" + opt.loss + ".svg");
    io::write_line_plot_svg(svg, opt.loss + " loss curves",
                            header[0], "loss", series);
  }
  std::cout << "curves: wrote " << xs.size() << " rows to "
            << (fs::path(opt.out_dir) / ("curves_" + opt.loss + ".csv")).string()
            << '\n';
  return kOk;
}

// ---------------------------------------------------------------- verify

struct VerifyOptions {
  std::vector<double> sigma_grid{0.25, 0.5, 1.0, 2.0, 4.0};
  std::vector<double> beta_grid{0.5, 1.0, 2.0};
  double mass_tol = 1e-6;
  double alpha_tol = 1e-8;
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  std::string out_dir = ".";
};

int cmd_verify(const VerifyOptions& opt) {
  density::QuadConfig quad;
  quad.abs_tol = opt.abs_tol;
  quad.rel_tol = opt.rel_tol;

  auto csv = open_out(opt.out_dir, "verify.csv");
  io::CsvWriter writer(csv);
  const std::vector<std::string> header = {
      "sigma",         "beta",          "tau",
      "alpha_closed",  "alpha_solved",  "alpha_rel_diff",
      "mass_closed",   "mass_quad",     "mass_residual",
      "quad_error",    "quad_converged"};
  writer.header(header);

  bool ok = true;
  for (const double sg : opt.sigma_grid) {
    for (const double b : opt.beta_grid) {
      const math::ThresholdParam beta(b);
      const double t = math::tau(beta, sg);
      const double alpha_closed = math::laplace_rate_alpha(beta, sg);
      const double alpha_solved = density::solve_alpha(sg, beta, quad);
      const double alpha_rel =
          std::fabs(alpha_solved - alpha_closed) / alpha_closed;

      const density::PiecewiseDensitySpec spec(sg, beta, alpha_closed);
      const auto mass = density::total_mass(spec, quad);
      const double residual = std::max(std::fabs(mass.mass - 1.0),
                                       std::fabs(mass.mass_quadrature - 1.0));
      ok = ok && residual < opt.mass_tol && alpha_rel < opt.alpha_tol &&
           mass.quad_converged;

      writer.row(std::vector<double>{
          sg, b, t, alpha_closed, alpha_solved, alpha_rel, mass.mass,
          mass.mass_quadrature, residual, mass.quad_error,
          mass.quad_converged ? 1.0 : 0.0});
    }
  }
  std::cout << "verify: " << opt.sigma_grid.size() * opt.beta_grid.size()
            << " grid points, "
            << (ok ? "all mass residuals and rate agreements in tolerance"
                   : "TOLERANCE EXCEEDED (see verify.csv)")
            << '\n';
  return ok ? kOk : kCheckFailed;
}

// -------------------------------------------------------------- gradcheck

struct GradcheckOptions {
  std::string loss = "all";
  std::size_t points = 100;
  std::uint64_t seed = 42;
  double tol = 1e-6;
  std::string out_dir = ".";
};

int cmd_gradcheck(const GradcheckOptions& opt) {
  std::vector<train::GradCheckReport> reports;
  if (opt.loss == "all") {
    reports = train::gradient_check_all(opt.points, opt.seed);
  } else {
    const auto id = train::parse_loss_id(opt.loss);
    if (!id) {
      std::cerr << "gradcheck: unknown --loss '" << opt.loss << "'\n";
      return kUsageError;
    }
    reports.push_back(train::gradient_check(*id, opt.points, opt.seed));
  }

  auto csv = open_out(opt.out_dir, "gradcheck.csv");
  io::CsvWriter writer(csv);
  writer.header(std::vector<std::string>{"loss", "partial", "point",
                                         "analytic", "numeric", "rel_error"});
  bool ok = true;
  for (const auto& rep : reports) {
    for (const auto& e : rep.entries) {
      writer.raw_row(std::vector<std::string>{
          train::loss_id_name(rep.loss), e.partial, e.point,
          io::dtos(e.analytic), io::dtos(e.numeric), io::dtos(e.rel_error)});
    }
    std::cout << "gradcheck: " << train::loss_id_name(rep.loss)
              << " max_rel_error=" << io::dtos(rep.max_rel_error)
              << (rep.max_rel_error < opt.tol ? " ok" : " FAIL") << '\n';
    ok = ok && rep.max_rel_error < opt.tol;
  }
  return ok ? kOk : kCheckFailed;
}

// ------------------------------------------------------------------ train

struct TrainOptions {
  train::TrainConfig config;
  std::string task = "both";
  std::size_t n = 10000;
  std::size_t n_cls = 0;  // 0: same as n
  double sigma_true = 0.3;
  double flip_rate = 0.1;
  std::vector<double> true_weights{1.5, -2.0, 0.7, 0.3, 0.25};
  std::string out_dir = ".";
};

struct TrainArtifacts {
  train::TrainReport report;
  synth::SyntheticDataset reg_data;
  synth::SyntheticDataset cls_data;
};

TrainArtifacts run_training(const TrainOptions& opt) {
  TrainArtifacts art;
  const std::size_t n_cls = opt.n_cls == 0 ? opt.n : opt.n_cls;
  train::TrainConfig cfg = opt.config;

  if (opt.task == "reg") {
    cfg.class_weight = 0.0;
  }
  art.reg_data = synth::generate_regression(
      opt.task == "cls" ? std::max<std::size_t>(opt.n / 16, 16) : opt.n,
      opt.true_weights, opt.sigma_true, cfg.seed);
  if (opt.task != "reg") {
    art.cls_data = synth::generate_classification(n_cls, opt.true_weights,
                                                  opt.flip_rate, cfg.seed);
  }
  art.report = train::train(cfg, art.reg_data, art.cls_data);
  return art;
}

int cmd_train(const TrainOptions& opt) {
  if (opt.task != "reg" && opt.task != "cls" && opt.task != "both") {
    std::cerr << "train: --task must be reg, cls or both\n";
    return kUsageError;
  }
  TrainArtifacts art = run_training(opt);

  {
    auto rep = open_out(opt.out_dir, "train_report.txt");
    train::write_report(rep, opt.config, art.report);
  }
  {
    auto traj = open_out(opt.out_dir, "trajectory.csv");
    train::write_trajectory_csv(traj, art.report);
  }

  std::cout << "train: " << (art.report.diverged ? "DIVERGED after " : "ran ")
            << art.report.iterations_run << " iterations in "
            << io::dtos(art.report.wall_time_seconds) << " s\n"
            << "  sigma1_hat=" << io::dtos(art.report.sigma1_hat)
            << " sigma2_hat=" << io::dtos(art.report.sigma2_hat) << '\n'
            << "  residual_rms="
            << io::dtos(train::residual_rms(art.report.final_model,
                                            art.reg_data))
            << '\n';
  return art.report.diverged ? kCheckFailed : kOk;
}

// ------------------------------------------------------------------ sweep

struct SweepOptions {
  TrainOptions base;
  std::string mode = "flip";
  std::vector<double> flip_grid{0.0, 0.1, 0.3};
  std::vector<double> sigma_grid{0.1, 0.3, 0.5};
  std::size_t seeds = 5;

  SweepOptions() {
    // The learned sigma2 has a clean maximum-likelihood reading in the
    // gamma = 0 regime (stationarity gives sigma2^2 = 2 * mean
    // cross-entropy, strictly increasing in the flip rate). With gamma > 0
    // the focusing prefactor couples sigma2 to the classifier margins and
    // the noise ordering is no longer identifiable at toy scale.
    base.config.gamma = 0.0;
    base.n = 4000;
    base.config.iterations = 3000;
    base.config.record_every = 100;
  }
};

struct SweepRow {
  double param;
  std::uint64_t seed;
  train::TrainReport bayes;
  double acc_bayes = 0.0;
  double acc_focal = 0.0;
};

int cmd_sweep(const SweepOptions& opt) {
  const bool flip_mode = opt.mode == "flip";
  if (!flip_mode && opt.mode != "sigma") {
    std::cerr << "sweep: --mode must be flip or sigma\n";
    return kUsageError;
  }
  const auto& grid = flip_mode ? opt.flip_grid : opt.sigma_grid;
  const std::size_t jobs = grid.size() * opt.seeds;
  std::vector<SweepRow> rows(jobs);

  parallel_for(jobs, [&](std::size_t ix) {
    const double param = grid[ix / opt.seeds];
    const std::uint64_t seed = opt.base.config.seed + 1 + ix % opt.seeds;
    TrainOptions run = opt.base;
    run.config.seed = seed;
    if (flip_mode) {
      run.task = "cls";
      run.flip_rate = param;
    } else {
      run.task = "reg";
      run.sigma_true = param;
    }
    TrainArtifacts bayes = run_training(run);

    SweepRow row;
    row.param = param;
    row.seed = seed;
    row.bayes = bayes.report;
    if (flip_mode) {
      row.acc_bayes = train::classification_accuracy(bayes.report.final_model,
                                                     bayes.cls_data, true);
      // Plain-focal baseline: identical run with s2 pinned at 0 (zero
      // learning rate on s), where Bayesian Focal equals plain Focal.
      TrainOptions base_run = run;
      base_run.config.s2_init = 0.0;
      base_run.config.s_lr_scale = 0.0;
      TrainArtifacts focal_art = run_training(base_run);
      row.acc_focal = train::classification_accuracy(
          focal_art.report.final_model, focal_art.cls_data, true);
    }
    rows[ix] = std::move(row);
  });

  auto csv = open_out(opt.base.out_dir, "sweep.csv");
  io::CsvWriter writer(csv);
  writer.header(std::vector<std::string>{
      flip_mode ? "flip_rate" : "sigma_true", "seed", "sigma1_hat",
      "sigma2_hat", "s1_final", "s2_final", "acc_bayes_clean",
      "acc_focal_clean", "final_total", "diverged"});
  for (const auto& row : rows) {
    writer.raw_row(std::vector<std::string>{
        io::dtos(row.param), std::to_string(row.seed),
        io::dtos(row.bayes.sigma1_hat), io::dtos(row.bayes.sigma2_hat),
        io::dtos(row.bayes.s1_final), io::dtos(row.bayes.s2_final),
        io::dtos(row.acc_bayes), io::dtos(row.acc_focal),
        io::dtos(row.bayes.loss_trajectory.empty()
                     ? 0.0
                     : row.bayes.loss_trajectory.back().total),
        row.bayes.diverged ? "1" : "0"});
  }

  // Ordering check: the learned noise scalar must grow with the injected
  // noise, seed by seed.
  bool ok = true;
  for (std::size_t sd = 0; sd < opt.seeds; ++sd) {
    for (std::size_t g = 1; g < grid.size(); ++g) {
      const auto& lo = rows[(g - 1) * opt.seeds + sd];
      const auto& hi = rows[g * opt.seeds + sd];
      const double prev = flip_mode ? lo.bayes.sigma2_hat : lo.bayes.sigma1_hat;
      const double next = flip_mode ? hi.bayes.sigma2_hat : hi.bayes.sigma1_hat;
      if (!(next > prev)) {
        ok = false;
        std::cout << "sweep: ordering violated at seed " << lo.seed << ": "
                  << (flip_mode ? "sigma2_hat(" : "sigma1_hat(")
                  << io::dtos(hi.param) << ")=" << io::dtos(next)
                  << " <= " << io::dtos(prev) << " at " << io::dtos(lo.param)
                  << '\n';
      }
    }
  }
  std::cout << "sweep: " << jobs << " runs, noise-ordering "
            << (ok ? "holds for every seed" : "VIOLATED") << '\n';
  return ok ? kOk : kCheckFailed;
}

// ------------------------------------------------------------------ wiring

void add_train_flags(CLI::App* cmd, TrainOptions& opt) {
  cmd->add_option("--lr", opt.config.learning_rate, "Learning rate for W");
  cmd->add_option("--s-lr-scale", opt.config.s_lr_scale,
                  "Multiplier on the learning rate for s1/s2");
  cmd->add_option("--iterations", opt.config.iterations, "Training iterations");
  cmd->add_option("--s1-init", opt.config.s1_init, "Initial s1 = log sigma1^2");
  cmd->add_option("--s2-init", opt.config.s2_init, "Initial s2 = log sigma2^2");
  cmd->add_option("--beta", opt.config.beta, "Smooth L1 threshold parameter");
  cmd->add_option("--gamma", opt.config.gamma, "Focal focusing parameter");
  cmd->add_option("--class-weight", opt.config.class_weight,
                  "Balancing coefficient on the classification term");
  cmd->add_option("--seed", opt.config.seed, "Base RNG seed");
  cmd->add_option("--init-scale", opt.config.init_scale,
                  "Uniform weight-init magnitude (0 = zeros)");
  cmd->add_option("--record-every", opt.config.record_every,
                  "Trajectory recording stride");
  cmd->add_flag_callback(
      "--adam", [&opt] { opt.config.optimizer = train::Optimizer::kAdam; },
      "Use Adam-style adaptive moments instead of plain gradient descent");
  cmd->add_option("--reduction", [&opt](const std::vector<std::string>& vals) {
        if (vals.empty()) return false;
        if (vals[0] == "mean") {
          opt.config.reduction = loss::Reduction::kMean;
        } else if (vals[0] == "sum") {
          opt.config.reduction = loss::Reduction::kSum;
        } else {
          return false;
        }
        return true;
      },
      "Batch reduction: mean (default) or sum");
  cmd->add_option("--n", opt.n, "Samples per generated dataset");
  cmd->add_option("--n-cls", opt.n_cls,
                  "Classification samples (default: same as --n)");
  cmd->add_option("--sigma-true", opt.sigma_true,
                  "Injected Gaussian noise scale (regression)");
  cmd->add_option("--flip-rate", opt.flip_rate,
                  "Injected label-flip probability (classification)");
  cmd->add_option("--true-weights", opt.true_weights,
                  "Generator weights then bias (comma-separated)")
      ->delimiter(',');
  cmd->add_option("--out", opt.out_dir, "Output directory");
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"Numerical laboratory for uncertainty-aware detection losses"};
  app.require_subcommand(1);

  std::string cfg_path;
  CurvesOptions curves_opt;
  auto* curves = app.add_subcommand(
      "curves", "Tabulate loss curves to CSV (optionally SVG)");
  add_config_flag(curves, cfg_path);
  curves->add_option("--loss", curves_opt.loss,
                     "Loss family: bsmooth_l1 or bfocal");
  curves->add_option("--sigma", curves_opt.sigmas,
                     "Sigma values, comma-separated")
      ->delimiter(',');
  curves->add_option("--beta", curves_opt.beta, "Threshold parameter");
  curves->add_option("--gamma", curves_opt.gamma, "Focusing parameter");
  curves->add_option("--eps-max", curves_opt.eps_max, "Max eps (bsmooth_l1)");
  curves->add_option("--pt-min", curves_opt.pt_min, "Min p_t (bfocal)");
  curves->add_option("--pt-max", curves_opt.pt_max, "Max p_t (bfocal)");
  curves->add_option("--step", curves_opt.step, "Grid step");
  curves->add_option("--out", curves_opt.out_dir, "Output directory");
  curves->add_flag("--svg", curves_opt.svg, "Also render an SVG plot");

  VerifyOptions verify_opt;
  auto* verify = app.add_subcommand(
      "verify", "Check the density normalization and the rate closed form");
  add_config_flag(verify, cfg_path);
  verify->add_option("--sigma-grid", verify_opt.sigma_grid, "Sigma grid")
      ->delimiter(',');
  verify->add_option("--beta-grid", verify_opt.beta_grid, "Beta grid")
      ->delimiter(',');
  verify->add_option("--mass-tol", verify_opt.mass_tol,
                     "Mass residual tolerance");
  verify->add_option("--alpha-tol", verify_opt.alpha_tol,
                     "Relative rate-agreement tolerance");
  verify->add_option("--abs-tol", verify_opt.abs_tol, "Quadrature abs tol");
  verify->add_option("--rel-tol", verify_opt.rel_tol, "Quadrature rel tol");
  verify->add_option("--out", verify_opt.out_dir, "Output directory");

  GradcheckOptions grad_opt;
  auto* gradcheck = app.add_subcommand(
      "gradcheck", "Finite-difference check of the analytic gradients");
  add_config_flag(gradcheck, cfg_path);
  gradcheck->add_option("--loss", grad_opt.loss,
                        "bsmooth_l1, bfocal, bl2, boltzmann or all");
  gradcheck->add_option("--points", grad_opt.points, "Random points per loss");
  gradcheck->add_option("--seed", grad_opt.seed, "RNG seed");
  gradcheck->add_option("--tol", grad_opt.tol, "Max relative error allowed");
  gradcheck->add_option("--out", grad_opt.out_dir, "Output directory");

  TrainOptions train_opt;
  auto* train_cmd = app.add_subcommand(
      "train", "Train the toy multi-task model on synthetic data");
  add_config_flag(train_cmd, cfg_path);
  train_cmd->add_option("--task", train_opt.task, "reg, cls or both");
  add_train_flags(train_cmd, train_opt);

  SweepOptions sweep_opt;
  auto* sweep = app.add_subcommand(
      "sweep", "Train across a noise grid and check the sigma ordering");
  add_config_flag(sweep, cfg_path);
  sweep->add_option("--mode", sweep_opt.mode, "flip or sigma");
  sweep->add_option("--flip-grid", sweep_opt.flip_grid, "Label-flip grid")
      ->delimiter(',');
  sweep->add_option("--sigma-grid", sweep_opt.sigma_grid,
                    "Injected-noise grid")
      ->delimiter(',');
  sweep->add_option("--seeds", sweep_opt.seeds, "Seeds per grid point");
  add_train_flags(sweep, sweep_opt.base);

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("halloss");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (!cfg_path.empty()) {
      for (CLI::App* sub : {curves, verify, gradcheck, train_cmd, sweep}) {
        if (sub->parsed()) apply_config(sub, cfg_path);
      }
    }
    if (curves->parsed()) return cmd_curves(curves_opt);
    if (verify->parsed()) return cmd_verify(verify_opt);
    if (gradcheck->parsed()) return cmd_gradcheck(grad_opt);
    if (train_cmd->parsed()) return cmd_train(train_opt);
    if (sweep->parsed()) return cmd_sweep(sweep_opt);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kCheckFailed;
  }
  return kUsageError;
}

}  // namespace halloss::cli
