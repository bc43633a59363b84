// qcd: CUSUM quickest-change-detection toolkit.
//
//   qcd simulate  --snr-db 0 --tau 100 --seed 7 --out run/
//   qcd detect    --input run/samples.csv --lambda 8
//   qcd roc       --paper-figures --trials 10000 --seed 1 --out figs/
//   qcd threshold --target 0.1 --metric pf
//
// Shared flags may also come from a key = value file given with --config;
// command-line flags win.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

using qcd::cli::ExperimentConfig;

struct RawFlags {
  std::string tau = "100";
  std::string sensing_case = "entrance";
  std::string lambda;
  std::string lambda_range;
  std::size_t horizon = 0;
  std::uint64_t seed = 0;
};

void add_shared_options(CLI::App& app, ExperimentConfig& cfg, RawFlags& raw) {
  app.add_option("--snr-db", cfg.snr_db, "SNR in dB (P / sigma^2)")->capture_default_str();
  app.add_option("--noise-var", cfg.noise_variance, "Noise variance sigma^2")
      ->capture_default_str();
  app.add_option("--window", cfg.window_len, "Sensing window length N")->capture_default_str();
  app.add_option("--tau", raw.tau, "Change point (1-based) or 'none'")->capture_default_str();
  app.add_option("--horizon", raw.horizon, "Last sample counted as a detection (L); default N");
  app.add_option("--case", raw.sensing_case, "Sensing case")
      ->check(CLI::IsMember({"entrance", "exit"}))
      ->capture_default_str();
  auto* lambda = app.add_option("--lambda", raw.lambda, "Threshold(s), comma separated");
  app.add_option("--lambda-range", raw.lambda_range, "Log-spaced thresholds MIN:MAX:COUNT")
      ->excludes(lambda);
  app.add_option("--trials", cfg.trials, "Monte Carlo trials")->capture_default_str();
  app.add_option("--seed", raw.seed, "Base seed (generated and printed when absent)");
  app.add_option("--out", cfg.out_dir, "Output directory");
  app.add_option("--threads", cfg.threads, "Monte Carlo worker threads (0 = all cores)")
      ->capture_default_str();
  app.add_option("--tolerance", cfg.tolerance, "Analytic vs Monte Carlo gap tolerance")
      ->capture_default_str();
  app.add_flag("--paper-figures", cfg.paper_figures,
               "ROC grid: SNR {-3,0,3} dB x L {tau+20, tau+40, tau+60}");
  app.add_flag("--validate", cfg.validate, "Check the solved threshold by Monte Carlo");
  app.add_flag("--reset-at-change", cfg.reset_at_change, "Restart the statistic at tau");
  app.add_flag("--strict-paper-pf", cfg.strict_paper_pf,
               "Sum false-alarm terms over samples 2..tau");
  app.add_flag("!--include-false-alarms", cfg.condition_on_no_false_alarm,
               "Estimate Pd over all trials instead of trials without a false alarm");
}

void finalize(CLI::App& app, ExperimentConfig& cfg, const RawFlags& raw) {
  cfg.change_point = qcd::cli::parse_change_point(raw.tau);
  cfg.sensing_case = qcd::parse_sensing_case(raw.sensing_case);
  if (app.count("--horizon") > 0) cfg.horizon = raw.horizon;
  if (app.count("--seed") > 0) cfg.seed = raw.seed;
  if (!raw.lambda.empty()) {
    cfg.thresholds = qcd::cli::parse_lambda_list(raw.lambda);
    cfg.threshold_spec = raw.lambda;
  } else if (!raw.lambda_range.empty()) {
    cfg.thresholds = qcd::cli::parse_lambda_range(raw.lambda_range);
    cfg.threshold_spec = raw.lambda_range;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CUSUM quickest change detection: detection, ROC analysis and simulation"};
  app.set_config("--config", "", "key = value file with default flag values");
  app.require_subcommand(1);

  ExperimentConfig cfg;
  RawFlags raw;
  add_shared_options(app, cfg, raw);

  auto* detect = app.add_subcommand("detect", "Run the CUSUM detector over a sample file");
  std::string input = "-";
  detect->add_option("--input", input, "Sample file ('-' for standard input)")
      ->capture_default_str();
  detect->fallthrough();

  auto* roc = app.add_subcommand("roc", "Analytic and Monte Carlo ROC curves");
  roc->fallthrough();

  auto* threshold = app.add_subcommand("threshold", "Solve for the threshold meeting a target");
  double target = 0.0;
  std::string metric = "pf";
  threshold->add_option("--target", target, "Target probability in (0, 1)")->required();
  threshold->add_option("--metric", metric, "pf or pd")
      ->check(CLI::IsMember({"pf", "pd"}))
      ->capture_default_str();
  threshold->fallthrough();

  auto* simulate = app.add_subcommand("simulate", "Generate one sensing frame");
  simulate->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    finalize(app, cfg, raw);
    if (detect->parsed()) {
      if (input == "-") {
        qcd::cli::cmd_detect(std::cin, cfg, std::cout, std::cerr);
      } else {
        std::ifstream in(input);
        if (!in) throw qcd::cli::InputError("cannot open " + input);
        qcd::cli::cmd_detect(in, cfg, std::cout, cfg.out_dir.empty() ? std::cerr : std::cout);
      }
    } else if (roc->parsed()) {
      qcd::cli::cmd_roc(cfg, std::cout);
    } else if (threshold->parsed()) {
      qcd::cli::cmd_threshold(cfg, target, qcd::parse_metric(metric), std::cout);
    } else if (simulate->parsed()) {
      qcd::cli::cmd_simulate(cfg, std::cout);
    }
  } catch (const qcd::ThresholdSolveError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
