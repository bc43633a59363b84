#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qcd/analytic_roc.hpp"
#include "qcd/manifest.hpp"
#include "qcd/monte_carlo.hpp"
#include "qcd/signal_model.hpp"

namespace qcd::cli {

/// Everything a subcommand needs. dB values are converted to linear power
/// here and nowhere else.
struct ExperimentConfig {
  double snr_db = 0.0;
  double noise_variance = 1.0;
  std::size_t window_len = 200;
  std::optional<std::size_t> change_point = 100;
  std::optional<std::size_t> horizon;  ///< defaults to window_len
  SensingCase sensing_case = SensingCase::Entrance;
  std::vector<double> thresholds;      ///< empty = command default
  std::string threshold_spec;          ///< as given on the command line
  std::size_t trials = 10000;
  std::optional<std::uint64_t> seed;
  std::filesystem::path out_dir;
  bool paper_figures = false;
  bool validate = false;
  bool reset_at_change = false;
  bool strict_paper_pf = false;
  bool condition_on_no_false_alarm = true;
  double tolerance = 0.05;
  unsigned threads = 0;

  SignalModel model() const;
  /// Requires a change point. Throws std::invalid_argument otherwise.
  RocQuery query() const;
  McOptions mc_options() const;
  AnalyticOptions analytic_options() const;
  std::size_t effective_horizon() const;

  /// Enforces every module invariant up front.
  void validate_config() const;

  /// Records every parameter needed to reproduce a run. Thread count is
  /// excluded because outputs do not depend on it.
  Manifest manifest(std::string_view command) const;
};

/// P = sigma^2 * 10^(snr_db / 10).
double snr_db_to_power(double snr_db, double noise_variance);

/// "8" or "1,2,4".
std::vector<double> parse_lambda_list(std::string_view text);
/// "MIN:MAX:COUNT", log-spaced.
std::vector<double> parse_lambda_range(std::string_view text);
/// A positive integer, or "none".
std::optional<std::size_t> parse_change_point(std::string_view text);

/// Returns the configured seed, or draws one and prints it to `log`.
std::uint64_t resolve_seed(ExperimentConfig& config, std::ostream& log);

}  // namespace qcd::cli
