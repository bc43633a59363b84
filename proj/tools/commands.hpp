#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "config.hpp"

namespace qcd::cli {

/// Malformed user input, reported with its line number.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads samples one per line, or one column of a CSV. A non-numeric first
/// line is taken as a header; its `sample` column is used when present,
/// otherwise the last column. Blank lines and `#` comments are skipped.
std::vector<double> read_samples(std::istream& in);

struct DetectResult {
  CusumRun run;
  std::vector<double> samples;
};

/// Trace goes to `out_dir/trace.csv` when set, else to `trace_out`.
/// The outcome summary goes to `log`.
DetectResult cmd_detect(std::istream& input, const ExperimentConfig& config,
                        std::ostream& trace_out, std::ostream& log);

struct ScenarioReport {
  std::string name;
  double snr_db;
  RocQuery query;
  ComparisonReport comparison;
};

/// Writes analytic.csv, empirical.csv, comparison.csv and manifest.txt
/// (per scenario subdirectory under --paper-figures, plus summary.csv).
std::vector<ScenarioReport> cmd_roc(ExperimentConfig config, std::ostream& log);

struct ThresholdResult {
  ThresholdSolution solution;
  std::optional<double> empirical;
  std::optional<double> empirical_std_error;
};

ThresholdResult cmd_threshold(ExperimentConfig config, double target, Metric metric,
                              std::ostream& out);

/// Writes samples.csv and manifest.txt into the output directory.
SampleSequence cmd_simulate(ExperimentConfig config, std::ostream& log);

/// Directory name for one paper-figure scenario, e.g. snr_m3db_L120.
std::string scenario_name(double snr_db, std::size_t horizon);

}  // namespace qcd::cli
