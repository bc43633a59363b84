#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "qcd/analytic_roc.hpp"
#include "qcd/cusum.hpp"

namespace qcd {

struct McOptions {
  /// Restart g at tau (post-change statistics only).
  bool reset_at_change = false;
  /// Estimate Pd among trials that reached tau without a false alarm.
  /// When false, Pd is detections over all trials.
  bool condition_on_no_false_alarm = true;
  /// Worker threads; 0 picks std::thread::hardware_concurrency().
  unsigned threads = 1;
};

struct TrialOutcome {
  DetectionOutcome outcome;
  std::size_t trial_index = 0;
  std::uint64_t seed_used = 0;
};

/// Trial i draws its frame from derive_seed(base_seed, i) and runs the
/// detector from sample 1. Crossings in [tau, L] are detections; no crossing
/// or a first crossing after L is a miss.
std::vector<TrialOutcome> run_trials(const RocQuery& query, double lambda, std::size_t trials,
                                     std::uint64_t base_seed, McOptions options = {});

/// H0-only frames (no change point inside the window) for the empirical
/// mean time to false alarm. Every crossing is a false alarm.
std::vector<TrialOutcome> run_null_trials(const RocQuery& query, double lambda,
                                          std::size_t trials, std::uint64_t base_seed,
                                          McOptions options = {});

struct EmpiricalRoc {
  RocQuery query;
  std::size_t trials = 0;
  std::vector<RocPoint> points;
  std::vector<double> pf_std_errors;
  std::vector<double> pd_std_errors;
  std::vector<std::size_t> false_alarms;
  std::vector<std::size_t> detections;
};

/// One frame and one CUSUM trace per trial, shared by every threshold
/// (common random numbers). Result is independent of options.threads.
EmpiricalRoc empirical_roc(const RocQuery& query, std::span<const double> thresholds,
                           std::size_t trials, std::uint64_t base_seed, McOptions options = {});

struct DelayStats {
  std::optional<double> mean_delay;                 ///< over detections
  std::optional<double> mean_time_to_false_alarm;   ///< over crossed H0-only trials
  std::size_t censored = 0;                         ///< H0-only trials that never crossed
  double miss_rate = 0.0;
};

DelayStats delay_stats(std::span<const TrialOutcome> outcomes, const RocQuery& query,
                       std::span<const TrialOutcome> null_outcomes = {});

struct ComparisonRow {
  double threshold = 0.0;
  double pf_analytic = 0.0;
  double pf_empirical = 0.0;
  double pd_analytic = 0.0;
  double pd_empirical = 0.0;
  double pf_gap = 0.0;
  double pd_gap = 0.0;
};

struct ComparisonReport {
  std::vector<ComparisonRow> rows;
  double max_pf_gap = 0.0;
  double max_pd_gap = 0.0;
  double tolerance = 0.05;

  double max_gap() const { return max_pf_gap > max_pd_gap ? max_pf_gap : max_pd_gap; }
  bool passed() const { return max_gap() <= tolerance; }
};

/// Per-threshold absolute gaps. Throws std::invalid_argument when the two
/// curves were evaluated on different thresholds.
ComparisonReport compare(const RocCurve& analytic, const EmpiricalRoc& empirical,
                         double tolerance = 0.05);

/// CSV: threshold,p_false,p_detect,source,pf_std_error,pd_std_error,false_alarms,detections,trials
void write_empirical_csv(std::ostream& out, const EmpiricalRoc& roc);

/// CSV rows per threshold followed by a `max` row.
void write_comparison_csv(std::ostream& out, const ComparisonReport& report);

}  // namespace qcd
