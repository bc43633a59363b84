#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qcd/signal_model.hpp"

namespace qcd {

/// Finite-window scenario for ROC evaluation.
struct RocQuery {
  SignalModel model;
  std::size_t window_len = 0;    ///< N
  std::size_t change_point = 0;  ///< tau, 1-based
  std::size_t eval_horizon = 0;  ///< L, last sample counted as a detection
  SensingCase sensing_case = SensingCase::Entrance;

  /// Throws std::invalid_argument unless 1 <= tau <= L <= N.
  void validate() const;
};

enum class RocSource { Analytic, MonteCarlo };

std::string_view to_string(RocSource source);

struct RocPoint {
  double threshold = 0.0;
  double p_false = 0.0;
  double p_detect = 0.0;
  RocSource source = RocSource::Analytic;
};

struct RocCurve {
  RocQuery query;
  std::vector<RocPoint> points;  ///< strictly increasing threshold
};

struct AnalyticOptions {
  /// Sum the per-sample false-alarm terms over samples 2..tau exactly as the
  /// closed form is published, instead of the default 1..tau-1.
  bool strict_paper_pf = false;
};

/// (lambda - k c2) / c1: the chi-square threshold equivalent to a k-term LLR
/// partial sum staying at or below lambda.
double zeta(double lambda, std::size_t k, const LlrParams& params);

/// Pr{ sum_{j=first}^{last} l(y[j]) <= lambda } for i.i.d. samples of the
/// given variance. For Entrance this is P(k/2, zeta/(2v)) with k = last-first+1.
/// For Exit the LLR is negated, so the partial sum event becomes a chi-square
/// upper tail (mirrored derivation, checked only against simulation).
double cdf_partial_sum(double lambda, std::size_t first, std::size_t last, double variance,
                       const LlrParams& params, SensingCase sensing_case = SensingCase::Entrance);

/// Approximate CDF of Z_m: sum over the possible last-reset positions
/// r = start..m of cdf_partial_sum(lambda, r, m). Not a probability: it is
/// the sum of non-exclusive events and may exceed 1.
double f_z(double lambda, std::size_t m, std::size_t start, double variance,
           const LlrParams& params, SensingCase sensing_case = SensingCase::Entrance);

/// False-alarm probability at `sample` (= l+1, 1-based), with the leading
/// factor floored at 0 and each product factor capped at 1.
double p_false_at(double lambda, std::size_t sample, const LlrParams& params, double variance,
                  SensingCase sensing_case = SensingCase::Entrance);

/// Sum of per-sample false-alarm terms over the pre-change window, clamped.
double p_false_total(double lambda, const RocQuery& query, AnalyticOptions options = {});

/// Detection probability at `sample` in [tau, N], conditioned on the
/// post-change statistics only.
double p_detect_at(double lambda, std::size_t sample, const RocQuery& query);

/// Sum of per-sample detection terms over samples tau..L, clamped.
double p_detect_total(double lambda, const RocQuery& query);

RocCurve roc_sweep(const RocQuery& query, std::span<const double> thresholds,
                   AnalyticOptions options = {});

/// `count` values log-spaced over [lo, hi], both endpoints included.
std::vector<double> log_spaced(double lo, double hi, std::size_t count);

/// 64 thresholds log-spaced over [0.1, 50].
std::vector<double> default_thresholds();

/// Throws std::invalid_argument unless every value is positive, finite and
/// strictly larger than its predecessor.
void validate_thresholds(std::span<const double> thresholds);

enum class Metric { FalseAlarm, Detection };

std::string_view to_string(Metric metric);
Metric parse_metric(std::string_view text);

struct SolverOptions {
  double tol = 1e-6;
  double lambda_min = 1e-6;
  double lambda_max = 1e3;
  std::size_t scan_points = 400;
};

struct ThresholdSolution {
  double threshold = 0.0;
  double achieved = 0.0;
  /// The pre-scan saw the metric increase with lambda somewhere.
  bool non_monotone_warning = false;
};

class ThresholdSolveError : public std::runtime_error {
 public:
  enum class Kind {
    NoBracket,   ///< target outside the achievable range on the scan grid
    NoSolution,  ///< bracketed, but the metric jumps across the target
  };

  ThresholdSolveError(Kind kind, std::string message, double achievable_min,
                      double achievable_max, double closest_threshold, double closest_value)
      : std::runtime_error(std::move(message)),
        kind(kind),
        achievable_min(achievable_min),
        achievable_max(achievable_max),
        closest_threshold(closest_threshold),
        closest_value(closest_value) {}

  Kind kind;
  double achievable_min;
  double achievable_max;
  double closest_threshold;
  double closest_value;
};

/// Finds lambda with |metric(lambda) - target| <= tol by a log-grid pre-scan
/// followed by bisection inside the first (smallest-lambda) bracket.
ThresholdSolution solve_threshold(const RocQuery& query, double target, Metric which,
                                  SolverOptions solver = {}, AnalyticOptions options = {});

/// CSV: threshold,p_false,p_detect,source
void write_roc_csv(std::ostream& out, std::span<const RocPoint> points);

}  // namespace qcd
