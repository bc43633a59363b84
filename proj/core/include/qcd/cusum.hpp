#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qcd/signal_model.hpp"

namespace qcd {

/// State of the recursion g_l = max(g_{l-1} + l(y[l]), 0), g_0 = 0.
struct CusumState {
  double g = 0.0;          ///< clamped statistic
  double z = 0.0;          ///< pre-clamp value g_{l-1} + increment
  std::size_t index = 0;   ///< samples consumed (1-based index of the last one)
};

/// Pure transition; `state` is not modified.
CusumState step(const CusumState& state, double increment);

enum class OutcomeKind { FalseAlarm, Detection, Miss };

std::string_view to_string(OutcomeKind kind);

struct DetectionOutcome {
  std::optional<std::size_t> stop_index;  ///< first sample with g > threshold
  OutcomeKind kind = OutcomeKind::Miss;
  std::optional<std::size_t> delay;       ///< stop_index - change_point, detections only
};

/// Classifies a stopping time against the change point. Without a change
/// point every crossing is a false alarm. A crossing after `horizon` (when
/// given) counts as a miss but keeps its stop_index.
DetectionOutcome classify(std::optional<std::size_t> stop_index,
                          std::optional<std::size_t> change_point,
                          std::optional<std::size_t> horizon = std::nullopt);

/// Smallest `index` in the trace whose g strictly exceeds `threshold`.
std::optional<std::size_t> first_crossing(std::span<const CusumState> trace, double threshold);

struct RunOptions {
  /// Restart the statistic from zero at the change point, so the
  /// post-change segment is independent of the pre-change history.
  bool reset_at_change = false;
};

struct CusumRun {
  std::vector<double> increments;
  std::vector<CusumState> trace;  ///< one state per sample, never truncated
  DetectionOutcome outcome;
};

/// Runs the detector over every sample. Throws std::invalid_argument for a
/// non-positive or non-finite threshold.
CusumRun run(const SampleSequence& samples, const SignalModel& model, SensingCase sensing_case,
             double threshold, RunOptions options = {});

/// Same recursion over precomputed increments. `reset_before` (1-based) zeroes
/// g before that sample is consumed.
std::vector<CusumState> accumulate(std::span<const double> increments,
                                   std::optional<std::size_t> reset_before = std::nullopt);

/// CSV: index,sample,increment,z,g,crossed
void write_trace_csv(std::ostream& out, std::span<const double> samples, const CusumRun& run,
                     double threshold);

}  // namespace qcd
