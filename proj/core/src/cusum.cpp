#include "qcd/cusum.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "qcd/csv_format.hpp"

namespace qcd {

CusumState step(const CusumState& state, double increment) {
  CusumState next;
  next.z = state.g + increment;
  next.g = std::max(next.z, 0.0);
  next.index = state.index + 1;
  return next;
}

std::string_view to_string(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::FalseAlarm: return "false_alarm";
    case OutcomeKind::Detection: return "detection";
    case OutcomeKind::Miss: return "miss";
  }
  return "unknown";
}

DetectionOutcome classify(std::optional<std::size_t> stop_index,
                          std::optional<std::size_t> change_point,
                          std::optional<std::size_t> horizon) {
  DetectionOutcome out;
  out.stop_index = stop_index;
  if (!stop_index) {
    out.kind = OutcomeKind::Miss;
  } else if (!change_point || *stop_index < *change_point) {
    out.kind = OutcomeKind::FalseAlarm;
  } else if (horizon && *stop_index > *horizon) {
    out.kind = OutcomeKind::Miss;
  } else {
    out.kind = OutcomeKind::Detection;
    out.delay = *stop_index - *change_point;
  }
  return out;
}

std::optional<std::size_t> first_crossing(std::span<const CusumState> trace, double threshold) {
  auto it = std::find_if(trace.begin(), trace.end(),
                         [threshold](const CusumState& s) { return s.g > threshold; });
  if (it == trace.end()) return std::nullopt;
  return it->index;
}

std::vector<CusumState> accumulate(std::span<const double> increments,
                                   std::optional<std::size_t> reset_before) {
  std::vector<CusumState> trace;
  trace.reserve(increments.size());
  CusumState state;
  for (double inc : increments) {
    if (reset_before && state.index + 1 == *reset_before) state.g = 0.0;
    state = step(state, inc);
    trace.push_back(state);
  }
  return trace;
}

CusumRun run(const SampleSequence& samples, const SignalModel& model, SensingCase sensing_case,
             double threshold, RunOptions options) {
  if (!(threshold > 0.0) || !std::isfinite(threshold)) {
    throw std::invalid_argument("CUSUM threshold must be positive and finite");
  }
  const LlrParams params = llr_params(model);
  CusumRun result;
  result.increments.reserve(samples.samples.size());
  for (double y : samples.samples) result.increments.push_back(llr(y, params, sensing_case));

  const auto change = samples.spec.change_point;
  result.trace = accumulate(result.increments,
                            options.reset_at_change ? change : std::nullopt);
  result.outcome = classify(first_crossing(result.trace, threshold), change);
  return result;
}

void write_trace_csv(std::ostream& out, std::span<const double> samples, const CusumRun& run,
                     double threshold) {
  if (samples.size() != run.trace.size()) {
    throw std::invalid_argument("trace and sample lengths differ");
  }
  out << "index,sample,increment,z,g,crossed\n";
  for (std::size_t i = 0; i < run.trace.size(); ++i) {
    const auto& s = run.trace[i];
    out << s.index << ',' << csv::number(samples[i]) << ',' << csv::number(run.increments[i])
        << ',' << csv::number(s.z) << ',' << csv::number(s.g) << ','
        << (s.g > threshold ? 1 : 0) << '\n';
  }
}

}  // namespace qcd
