#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace qcd {

/// Which transition the detector watches for.
enum class SensingCase {
  Entrance,  ///< vacant -> occupied
  Exit,      ///< occupied -> vacant
};

std::string_view to_string(SensingCase c);
SensingCase parse_sensing_case(std::string_view text);

/// Zero-mean Gaussian observations: variance sigma^2 while the band is
/// vacant and sigma^2 + P while the primary user transmits. Linear units.
class SignalModel {
 public:
  SignalModel(double noise_variance, double signal_power);

  double noise_variance() const { return noise_variance_; }
  double signal_power() const { return signal_power_; }
  double occupied_variance() const { return noise_variance_ + signal_power_; }
  double snr_db() const;

  /// Variance of samples before / from the change point.
  double pre_change_variance(SensingCase c) const;
  double post_change_variance(SensingCase c) const;

 private:
  double noise_variance_;
  double signal_power_;
};

class LlrParams;
LlrParams llr_params(const SignalModel& model);

/// Constants of the log-likelihood ratio l(y) = c1 y^2 + c2. Only obtainable
/// from a SignalModel.
class LlrParams {
 public:
  double c1() const { return c1_; }
  double c2() const { return c2_; }

 private:
  LlrParams(double c1, double c2) : c1_(c1), c2_(c2) {}
  friend LlrParams llr_params(const SignalModel& model);

  double c1_;
  double c2_;
};

/// Per-sample LLR. Exit negates the Entrance value (f0 and f1 swapped).
double llr(double y, const LlrParams& params, SensingCase c);

/// One simulated sensing frame.
struct ScenarioSpec {
  SignalModel model;
  SensingCase sensing_case = SensingCase::Entrance;
  std::size_t window_len = 0;
  /// 1-based index of the first post-change sample; nullopt = no change.
  std::optional<std::size_t> change_point;
  std::uint64_t seed = 0;

  void validate() const;
};

struct SampleSequence {
  std::vector<double> samples;
  ScenarioSpec spec;
};

/// Draws y[1..N]. The same seed always produces the same standard-normal
/// stream, which is then scaled by the per-segment standard deviation.
SampleSequence generate(const ScenarioSpec& spec);

}  // namespace qcd
