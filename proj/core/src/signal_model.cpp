#include "qcd/signal_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qcd/random.hpp"

namespace qcd {

std::string_view to_string(SensingCase c) {
  return c == SensingCase::Entrance ? "entrance" : "exit";
}

SensingCase parse_sensing_case(std::string_view text) {
  if (text == "entrance" || text == "A") return SensingCase::Entrance;
  if (text == "exit" || text == "B") return SensingCase::Exit;
  throw std::invalid_argument("unknown sensing case '" + std::string(text) +
                              "' (expected entrance or exit)");
}

SignalModel::SignalModel(double noise_variance, double signal_power)
    : noise_variance_(noise_variance), signal_power_(signal_power) {
  if (!(noise_variance > 0.0) || !std::isfinite(noise_variance)) {
    throw std::invalid_argument("noise variance must be positive and finite");
  }
  if (!(signal_power > 0.0) || !std::isfinite(signal_power)) {
    throw std::invalid_argument("signal power must be positive and finite");
  }
}

double SignalModel::snr_db() const { return 10.0 * std::log10(signal_power_ / noise_variance_); }

double SignalModel::pre_change_variance(SensingCase c) const {
  return c == SensingCase::Entrance ? noise_variance_ : occupied_variance();
}

double SignalModel::post_change_variance(SensingCase c) const {
  return c == SensingCase::Entrance ? occupied_variance() : noise_variance_;
}

LlrParams llr_params(const SignalModel& model) {
  const double s2 = model.noise_variance();
  const double p = model.signal_power();
  // log1p keeps c2 accurate when P << sigma^2.
  return LlrParams(p / (2.0 * (p + s2) * s2), -0.5 * std::log1p(p / s2));
}

double llr(double y, const LlrParams& params, SensingCase c) {
  const double value = params.c1() * y * y + params.c2();
  return c == SensingCase::Entrance ? value : -value;
}

void ScenarioSpec::validate() const {
  if (window_len == 0) throw std::invalid_argument("window length must be positive");
  if (change_point && (*change_point < 1 || *change_point > window_len)) {
    throw std::invalid_argument("change point must lie in [1, window length]");
  }
}

SampleSequence generate(const ScenarioSpec& spec) {
  spec.validate();
  const double pre_sd = std::sqrt(spec.model.pre_change_variance(spec.sensing_case));
  const double post_sd = std::sqrt(spec.model.post_change_variance(spec.sensing_case));
  const std::size_t change = spec.change_point.value_or(spec.window_len + 1);

  SampleSequence out{{}, spec};
  out.samples.reserve(spec.window_len);
  GaussianSource normal(spec.seed);
  for (std::size_t i = 1; i <= spec.window_len; ++i) {
    out.samples.push_back((i < change ? pre_sd : post_sd) * normal.next());
  }
  return out;
}

}  // namespace qcd
