#include "config.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>

#include "qcd/csv_format.hpp"

namespace qcd::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view text) {
  text = trim(text);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw std::invalid_argument("not a finite number: '" + std::string(text) + "'");
  }
  return v;
}

std::size_t parse_count(std::string_view text) {
  text = trim(text);
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument("not a non-negative integer: '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

double snr_db_to_power(double snr_db, double noise_variance) {
  return noise_variance * std::pow(10.0, snr_db / 10.0);
}

std::vector<double> parse_lambda_list(std::string_view text) {
  std::vector<double> out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(parse_double(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  validate_thresholds(out);
  return out;
}

std::vector<double> parse_lambda_range(std::string_view text) {
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
  if (c2 == std::string_view::npos) {
    throw std::invalid_argument("lambda range must look like MIN:MAX:COUNT");
  }
  const double lo = parse_double(text.substr(0, c1));
  const double hi = parse_double(text.substr(c1 + 1, c2 - c1 - 1));
  const std::size_t count = parse_count(text.substr(c2 + 1));
  auto out = log_spaced(lo, hi, count);
  validate_thresholds(out);
  return out;
}

std::optional<std::size_t> parse_change_point(std::string_view text) {
  if (trim(text) == "none") return std::nullopt;
  const auto v = parse_count(text);
  if (v == 0) throw std::invalid_argument("change point must be >= 1 (or 'none')");
  return v;
}

SignalModel ExperimentConfig::model() const {
  return SignalModel(noise_variance, snr_db_to_power(snr_db, noise_variance));
}

std::size_t ExperimentConfig::effective_horizon() const { return horizon.value_or(window_len); }

RocQuery ExperimentConfig::query() const {
  if (!change_point) throw std::invalid_argument("this command needs --tau (a change point)");
  RocQuery q{model(), window_len, *change_point, effective_horizon(), sensing_case};
  q.validate();
  return q;
}

McOptions ExperimentConfig::mc_options() const {
  return McOptions{reset_at_change, condition_on_no_false_alarm, threads};
}

AnalyticOptions ExperimentConfig::analytic_options() const {
  return AnalyticOptions{strict_paper_pf};
}

void ExperimentConfig::validate_config() const {
  if (!std::isfinite(snr_db)) throw std::invalid_argument("--snr-db must be finite");
  (void)model();
  if (window_len == 0) throw std::invalid_argument("--window must be positive");
  if (change_point && *change_point > window_len) {
    throw std::invalid_argument("--tau must not exceed --window");
  }
  if (horizon) {
    if (!change_point) throw std::invalid_argument("--horizon needs a change point");
    if (*horizon < *change_point || *horizon > window_len) {
      throw std::invalid_argument("--horizon must lie in [tau, N]");
    }
  }
  if (trials == 0) throw std::invalid_argument("--trials must be positive");
  if (!thresholds.empty()) validate_thresholds(thresholds);
  if (!(tolerance > 0.0)) throw std::invalid_argument("--tolerance must be positive");
}

Manifest ExperimentConfig::manifest(std::string_view command) const {
  Manifest m;
  m.set("tool", std::string("qcd"));
  m.set("command", std::string(command));
  m.set("snr_db", snr_db);
  m.set("noise_variance", noise_variance);
  m.set("signal_power", snr_db_to_power(snr_db, noise_variance));
  m.set("window_len", static_cast<unsigned long long>(window_len));
  m.set("change_point",
        change_point ? std::to_string(*change_point) : std::string("none"));
  if (change_point) m.set("horizon", static_cast<unsigned long long>(effective_horizon()));
  m.set("case", std::string(to_string(sensing_case)));
  if (!threshold_spec.empty()) m.set("thresholds_spec", threshold_spec);
  std::string list;
  for (double t : thresholds) {
    if (!list.empty()) list += ',';
    list += csv::number(t);
  }
  if (!list.empty()) m.set("thresholds", list);
  m.set("trials", static_cast<unsigned long long>(trials));
  if (seed) m.set("seed", static_cast<unsigned long long>(*seed));
  m.set("reset_at_change", reset_at_change);
  m.set("condition_on_no_false_alarm", condition_on_no_false_alarm);
  m.set("strict_paper_pf", strict_paper_pf);
  m.set("tolerance", tolerance);
  return m;
}

std::uint64_t resolve_seed(ExperimentConfig& config, std::ostream& log) {
  if (!config.seed) {
    std::random_device rd;
    config.seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    log << "seed = " << *config.seed << " (generated; pass --seed to reproduce)\n";
  }
  return *config.seed;
}

}  // namespace qcd::cli
