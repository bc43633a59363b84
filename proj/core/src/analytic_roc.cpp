#include "qcd/analytic_roc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "qcd/csv_format.hpp"
#include "qcd/specfun.hpp"

namespace qcd {

namespace {

double clamp01(double p) { return std::clamp(p, 0.0, 1.0); }

void check_lambda(double lambda) {
  if (!(lambda > 0.0) || std::isnan(lambda)) {
    throw std::invalid_argument("threshold must be positive");
  }
}

// Probability that a k-term LLR partial sum stays at or below lambda.
double partial_sum_cdf(double lambda, std::size_t k, double variance, const LlrParams& params,
                       SensingCase sensing_case) {
  const double a = 0.5 * static_cast<double>(k);
  if (sensing_case == SensingCase::Entrance) {
    return specfun::reg_lower_gamma({a, zeta(lambda, k, params) / (2.0 * variance)});
  }
  // -c1 S - k c2 <= lambda  <=>  S >= (-lambda - k c2) / c1
  const double bound = (-lambda - static_cast<double>(k) * params.c2()) / params.c1();
  if (bound <= 0.0) return 1.0;
  return specfun::reg_upper_gamma({a, bound / (2.0 * variance)});
}

// Sum over m = first..last (relative sample counts, 1-based) of
//   max(0, 1 - F_m) * prod_{j<m} min(1, F_j),
// with F_m = sum_{k=1}^{m} partial_sum_cdf(k). F_m only depends on how many
// samples separate m from the start of the window, so one prefix sum serves
// every per-sample term.
double first_passage_sum(double lambda, std::size_t first, std::size_t last, double variance,
                         const LlrParams& params, SensingCase sensing_case) {
  double total = 0.0;
  double f = 0.0;
  double product = 1.0;
  for (std::size_t m = 1; m <= last; ++m) {
    f += partial_sum_cdf(lambda, m, variance, params, sensing_case);
    if (m >= first) total += std::max(0.0, 1.0 - f) * product;
    product *= std::min(1.0, f);
  }
  return total;
}

}  // namespace

void RocQuery::validate() const {
  if (window_len == 0) throw std::invalid_argument("window length must be positive");
  if (change_point < 1 || change_point > eval_horizon || eval_horizon > window_len) {
    throw std::invalid_argument("require 1 <= tau <= L <= N (tau=" + std::to_string(change_point) +
                                ", L=" + std::to_string(eval_horizon) +
                                ", N=" + std::to_string(window_len) + ")");
  }
}

std::string_view to_string(RocSource source) {
  return source == RocSource::Analytic ? "analytic" : "monte_carlo";
}

double zeta(double lambda, std::size_t k, const LlrParams& params) {
  return (lambda - static_cast<double>(k) * params.c2()) / params.c1();
}

double cdf_partial_sum(double lambda, std::size_t first, std::size_t last, double variance,
                       const LlrParams& params, SensingCase sensing_case) {
  if (first < 1 || last < first) throw std::invalid_argument("partial sum needs 1 <= first <= last");
  if (!(variance > 0.0)) throw std::invalid_argument("variance must be positive");
  return partial_sum_cdf(lambda, last - first + 1, variance, params, sensing_case);
}

double f_z(double lambda, std::size_t m, std::size_t start, double variance,
           const LlrParams& params, SensingCase sensing_case) {
  if (start < 1 || m < start) throw std::invalid_argument("f_z needs 1 <= start <= m");
  double sum = 0.0;
  for (std::size_t r = start; r <= m; ++r) {
    sum += cdf_partial_sum(lambda, r, m, variance, params, sensing_case);
  }
  return sum;
}

double p_false_at(double lambda, std::size_t sample, const LlrParams& params, double variance,
                  SensingCase sensing_case) {
  check_lambda(lambda);
  if (sample < 1) throw std::out_of_range("false-alarm sample index must be >= 1");
  const double lead = std::max(0.0, 1.0 - f_z(lambda, sample, 1, variance, params, sensing_case));
  double product = 1.0;
  for (std::size_t j = 1; j < sample; ++j) {
    product *= std::min(1.0, f_z(lambda, j, 1, variance, params, sensing_case));
  }
  return clamp01(lead * product);
}

double p_false_total(double lambda, const RocQuery& query, AnalyticOptions options) {
  check_lambda(lambda);
  query.validate();
  const std::size_t tau = query.change_point;
  const std::size_t first = options.strict_paper_pf ? 2 : 1;
  const std::size_t last = options.strict_paper_pf ? tau : tau - 1;
  if (last < first) return 0.0;
  const double v = query.model.pre_change_variance(query.sensing_case);
  return clamp01(first_passage_sum(lambda, first, last, v, llr_params(query.model),
                                   query.sensing_case));
}

double p_detect_at(double lambda, std::size_t sample, const RocQuery& query) {
  check_lambda(lambda);
  query.validate();
  const std::size_t tau = query.change_point;
  if (sample < tau || sample > query.window_len) {
    throw std::out_of_range("detection sample index must lie in [tau, N]");
  }
  const auto params = llr_params(query.model);
  const double v = query.model.post_change_variance(query.sensing_case);
  const double lead =
      std::max(0.0, 1.0 - f_z(lambda, sample, tau, v, params, query.sensing_case));
  double product = 1.0;
  for (std::size_t j = tau; j < sample; ++j) {
    product *= std::min(1.0, f_z(lambda, j, tau, v, params, query.sensing_case));
  }
  return clamp01(lead * product);
}

double p_detect_total(double lambda, const RocQuery& query) {
  check_lambda(lambda);
  query.validate();
  const std::size_t count = query.eval_horizon - query.change_point + 1;
  const double v = query.model.post_change_variance(query.sensing_case);
  return clamp01(first_passage_sum(lambda, 1, count, v, llr_params(query.model),
                                   query.sensing_case));
}

void validate_thresholds(std::span<const double> thresholds) {
  if (thresholds.empty()) throw std::invalid_argument("threshold list is empty");
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (!(thresholds[i] > 0.0) || !std::isfinite(thresholds[i])) {
      throw std::invalid_argument("thresholds must be positive and finite");
    }
    if (i > 0 && !(thresholds[i] > thresholds[i - 1])) {
      throw std::invalid_argument("thresholds must be strictly increasing");
    }
  }
}

RocCurve roc_sweep(const RocQuery& query, std::span<const double> thresholds,
                   AnalyticOptions options) {
  query.validate();
  validate_thresholds(thresholds);
  RocCurve curve{query, {}};
  curve.points.reserve(thresholds.size());
  for (double lambda : thresholds) {
    curve.points.push_back({lambda, p_false_total(lambda, query, options),
                            p_detect_total(lambda, query), RocSource::Analytic});
  }
  return curve;
}

std::vector<double> log_spaced(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi >= lo) || count == 0) {
    throw std::invalid_argument("log_spaced needs 0 < lo <= hi and count >= 1");
  }
  if (count == 1) return {lo};
  if (hi == lo) throw std::invalid_argument("log_spaced needs lo < hi for count > 1");
  std::vector<double> out(count);
  const double step = std::log(hi / lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) out[i] = lo * std::exp(step * static_cast<double>(i));
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<double> default_thresholds() { return log_spaced(0.1, 50.0, 64); }

std::string_view to_string(Metric metric) {
  return metric == Metric::FalseAlarm ? "pf" : "pd";
}

Metric parse_metric(std::string_view text) {
  if (text == "pf" || text == "false_alarm") return Metric::FalseAlarm;
  if (text == "pd" || text == "detection") return Metric::Detection;
  throw std::invalid_argument("unknown metric '" + std::string(text) + "' (expected pf or pd)");
}

ThresholdSolution solve_threshold(const RocQuery& query, double target, Metric which,
                                  SolverOptions solver, AnalyticOptions options) {
  query.validate();
  if (!(target > 0.0 && target < 1.0)) {
    throw std::invalid_argument("target probability must lie in the open interval (0, 1)");
  }
  if (!(solver.tol > 0.0)) throw std::invalid_argument("solver tolerance must be positive");
  if (solver.scan_points < 2) throw std::invalid_argument("solver needs at least 2 scan points");

  auto metric = [&](double lambda) {
    return which == Metric::FalseAlarm ? p_false_total(lambda, query, options)
                                       : p_detect_total(lambda, query);
  };

  const auto grid = log_spaced(solver.lambda_min, solver.lambda_max, solver.scan_points);
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = metric(grid[i]);

  ThresholdSolution result;
  std::size_t closest = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i > 0 && values[i] > values[i - 1] + 1e-12) result.non_monotone_warning = true;
    if (std::abs(values[i] - target) < std::abs(values[closest] - target)) closest = i;
  }
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());

  bool bracketed = false;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double da = values[i] - target;
    const double db = values[i + 1] - target;
    if (std::abs(da) <= solver.tol) {
      result.threshold = grid[i];
      result.achieved = values[i];
      return result;
    }
    if ((da > 0.0) == (db > 0.0) && std::abs(db) > solver.tol) continue;
    bracketed = true;

    // Bisection in log(lambda); the bracket keeps da's sign on the left.
    double left = grid[i];
    double right = grid[i + 1];
    for (int iter = 0; iter < 200; ++iter) {
      const double mid = std::sqrt(left * right);
      const double dm = metric(mid) - target;
      if (std::abs(dm) <= solver.tol) {
        result.threshold = mid;
        result.achieved = dm + target;
        return result;
      }
      if (mid <= left || mid >= right) break;
      if ((dm > 0.0) == (da > 0.0)) {
        left = mid;
      } else {
        right = mid;
      }
    }
    if (std::abs(db) <= solver.tol) {
      result.threshold = grid[i + 1];
      result.achieved = values[i + 1];
      return result;
    }
  }

  std::ostringstream msg;
  msg << "no threshold reaches " << to_string(which) << " = " << target << " (achievable range ["
      << *lo_it << ", " << *hi_it << "] over lambda in [" << solver.lambda_min << ", "
      << solver.lambda_max << "]; closest " << values[closest] << " at lambda " << grid[closest]
      << ")";
  throw ThresholdSolveError(
      bracketed ? ThresholdSolveError::Kind::NoSolution : ThresholdSolveError::Kind::NoBracket,
      msg.str(), *lo_it, *hi_it, grid[closest], values[closest]);
}

void write_roc_csv(std::ostream& out, std::span<const RocPoint> points) {
  out << "threshold,p_false,p_detect,source\n";
  for (const auto& p : points) {
    out << csv::number(p.threshold) << ',' << csv::number(p.p_false) << ','
        << csv::number(p.p_detect) << ',' << to_string(p.source) << '\n';
  }
}

}  // namespace qcd
