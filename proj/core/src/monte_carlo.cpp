#include "qcd/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "qcd/csv_format.hpp"
#include "qcd/random.hpp"

namespace qcd {

namespace {

unsigned worker_count(unsigned requested, std::size_t trials) {
  unsigned n = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(trials, 1)));
}

// Splits [0, trials) into contiguous chunks, one per worker. `body(begin, end,
// worker)` must only touch state owned by `worker`.
template <typename Body>
void parallel_chunks(std::size_t trials, unsigned workers, Body&& body) {
  if (workers <= 1) {
    body(std::size_t{0}, trials, 0u);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (trials + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t begin = std::min(trials, chunk * w);
    const std::size_t end = std::min(trials, begin + chunk);
    pool.emplace_back([&body, begin, end, w] { body(begin, end, w); });
  }
  for (auto& t : pool) t.join();
}

ScenarioSpec scenario_for(const RocQuery& query, std::optional<std::size_t> change_point,
                          std::uint64_t seed) {
  return ScenarioSpec{query.model, query.sensing_case, query.window_len, change_point, seed};
}

std::vector<CusumState> trial_trace(const RocQuery& query, std::optional<std::size_t> change,
                                    std::uint64_t seed, const LlrParams& params,
                                    const McOptions& options) {
  const auto frame = generate(scenario_for(query, change, seed));
  std::vector<double> increments(frame.samples.size());
  std::transform(frame.samples.begin(), frame.samples.end(), increments.begin(),
                 [&](double y) { return llr(y, params, query.sensing_case); });
  return accumulate(increments, options.reset_at_change ? change : std::nullopt);
}

std::vector<TrialOutcome> simulate(const RocQuery& query, std::optional<std::size_t> change,
                                   std::optional<std::size_t> horizon, double lambda,
                                   std::size_t trials, std::uint64_t base_seed,
                                   const McOptions& options) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("threshold must be positive and finite");
  }
  if (trials == 0) throw std::invalid_argument("trial count must be positive");
  const auto params = llr_params(query.model);
  std::vector<TrialOutcome> out(trials);
  parallel_chunks(trials, worker_count(options.threads, trials),
                  [&](std::size_t begin, std::size_t end, unsigned) {
                    for (std::size_t i = begin; i < end; ++i) {
                      const auto seed = derive_seed(base_seed, i);
                      const auto trace = trial_trace(query, change, seed, params, options);
                      out[i] = {classify(first_crossing(trace, lambda), change, horizon), i, seed};
                    }
                  });
  return out;
}

double binomial_std_error(double p, std::size_t n) {
  return n == 0 ? 0.0 : std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

}  // namespace

std::vector<TrialOutcome> run_trials(const RocQuery& query, double lambda, std::size_t trials,
                                     std::uint64_t base_seed, McOptions options) {
  query.validate();
  return simulate(query, query.change_point, query.eval_horizon, lambda, trials, base_seed,
                  options);
}

std::vector<TrialOutcome> run_null_trials(const RocQuery& query, double lambda,
                                          std::size_t trials, std::uint64_t base_seed,
                                          McOptions options) {
  query.validate();
  options.reset_at_change = false;
  return simulate(query, std::nullopt, std::nullopt, lambda, trials, base_seed, options);
}

EmpiricalRoc empirical_roc(const RocQuery& query, std::span<const double> thresholds,
                           std::size_t trials, std::uint64_t base_seed, McOptions options) {
  query.validate();
  validate_thresholds(thresholds);
  if (trials == 0) throw std::invalid_argument("trial count must be positive");

  const auto params = llr_params(query.model);
  const std::size_t k = thresholds.size();
  const std::size_t tau = query.change_point;
  const std::size_t horizon = query.eval_horizon;
  const unsigned workers = worker_count(options.threads, trials);

  // Integer counts per worker, summed afterwards: order-insensitive.
  std::vector<std::vector<std::size_t>> fa(workers, std::vector<std::size_t>(k, 0));
  std::vector<std::vector<std::size_t>> det(workers, std::vector<std::size_t>(k, 0));

  parallel_chunks(trials, workers, [&](std::size_t begin, std::size_t end, unsigned w) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto trace = trial_trace(query, tau, derive_seed(base_seed, i), params, options);
      // Stopping index is nondecreasing in lambda, so one forward scan
      // serves the whole ascending threshold list.
      std::size_t pos = 0;
      for (std::size_t t = 0; t < k; ++t) {
        while (pos < trace.size() && !(trace[pos].g > thresholds[t])) ++pos;
        if (pos == trace.size()) break;
        const std::size_t stop = trace[pos].index;
        if (stop < tau) {
          ++fa[w][t];
        } else if (stop <= horizon) {
          ++det[w][t];
        }
      }
    }
  });

  EmpiricalRoc roc{query, trials, {}, {}, {}, {}, {}};
  roc.false_alarms.assign(k, 0);
  roc.detections.assign(k, 0);
  for (unsigned w = 0; w < workers; ++w) {
    for (std::size_t t = 0; t < k; ++t) {
      roc.false_alarms[t] += fa[w][t];
      roc.detections[t] += det[w][t];
    }
  }
  for (std::size_t t = 0; t < k; ++t) {
    const double pf = static_cast<double>(roc.false_alarms[t]) / static_cast<double>(trials);
    const std::size_t pd_den =
        options.condition_on_no_false_alarm ? trials - roc.false_alarms[t] : trials;
    const double pd =
        pd_den == 0 ? 0.0 : static_cast<double>(roc.detections[t]) / static_cast<double>(pd_den);
    roc.points.push_back({thresholds[t], pf, pd, RocSource::MonteCarlo});
    roc.pf_std_errors.push_back(binomial_std_error(pf, trials));
    roc.pd_std_errors.push_back(binomial_std_error(pd, pd_den));
  }
  return roc;
}

DelayStats delay_stats(std::span<const TrialOutcome> outcomes, const RocQuery& query,
                       std::span<const TrialOutcome> null_outcomes) {
  if (outcomes.empty()) throw std::invalid_argument("delay_stats needs at least one outcome");
  (void)query;
  DelayStats stats;
  double delay_sum = 0.0;
  std::size_t detections = 0;
  std::size_t misses = 0;
  for (const auto& t : outcomes) {
    if (t.outcome.kind == OutcomeKind::Detection) {
      delay_sum += static_cast<double>(*t.outcome.delay);
      ++detections;
    } else if (t.outcome.kind == OutcomeKind::Miss) {
      ++misses;
    }
  }
  if (detections > 0) stats.mean_delay = delay_sum / static_cast<double>(detections);
  stats.miss_rate = static_cast<double>(misses) / static_cast<double>(outcomes.size());

  double run_length_sum = 0.0;
  std::size_t crossed = 0;
  for (const auto& t : null_outcomes) {
    if (t.outcome.stop_index) {
      run_length_sum += static_cast<double>(*t.outcome.stop_index);
      ++crossed;
    } else {
      ++stats.censored;
    }
  }
  if (crossed > 0) stats.mean_time_to_false_alarm = run_length_sum / static_cast<double>(crossed);
  return stats;
}

ComparisonReport compare(const RocCurve& analytic, const EmpiricalRoc& empirical,
                         double tolerance) {
  if (analytic.points.size() != empirical.points.size()) {
    throw std::invalid_argument("analytic and empirical curves have different lengths");
  }
  ComparisonReport report;
  report.tolerance = tolerance;
  for (std::size_t i = 0; i < analytic.points.size(); ++i) {
    const auto& a = analytic.points[i];
    const auto& e = empirical.points[i];
    if (a.threshold != e.threshold) {
      throw std::invalid_argument("analytic and empirical curves use different thresholds");
    }
    ComparisonRow row{a.threshold, a.p_false, e.p_false, a.p_detect, e.p_detect,
                      std::abs(a.p_false - e.p_false), std::abs(a.p_detect - e.p_detect)};
    report.max_pf_gap = std::max(report.max_pf_gap, row.pf_gap);
    report.max_pd_gap = std::max(report.max_pd_gap, row.pd_gap);
    report.rows.push_back(row);
  }
  return report;
}

void write_empirical_csv(std::ostream& out, const EmpiricalRoc& roc) {
  out << "threshold,p_false,p_detect,source,pf_std_error,pd_std_error,false_alarms,detections,"
         "trials\n";
  for (std::size_t i = 0; i < roc.points.size(); ++i) {
    const auto& p = roc.points[i];
    out << csv::number(p.threshold) << ',' << csv::number(p.p_false) << ','
        << csv::number(p.p_detect) << ',' << to_string(p.source) << ','
        << csv::number(roc.pf_std_errors[i]) << ',' << csv::number(roc.pd_std_errors[i]) << ','
        << roc.false_alarms[i] << ',' << roc.detections[i] << ',' << roc.trials << '\n';
  }
}

void write_comparison_csv(std::ostream& out, const ComparisonReport& report) {
  out << "threshold,pf_analytic,pf_empirical,pd_analytic,pd_empirical,pf_gap,pd_gap\n";
  for (const auto& r : report.rows) {
    out << csv::number(r.threshold) << ',' << csv::number(r.pf_analytic) << ','
        << csv::number(r.pf_empirical) << ',' << csv::number(r.pd_analytic) << ','
        << csv::number(r.pd_empirical) << ',' << csv::number(r.pf_gap) << ','
        << csv::number(r.pd_gap) << '\n';
  }
  out << "max,,,,," << csv::number(report.max_pf_gap) << ',' << csv::number(report.max_pd_gap)
      << '\n';
}

}  // namespace qcd
