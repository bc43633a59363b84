#include "commands.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "qcd/csv_format.hpp"

namespace qcd::cli {

namespace fs = std::filesystem;

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  while (true) {
    const auto comma = line.find(',');
    fields.push_back(trim(line.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return fields;
}

std::optional<double> to_number(std::string_view field) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size() ||
      !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw std::runtime_error("cannot create output directory " + dir.string());
  }
}

std::vector<double> thresholds_or_default(const ExperimentConfig& config) {
  return config.thresholds.empty() ? default_thresholds() : config.thresholds;
}

ScenarioReport run_roc_scenario(const ExperimentConfig& config, const std::string& name,
                                const fs::path& dir) {
  const auto query = config.query();
  const auto thresholds = thresholds_or_default(config);
  const auto analytic = roc_sweep(query, thresholds, config.analytic_options());
  const auto empirical =
      empirical_roc(query, thresholds, config.trials, *config.seed, config.mc_options());
  auto report = compare(analytic, empirical, config.tolerance);

  ensure_dir(dir);
  {
    auto out = open_output(dir / "analytic.csv");
    write_roc_csv(out, analytic.points);
  }
  {
    auto out = open_output(dir / "empirical.csv");
    write_empirical_csv(out, empirical);
  }
  {
    auto out = open_output(dir / "comparison.csv");
    write_comparison_csv(out, report);
  }
  auto manifest = config.manifest("roc");
  manifest.set("scenario", name);
  manifest.set("outputs", std::string("analytic.csv,empirical.csv,comparison.csv"));
  manifest.write(dir / "manifest.txt");
  return {name, config.snr_db, query, std::move(report)};
}

}  // namespace

std::vector<double> read_samples(std::istream& in) {
  std::vector<double> samples;
  std::optional<std::size_t> column;
  bool first_line = true;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto fields = split_fields(text);
    if (first_line) {
      first_line = false;
      bool numeric = true;
      for (auto f : fields) numeric = numeric && to_number(f).has_value();
      if (!numeric) {
        column = fields.size() - 1;
        for (std::size_t i = 0; i < fields.size(); ++i) {
          if (fields[i] == "sample") column = i;
        }
        continue;
      }
    }
    const std::size_t col = column.value_or(fields.size() - 1);
    if (col >= fields.size()) {
      throw InputError("line " + std::to_string(line_no) + ": expected at least " +
                       std::to_string(col + 1) + " columns");
    }
    const auto value = to_number(fields[col]);
    if (!value) {
      throw InputError("line " + std::to_string(line_no) + ": malformed number '" +
                       std::string(fields[col]) + "'");
    }
    samples.push_back(*value);
  }
  if (samples.empty()) throw InputError("no samples in input");
  return samples;
}

DetectResult cmd_detect(std::istream& input, const ExperimentConfig& config,
                        std::ostream& trace_out, std::ostream& log) {
  config.validate_config();
  if (config.thresholds.size() != 1) {
    throw std::invalid_argument("detect needs exactly one threshold (--lambda)");
  }
  const double lambda = config.thresholds.front();

  DetectResult result;
  result.samples = read_samples(input);
  ScenarioSpec spec{config.model(), config.sensing_case, result.samples.size(),
                    config.change_point, config.seed.value_or(0)};
  if (spec.change_point && *spec.change_point > spec.window_len) {
    throw std::invalid_argument("--tau exceeds the number of input samples");
  }
  SampleSequence sequence{result.samples, spec};
  result.run = run(sequence, config.model(), config.sensing_case, lambda,
                   RunOptions{config.reset_at_change});

  if (!config.out_dir.empty()) {
    ensure_dir(config.out_dir);
    auto out = open_output(config.out_dir / "trace.csv");
    write_trace_csv(out, result.samples, result.run, lambda);
    auto manifest = config.manifest("detect");
    manifest.set("window_len", static_cast<unsigned long long>(result.samples.size()));
    manifest.set("outputs", std::string("trace.csv"));
    manifest.write(config.out_dir / "manifest.txt");
  } else {
    write_trace_csv(trace_out, result.samples, result.run, lambda);
  }

  const auto& o = result.run.outcome;
  log << "samples = " << result.samples.size() << '\n'
      << "threshold = " << csv::number(lambda) << '\n'
      << "stop_index = " << (o.stop_index ? std::to_string(*o.stop_index) : "none") << '\n'
      << "outcome = " << to_string(o.kind) << '\n'
      << "delay = " << (o.delay ? std::to_string(*o.delay) : "none") << '\n';
  return result;
}

std::string scenario_name(double snr_db, std::size_t horizon) {
  std::ostringstream name;
  name << "snr_" << (snr_db < 0 ? "m" : "") << csv::number(std::abs(snr_db)) << "db_L" << horizon;
  return name.str();
}

std::vector<ScenarioReport> cmd_roc(ExperimentConfig config, std::ostream& log) {
  config.validate_config();
  resolve_seed(config, log);
  const fs::path root = config.out_dir.empty() ? fs::path(".") : config.out_dir;

  std::vector<ScenarioReport> reports;
  if (!config.paper_figures) {
    reports.push_back(run_roc_scenario(
        config, scenario_name(config.snr_db, config.effective_horizon()), root));
  } else {
    if (!config.change_point) throw std::invalid_argument("--paper-figures needs --tau");
    for (double snr : {-3.0, 0.0, 3.0}) {
      for (std::size_t extra : {20u, 40u, 60u}) {
        ExperimentConfig scenario = config;
        scenario.snr_db = snr;
        scenario.horizon = *config.change_point + extra;
        scenario.validate_config();
        const auto name = scenario_name(snr, *scenario.horizon);
        reports.push_back(run_roc_scenario(scenario, name, root / name));
      }
    }
    ensure_dir(root);
    auto out = open_output(root / "summary.csv");
    out << "scenario,snr_db,horizon,max_pf_gap,max_pd_gap,tolerance,pass\n";
    for (const auto& r : reports) {
      out << r.name << ',' << csv::number(r.snr_db) << ','
          << r.query.eval_horizon << ',' << csv::number(r.comparison.max_pf_gap) << ','
          << csv::number(r.comparison.max_pd_gap) << ',' << csv::number(r.comparison.tolerance)
          << ',' << (r.comparison.passed() ? "yes" : "no") << '\n';
    }
    auto manifest = config.manifest("roc");
    manifest.set("paper_figures", true);
    manifest.set("outputs", std::string("summary.csv"));
    manifest.write(root / "manifest.txt");
  }

  for (const auto& r : reports) {
    log << r.name << ": max |dPf| = " << csv::number(r.comparison.max_pf_gap)
        << ", max |dPd| = " << csv::number(r.comparison.max_pd_gap) << " -> "
        << (r.comparison.passed() ? "PASS" : "FAIL") << " at tolerance "
        << csv::number(r.comparison.tolerance) << '\n';
  }
  return reports;
}

ThresholdResult cmd_threshold(ExperimentConfig config, double target, Metric metric,
                              std::ostream& out) {
  config.validate_config();
  if (!(target > 0.0 && target < 1.0)) {
    throw std::invalid_argument("--target must lie in the open interval (0, 1)");
  }
  const auto query = config.query();
  ThresholdResult result;
  result.solution = solve_threshold(query, target, metric, SolverOptions{},
                                    config.analytic_options());
  out << "metric = " << to_string(metric) << '\n'
      << "target = " << csv::number(target) << '\n'
      << "lambda = " << csv::number(result.solution.threshold) << '\n'
      << "analytic = " << csv::number(result.solution.achieved) << '\n';
  if (result.solution.non_monotone_warning) {
    out << "warning = analytic metric is not monotone in lambda on the scan grid\n";
  }
  if (config.validate) {
    resolve_seed(config, out);
    const double lambda = result.solution.threshold;
    const auto roc = empirical_roc(query, std::span<const double>(&lambda, 1), config.trials,
                                   *config.seed, config.mc_options());
    const bool pf = metric == Metric::FalseAlarm;
    result.empirical = pf ? roc.points[0].p_false : roc.points[0].p_detect;
    result.empirical_std_error = pf ? roc.pf_std_errors[0] : roc.pd_std_errors[0];
    out << "empirical = " << csv::number(*result.empirical) << '\n'
        << "empirical_std_error = " << csv::number(*result.empirical_std_error) << '\n'
        << "trials = " << config.trials << '\n'
        << "seed = " << *config.seed << '\n';
  }
  return result;
}

SampleSequence cmd_simulate(ExperimentConfig config, std::ostream& log) {
  config.validate_config();
  resolve_seed(config, log);
  const ScenarioSpec spec{config.model(), config.sensing_case, config.window_len,
                          config.change_point, *config.seed};
  auto sequence = generate(spec);

  const fs::path root = config.out_dir.empty() ? fs::path(".") : config.out_dir;
  ensure_dir(root);
  {
    auto out = open_output(root / "samples.csv");
    out << "index,sample\n";
    for (std::size_t i = 0; i < sequence.samples.size(); ++i) {
      out << i + 1 << ',' << csv::number(sequence.samples[i]) << '\n';
    }
    if (!out) throw std::runtime_error("failed writing " + (root / "samples.csv").string());
  }
  auto manifest = config.manifest("simulate");
  manifest.set("outputs", std::string("samples.csv"));
  manifest.write(root / "manifest.txt");
  log << "wrote " << sequence.samples.size() << " samples to " << (root / "samples.csv").string()
      << '\n';
  return sequence;
}

}  // namespace qcd::cli
