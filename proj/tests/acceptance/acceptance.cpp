// Acceptance suite. Prints one PASS/FAIL line per criterion.
//
//   qcd_acceptance                 run every criterion
//   qcd_acceptance --criterion 3   run one criterion (used by ctest)

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "oracles.hpp"
#include "qcd/analytic_roc.hpp"
#include "qcd/cusum.hpp"
#include "qcd/monte_carlo.hpp"
#include "qcd/specfun.hpp"

using namespace qcd;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 20240601;
constexpr std::size_t kTrials = 10000;
constexpr double kGapTolerance = 0.05;
constexpr std::size_t kTau = 100;
constexpr std::size_t kWindow = 200;

struct Verdict {
  bool pass = false;
  std::string detail;
};

SignalModel model_at(double snr_db) {
  return SignalModel(1.0, cli::snr_db_to_power(snr_db, 1.0));
}

RocQuery grid_query(double snr_db, std::size_t horizon) {
  return RocQuery{model_at(snr_db), kWindow, kTau, horizon, SensingCase::Entrance};
}

std::string fmt(double v, int precision = 4) {
  std::ostringstream s;
  s.precision(precision);
  s << v;
  return s.str();
}

// ---------------------------------------------------------------------------
// 1. Analytic vs Monte Carlo over the nine scenarios.
Verdict analytic_vs_monte_carlo() {
  const auto grid = default_thresholds();
  bool pass = true;
  double worst_pf = 0.0;
  double worst_pd = 0.0;
  std::ostringstream detail;
  for (double snr : {-3.0, 0.0, 3.0}) {
    for (std::size_t extra : {20u, 40u, 60u}) {
      const auto q = grid_query(snr, kTau + extra);
      const auto report = compare(roc_sweep(q, grid), empirical_roc(q, grid, kTrials, kSeed),
                                  kGapTolerance);
      worst_pf = std::max(worst_pf, report.max_pf_gap);
      worst_pd = std::max(worst_pd, report.max_pd_gap);
      pass = pass && report.passed();
      std::cout << "    " << cli::scenario_name(snr, kTau + extra)
                << ": max|dPf|=" << fmt(report.max_pf_gap)
                << " max|dPd|=" << fmt(report.max_pd_gap) << '\n';
    }
  }
  detail << "max|dPf|=" << fmt(worst_pf) << " max|dPd|=" << fmt(worst_pd) << " (tol "
         << kGapTolerance << ", " << kTrials << " trials, 64-point sweep)";
  return {pass, detail.str()};
}

// ---------------------------------------------------------------------------
// 2. First-sample false alarm is exact.
Verdict single_sample_anchor() {
  const auto model = model_at(0.0);
  const auto params = llr_params(model);
  const std::size_t n = 1'000'000;
  const auto h0 = generate({model, SensingCase::Entrance, n, std::nullopt, kSeed});
  bool pass = true;
  std::ostringstream detail;
  for (double lambda : {0.5, 1.0, 2.0, 4.0}) {
    const double analytic = p_false_at(lambda, 1, params, 1.0);
    const double exact =
        1.0 - specfun::reg_lower_gamma({0.5, zeta(lambda, 1, params) / 2.0});
    std::size_t hits = 0;
    for (double y : h0.samples) hits += llr(y, params, SensingCase::Entrance) > lambda;
    const double mc = static_cast<double>(hits) / static_cast<double>(n);
    const double se = std::sqrt(exact * (1.0 - exact) / static_cast<double>(n));
    const double z = std::abs(mc - exact) / se;
    const bool ok = std::abs(analytic - exact) <= 1e-15 && z <= 3.0;
    pass = pass && ok;
    detail << "lambda=" << lambda << ": Pf1=" << fmt(analytic, 6) << " mc=" << fmt(mc, 6)
           << " z=" << fmt(z, 3) << "; ";
  }
  return {pass, detail.str()};
}

// ---------------------------------------------------------------------------
// 3. ROC dominance on a common Pf grid.
struct Curve {
  std::vector<double> pf, pd, se;
};

// Upper envelope in Pd for each distinct Pf, sorted by Pf.
Curve envelope(const std::vector<RocPoint>& points, const std::vector<double>& pd_se) {
  std::map<double, std::pair<double, double>> best;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double se = pd_se.empty() ? 0.0 : pd_se[i];
    auto [it, inserted] = best.try_emplace(points[i].p_false, points[i].p_detect, se);
    if (!inserted && points[i].p_detect > it->second.first) it->second = {points[i].p_detect, se};
  }
  Curve c;
  for (const auto& [pf, v] : best) {
    c.pf.push_back(pf);
    c.pd.push_back(v.first);
    c.se.push_back(v.second);
  }
  return c;
}

std::pair<double, double> interpolate(const Curve& c, double pf) {
  if (pf <= c.pf.front()) return {c.pd.front(), c.se.front()};
  if (pf >= c.pf.back()) return {c.pd.back(), c.se.back()};
  const auto hi = static_cast<std::size_t>(
      std::upper_bound(c.pf.begin(), c.pf.end(), pf) - c.pf.begin());
  const std::size_t lo = hi - 1;
  const double w = (pf - c.pf[lo]) / (c.pf[hi] - c.pf[lo]);
  return {c.pd[lo] + w * (c.pd[hi] - c.pd[lo]), c.se[lo] + w * (c.se[hi] - c.se[lo])};
}

// Checks better >= worse at 50 shared Pf values; slack is in standard errors.
bool dominates(const Curve& better, const Curve& worse, double slack_se, std::string& why) {
  const double lo = std::max(better.pf.front(), worse.pf.front());
  const double hi = std::min(better.pf.back(), worse.pf.back());
  if (!(hi >= lo)) {
    why = "no common Pf range";
    return false;
  }
  for (int i = 0; i < 50; ++i) {
    const double pf = hi == lo ? lo : lo + (hi - lo) * i / 49.0;
    const auto [pb, sb] = interpolate(better, pf);
    const auto [pw, sw] = interpolate(worse, pf);
    if (pb < pw - slack_se * std::hypot(sb, sw) - 1e-12) {
      why = "Pf=" + fmt(pf) + ": " + fmt(pb) + " < " + fmt(pw);
      return false;
    }
  }
  return true;
}

Verdict roc_dominance() {
  const auto grid = default_thresholds();
  const std::vector<double> snrs{3.0, 0.0, -3.0};
  const std::vector<std::size_t> extras{60, 40, 20};
  std::map<std::pair<double, std::size_t>, Curve> analytic, empirical;
  for (double snr : snrs) {
    for (std::size_t e : extras) {
      const auto q = grid_query(snr, kTau + e);
      analytic[{snr, e}] = envelope(roc_sweep(q, grid).points, {});
      const auto mc = empirical_roc(q, grid, kTrials, kSeed);
      empirical[{snr, e}] = envelope(mc.points, mc.pd_std_errors);
    }
  }
  bool pass = true;
  std::ostringstream detail;
  auto check = [&](const char* kind, auto& curves, double slack, std::pair<double, std::size_t> a,
                   std::pair<double, std::size_t> b) {
    std::string why;
    if (!dominates(curves[a], curves[b], slack, why)) {
      pass = false;
      detail << kind << " (" << a.first << "dB,L=tau+" << a.second << ") vs (" << b.first
             << "dB,L=tau+" << b.second << "): " << why << "; ";
    }
  };
  for (auto [curves, slack, kind] :
       {std::tuple{&analytic, 0.0, "analytic"}, std::tuple{&empirical, 1.0, "empirical"}}) {
    for (std::size_t e : extras) {
      check(kind, *curves, slack, {snrs[0], e}, {snrs[1], e});
      check(kind, *curves, slack, {snrs[1], e}, {snrs[2], e});
    }
    for (double snr : snrs) {
      check(kind, *curves, slack, {snr, extras[0]}, {snr, extras[1]});
      check(kind, *curves, slack, {snr, extras[1]}, {snr, extras[2]});
    }
  }
  if (pass) detail << "SNR and horizon ordering hold analytically and empirically";
  return {pass, detail.str()};
}

// ---------------------------------------------------------------------------
// 4. Recursion equals the clamped suffix-max brute force.
Verdict cusum_structure() {
  std::mt19937_64 rng(kSeed);
  std::uniform_int_distribution<std::size_t> length(1, 200);
  std::uniform_real_distribution<double> drift(-1.0, 1.0);
  double worst = 0.0;
  for (int rep = 0; rep < 1000; ++rep) {
    std::normal_distribution<double> inc(drift(rng), 1.0);
    std::vector<double> increments(length(rng));
    for (auto& x : increments) x = inc(rng);
    const auto trace = accumulate(increments);
    const auto oracle = oracle::cusum_brute_force(increments);
    for (std::size_t m = 0; m < increments.size(); ++m) {
      worst = std::max(worst, std::abs(trace[m].g - oracle[m]) / std::max(1.0, oracle[m]));
    }
  }
  return {worst <= 1e-12, "1000 sequences, max scaled difference " + fmt(worst, 3)};
}

// ---------------------------------------------------------------------------
// 5. Special functions.
Verdict special_functions() {
  const std::vector<double> shapes{0.5, 0.75, 1.0, 1.5, 2.5, 5.0, 10.0, 30.0, 75.0, 200.0};
  const std::vector<double> xs{0.0,  0.01, 0.1,  0.5,  1.0,  2.0,   3.0,   5.0,  8.0,    12.0,
                               20.0, 35.0, 50.0, 80.0, 120.0, 180.0, 250.0, 400.0, 1000.0, 1e4};
  double quad = 0.0;
  std::size_t points = 0;
  for (double a : shapes) {
    for (double x : xs) {
      quad = std::max(quad, std::abs(specfun::reg_lower_gamma({a, x}) -
                                     oracle::reg_lower_gamma_quadrature(a, x)));
      ++points;
    }
  }
  double identity = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    const double x = 0.05 * i;
    identity = std::max(identity, std::abs(specfun::reg_lower_gamma({0.5, x}) -
                                           specfun::erf(std::sqrt(x))));
  }
  double recurrence = 0.0;
  for (double a : shapes) {
    for (double x : xs) {
      if (x == 0.0) continue;
      const double rhs = specfun::reg_lower_gamma({a, x}) -
                         std::exp(a * std::log(x) - x - specfun::log_gamma(a + 1.0));
      recurrence = std::max(recurrence, std::abs(specfun::reg_lower_gamma({a + 1.0, x}) - rhs));
    }
  }
  const bool pass = points == 200 && quad <= 1e-10 && identity <= 1e-10 && recurrence <= 1e-10;
  return {pass, "quadrature grid (" + std::to_string(points) + " pts) " + fmt(quad, 3) +
                    ", erf identity " + fmt(identity, 3) + ", recurrence " + fmt(recurrence, 3)};
}

// ---------------------------------------------------------------------------
// 6. Threshold solver round trip plus Monte Carlo validation.
Verdict threshold_round_trip() {
  const auto q = grid_query(0.0, kTau + 40);
  bool pass = true;
  std::ostringstream detail;
  for (double target : {0.01, 0.05, 0.1, 0.3}) {
    try {
      const auto sol = solve_threshold(q, target, Metric::FalseAlarm);
      const double achieved = p_false_total(sol.threshold, q);
      const double lambda = sol.threshold;
      const auto mc = empirical_roc(q, std::span<const double>(&lambda, 1), kTrials, kSeed);
      const bool ok = std::abs(achieved - target) <= 1e-3 &&
                      std::abs(mc.points[0].p_false - target) <= kGapTolerance;
      pass = pass && ok;
      detail << "Pf=" << target << ": lambda=" << fmt(lambda) << " analytic=" << fmt(achieved, 6)
             << " mc=" << fmt(mc.points[0].p_false) << (ok ? "" : " FAIL") << "; ";
    } catch (const ThresholdSolveError& e) {
      pass = false;
      detail << "Pf=" << target << ": no solution (achievable [" << fmt(e.achievable_min) << ", "
             << fmt(e.achievable_max) << "]) FAIL; ";
    }
  }
  return {pass, detail.str()};
}

// ---------------------------------------------------------------------------
// 7. Byte-identical roc output across runs and thread counts.
std::map<std::string, std::string> read_tree(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    std::ifstream in(entry.path(), std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    files[fs::relative(entry.path(), root).string()] = ss.str();
  }
  return files;
}

Verdict determinism() {
  const auto root = fs::temp_directory_path() / "qcd_acceptance_determinism";
  fs::remove_all(root);
  std::vector<std::map<std::string, std::string>> runs;
  for (unsigned threads : {1u, 4u, 1u, 7u}) {
    cli::ExperimentConfig cfg;
    cfg.seed = kSeed;
    cfg.trials = kTrials;
    cfg.paper_figures = true;
    cfg.threads = threads;
    cfg.out_dir = root / ("run" + std::to_string(runs.size()));
    std::ostringstream log;
    cli::cmd_roc(cfg, log);
    runs.push_back(read_tree(cfg.out_dir));
  }
  std::size_t csvs = 0;
  for (const auto& [name, _] : runs[0]) csvs += name.ends_with(".csv");
  bool pass = csvs == 28;  // 9 x 3 scenario files + summary
  for (std::size_t i = 1; i < runs.size(); ++i) pass = pass && runs[i] == runs[0];
  fs::remove_all(root);
  return {pass, std::to_string(csvs) + " CSV files identical over 4 runs (threads 1,4,1,7)"};
}

// ---------------------------------------------------------------------------
// 8. Qualitative trace shape at 0 dB.
Verdict trace_shape() {
  const auto model = model_at(0.0);
  int good = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto s = generate({model, SensingCase::Entrance, kWindow, kTau, seed});
    const auto r = run(s, model, SensingCase::Entrance, 8.0);
    double pre = 0.0;
    for (std::size_t i = 0; i < kTau - 1; ++i) pre += r.trace[i].g;
    pre /= static_cast<double>(kTau - 1);
    good += pre < 2.0 && r.trace.back().g > 10.0;
  }
  return {good >= 90, std::to_string(good) + "/100 seeds with mean g[1..99] < 2 and g[200] > 10"};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Verdict()> check;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "analytic vs Monte Carlo agreement", analytic_vs_monte_carlo},
      {2, "exact single-sample anchor", single_sample_anchor},
      {3, "ROC dominance in SNR and horizon", roc_dominance},
      {4, "CUSUM structural oracle", cusum_structure},
      {5, "special-function suite", special_functions},
      {6, "threshold solver round trip", threshold_round_trip},
      {7, "determinism across runs and threads", determinism},
      {8, "trace shape at 0 dB", trace_shape},
  };

  int only = 0;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--criterion") only = std::atoi(argv[i + 1]);
  }

  int failures = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failures += !v.pass;
    std::cout << (v.pass ? "[PASS] " : "[FAIL] ") << c.id << ". " << c.name << ": " << v.detail
              << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
