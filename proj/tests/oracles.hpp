#pragma once

// Independent reference computations used only by tests. None of these call
// into qcd:: code paths they are meant to check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace qcd::oracle {

/// P(a, x) by adaptive Gauss-Kronrod quadrature of the gamma density.
/// Platform lgamma/tgamma provide the normalisation.
inline double reg_lower_gamma_quadrature(double a, double x) {
  using boost::math::quadrature::gauss_kronrod;
  if (x <= 0.0) return 0.0;
  const double cutoff = a + 40.0 * std::sqrt(a) + 60.0;
  const double upper = std::min(x, cutoff);
  if (a < 1.0) {
    // s = t^a removes the integrable singularity at 0.
    const double norm = std::tgamma(a + 1.0);
    auto f = [a](double s) { return std::exp(-std::pow(s, 1.0 / a)); };
    const double top = std::pow(upper, a);
    const double mid = std::min(top, 1.0);
    double sum = gauss_kronrod<double, 61>::integrate(f, 0.0, mid, 15, 1e-13);
    if (top > mid) sum += gauss_kronrod<double, 61>::integrate(f, mid, top, 15, 1e-13);
    return sum / norm;
  }
  const double lg = std::lgamma(a);
  auto f = [a, lg](double t) {
    return t <= 0.0 ? (a == 1.0 ? std::exp(-lg) : 0.0)
                    : std::exp((a - 1.0) * std::log(t) - t - lg);
  };
  // Split at the mode and a few spreads either side so each piece is smooth.
  std::vector<double> knots{0.0};
  const double mode = a - 1.0;
  const double sd = std::sqrt(a);
  for (double k : {-8.0, -3.0, 0.0, 3.0, 8.0}) {
    const double p = mode + k * sd;
    if (p > knots.back() && p < upper) knots.push_back(p);
  }
  knots.push_back(upper);
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    sum += gauss_kronrod<double, 61>::integrate(f, knots[i], knots[i + 1], 15, 1e-13);
  }
  return sum;
}

/// erf by its Maclaurin series, summed in long double until the terms vanish.
inline double erf_maclaurin(double x) {
  const long double xl = x;
  long double term = xl;
  long double sum = xl;
  for (int n = 1; n < 400; ++n) {
    term *= -xl * xl / n;
    const long double add = term / (2 * n + 1);
    sum += add;
    if (std::fabs(add) < 1e-22L * std::fabs(sum)) break;
  }
  return static_cast<double>(sum * 2.0L / std::sqrt(3.14159265358979323846264338327950288L));
}

/// g_m = max(0, max_{1<=r<=m} sum_{j=r}^{m} inc_j), evaluated from scratch
/// for every prefix length m.
inline std::vector<double> cusum_brute_force(std::span<const double> inc) {
  std::vector<double> g(inc.size());
  for (std::size_t m = 0; m < inc.size(); ++m) {
    double best = 0.0;
    for (std::size_t r = 0; r <= m; ++r) {
      double s = 0.0;
      for (std::size_t j = r; j <= m; ++j) s += inc[j];
      best = std::max(best, s);
    }
    g[m] = best;
  }
  return g;
}

/// 1-based index of the first value strictly above the threshold.
inline std::optional<std::size_t> first_above(std::span<const double> values, double threshold) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] > threshold) return i + 1;
  }
  return std::nullopt;
}

}  // namespace qcd::oracle
