#pragma once

// Gamma-family special functions used by the analytic ROC formulas.
//
// Only exp, log and sqrt from the platform math library are used, so
// results are reproducible given the same floating-point mode.

namespace qcd::specfun {

/// Arguments of the regularized incomplete gamma functions.
/// Requires shape > 0 and x >= 0.
struct GammaArgs {
  double a = 1.0;
  double x = 0.0;
};

/// ln Gamma(a) for a > 0 (Lanczos approximation, ~1e-15 relative).
double log_gamma(double a);

/// P(a, x) = gamma(a, x) / Gamma(a).
///
/// Uses the power series when x < a + 1 and the Lentz continued fraction
/// for Q(a, x) otherwise. Throws std::domain_error for a <= 0, x < 0 or
/// non-finite inputs (x = +inf is accepted and yields 1).
double reg_lower_gamma(GammaArgs args);

/// Q(a, x) = 1 - P(a, x), computed directly so the upper tail keeps full
/// relative precision.
double reg_upper_gamma(GammaArgs args);

/// CDF of a chi-square variable with `dof` degrees of freedom at t.
double chi_square_cdf(int dof, double t);

/// Survival function of a chi-square variable.
double chi_square_sf(int dof, double t);

/// Error function. Odd, saturates to +-1 for |x| >= 6.
double erf(double x);

}  // namespace qcd::specfun
