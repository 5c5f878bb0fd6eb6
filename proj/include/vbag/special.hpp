#pragma once

namespace vbag {

// Digamma psi(x) for x > 0: recurrence up to x >= 6, then the asymptotic
// series. Accurate to ~1e-12.
double digamma(double x);

// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
double gamma_p(double a, double x);

double chi2_cdf(double x, int dof);

// Quantile of the chi-square distribution: the x with
// chi2_cdf(x, dof) = prob, to 1e-8 in CDF units.
double chi2_quantile(double prob, int dof);

}  // namespace vbag
