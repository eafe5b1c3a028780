#pragma once

// Special functions used across the library: log-gamma, digamma, the
// beta function, regularized incomplete beta/gamma, and Gaussian
// cdf/quantile helpers. Self-contained double-precision implementations.

namespace selfple::special {

// Natural log of the gamma function, Lanczos approximation (g = 7).
// Accurate to ~1e-13 relative over the positive axis.
double log_gamma(double x);

// Digamma psi(x) = d/dx log_gamma(x) for x > 0; recurrence up to the
// asymptotic region, then the Bernoulli series.
double digamma(double x);

// Beta function B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b).
double beta(double a, double b);

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double incomplete_beta(double a, double b, double x);

// Regularized lower/upper incomplete gamma P(a, x), Q(a, x).
double incomplete_gamma_p(double a, double x);
double incomplete_gamma_q(double a, double x);

// Standard normal cdf and its inverse (Acklam's rational approximation
// polished by one Halley step; ~1e-15).
double normal_cdf(double x);
double normal_quantile(double p);

// Upper quantile of the chi-square distribution with one degree of
// freedom: q such that P(X >= q) = level.
double chi_square1_upper_quantile(double level);

} // namespace selfple::special
