#pragma once

#include "igbayes/rng.hpp"

namespace igb {

// ln Gamma(x), x > 0.
double log_gamma(double x);

// Regularized lower incomplete gamma P(a, x) and its complement Q(a, x).
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);

// Regularized incomplete beta I_x(a, b).
double regularized_beta(double a, double b, double x);

// Standard normal CDF and its logarithm (stable far into the left tail).
double norm_cdf(double x);
double log_norm_cdf(double x);

// Chi-squared CDF/quantile with integer degrees of freedom.
double chi2_cdf(double x, int df);
double chi2_quantile(double p, int df);

// Student-t CDF/quantile with integer degrees of freedom.
double student_t_cdf(double t, int df);
double student_t_quantile(double p, int df);

// Variate generators. Each consumes draws from the caller's stream only.
double uniform_variate(double lo, double hi, RngStream& rng);
double normal_variate(RngStream& rng);
// Gamma(shape, rate) with mean shape/rate (Marsaglia-Tsang squeeze,
// with the u^(1/shape) boost for shape < 1).
double gamma_variate(double shape, double rate, RngStream& rng);

}  // namespace igb
