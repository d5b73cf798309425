#pragma once

#include "igbayes/rng.hpp"

namespace igb {

// Parameters of the inverse Gaussian IG(mu, lambda): mean mu, shape
// lambda, variance mu^3/lambda. Both strictly positive.
struct IgParams {
  double mu;
  double lambda;

  IgParams(double mu_in, double lambda_in);
};

double ig_pdf(double x, const IgParams& p);
double ig_log_pdf(double x, const IgParams& p);

// CDF; the exp(2*lambda/mu) term is evaluated in log space so large
// lambda/mu does not overflow.
double ig_cdf(double x, const IgParams& p);

// One exact draw via the Michael-Schucany-Haas transform.
double ig_sample(const IgParams& p, RngStream& rng);

}  // namespace igb
