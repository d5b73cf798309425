#pragma once

#include <cstddef>

#include "igbayes/classical_estimators.hpp"

namespace igb {

// Independent gamma priors: mu ~ Gamma(a, b), lambda ~ Gamma(c, d).
// The vague (non-informative) prior pi(mu) ~ const, pi(lambda) ~ 1/lambda
// is exactly the degenerate setting (a, b, c, d) = (1, 0, 0, 0).
struct PriorHyper {
  double a = 1.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;

  bool is_vague() const { return a == 1.0 && b == 0.0 && c == 0.0 && d == 0.0; }
  void validate() const;
};

// Ingredients of the two-parameter Lindley expansion around the MLE:
// third log-likelihood derivatives, inverse observed information, and
// log-prior gradients.
struct LindleyTerms {
  double l111, l112, l122, l222;
  double sigma11, sigma12, sigma22;
  double rho1, rho2;
};

LindleyTerms lindley_terms(const PointEstimates& mle, std::size_t n,
                           const PriorHyper& prior);

// Closed-form approximate posterior means of mu and lambda. The lambda
// value can go negative for priors with large d relative to n; it is
// returned raw with lambda_valid flagging positivity, so long-run MSE
// studies see the estimator as-is.
struct LindleyEstimates {
  double mu;
  double lambda;
  bool lambda_valid;
};

LindleyEstimates lindley_estimates(const PointEstimates& mle, std::size_t n,
                                   const PriorHyper& prior);

// A scalar function of (mu, lambda) and its partials, all evaluated at
// the MLE, for the general expansion.
struct PosteriorFunction {
  double u;
  double du_mu = 0.0;
  double du_lambda = 0.0;
  double d2_mu_mu = 0.0;
  double d2_mu_lambda = 0.0;
  double d2_lambda_lambda = 0.0;
};

// General Lindley engine; with u = mu or u = lambda it reproduces the
// closed forms above exactly.
double lindley_general(const PosteriorFunction& fn, const LindleyTerms& terms);

}  // namespace igb
