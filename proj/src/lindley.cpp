#include "igbayes/lindley.hpp"

#include <stdexcept>

#include "igbayes/errors.hpp"

namespace igb {

void PriorHyper::validate() const {
  if (!(a > 0.0))
    throw ConfigError("PriorHyper: shape hyperparameter a must be positive");
  if (!(b >= 0.0 && c >= 0.0 && d >= 0.0))
    throw ConfigError("PriorHyper: hyperparameters b, c, d must be nonnegative");
}

LindleyTerms lindley_terms(const PointEstimates& mle, std::size_t n,
                           const PriorHyper& prior) {
  prior.validate();
  if (n < 2) throw std::domain_error("lindley_terms: need n >= 2");
  double mu = mle.mu_hat;
  double lam = mle.lambda_hat;
  double nn = static_cast<double>(n);
  LindleyTerms t;
  t.l111 = 6.0 * nn * lam / (mu * mu * mu * mu);
  t.l112 = -nn / (mu * mu * mu);
  t.l122 = 0.0;
  t.l222 = nn / (lam * lam * lam);
  t.sigma11 = mu * mu * mu / (nn * lam);
  t.sigma12 = 0.0;
  t.sigma22 = 2.0 * lam * lam / nn;
  t.rho1 = (prior.a - 1.0) / mu - prior.b;
  t.rho2 = (prior.c - 1.0) / lam - prior.d;
  return t;
}

LindleyEstimates lindley_estimates(const PointEstimates& mle, std::size_t n,
                                   const PriorHyper& prior) {
  prior.validate();
  double mu = mle.mu_hat;
  double lam = mle.lambda_hat;
  double nn = static_cast<double>(n);
  double mu_l = mu + (prior.a + 2.0) * mu * mu / (nn * lam) -
                prior.b * mu * mu * mu / (nn * lam);
  double lam_l =
      lam + (2.0 * prior.c - 1.0) * lam / nn - 2.0 * prior.d * lam * lam / nn;
  return {mu_l, lam_l, lam_l > 0.0};
}

double lindley_general(const PosteriorFunction& fn, const LindleyTerms& t) {
  double u1 = fn.du_mu;
  double u2 = fn.du_lambda;
  double big_u1 = u1 * t.sigma11 + u2 * t.sigma12;
  double big_u2 = u1 * t.sigma12 + u2 * t.sigma22;
  double value = fn.u;
  value += 0.5 * (fn.d2_mu_mu * t.sigma11 + 2.0 * fn.d2_mu_lambda * t.sigma12 +
                  fn.d2_lambda_lambda * t.sigma22);
  value += big_u1 * t.rho1 + big_u2 * t.rho2;
  value += 0.5 * t.l111 * t.sigma11 * big_u1;
  value += 0.5 * t.l112 * (2.0 * t.sigma12 * big_u1 + t.sigma11 * big_u2);
  value += 0.5 * t.l122 * (t.sigma22 * big_u1 + 2.0 * t.sigma12 * big_u2);
  value += 0.5 * t.l222 * t.sigma22 * big_u2;
  return value;
}

}  // namespace igb
