#include "igbayes/ig_distribution.hpp"

#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "igbayes/special_functions.hpp"

namespace igb {

IgParams::IgParams(double mu_in, double lambda_in) : mu(mu_in), lambda(lambda_in) {
  if (!(mu > 0.0) || !(lambda > 0.0))
    throw std::domain_error("IgParams: mu and lambda must be positive");
}

double ig_log_pdf(double x, const IgParams& p) {
  if (std::isnan(x)) throw std::domain_error("ig_pdf: x is NaN");
  if (x <= 0.0) return -std::numeric_limits<double>::infinity();
  double diff = x - p.mu;
  return 0.5 * (std::log(p.lambda) - std::log(2.0 * M_PI) - 3.0 * std::log(x)) -
         p.lambda * diff * diff / (2.0 * p.mu * p.mu * x);
}

double ig_pdf(double x, const IgParams& p) { return std::exp(ig_log_pdf(x, p)); }

double ig_cdf(double x, const IgParams& p) {
  if (std::isnan(x)) throw std::domain_error("ig_cdf: x is NaN");
  if (x <= 0.0) return 0.0;
  double root = std::sqrt(p.lambda / x);
  double z1 = root * (x / p.mu - 1.0);
  double z2 = -root * (x / p.mu + 1.0);
  double term2 = std::exp(2.0 * p.lambda / p.mu + log_norm_cdf(z2));
  double value = norm_cdf(z1) + term2;
  return value < 1.0 ? value : 1.0;
}

double ig_sample(const IgParams& p, RngStream& rng) {
  double z = normal_variate(rng);
  double nu = z * z;
  double x1 = p.mu + p.mu * p.mu * nu / (2.0 * p.lambda) -
              (p.mu / (2.0 * p.lambda)) *
                  std::sqrt(4.0 * p.mu * p.lambda * nu + p.mu * p.mu * nu * nu);
  if (x1 <= 0.0) x1 = std::numeric_limits<double>::min();  // round-off guard
  assert(x1 > 0.0);
  double u = rng.uniform01();
  return u <= p.mu / (p.mu + x1) ? x1 : p.mu * p.mu / x1;
}

}  // namespace igb
