#include "igbayes/intervals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "igbayes/errors.hpp"
#include "igbayes/ig_distribution.hpp"
#include "igbayes/kde.hpp"
#include "igbayes/special_functions.hpp"

namespace igb {
namespace {

// "the (B*p)th value in the ordered list", 1-based, read as ceil(B*p).
std::size_t order_index(std::size_t b, double p) {
  auto idx = static_cast<std::size_t>(std::ceil(static_cast<double>(b) * p));
  if (idx < 1) idx = 1;
  if (idx > b) idx = b;
  return idx - 1;  // 0-based
}

double sd(const std::vector<double>& xs) {
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / (static_cast<double>(xs.size()) - 1.0));
}

void check_level(double level) {
  if (!(level > 0.0 && level < 1.0))
    throw std::domain_error("interval level must lie in (0, 1)");
}

std::optional<double> maybe_shape(double lower, double upper, double center) {
  if (lower < center && center < upper)
    return shape_factor(lower, upper, center);
  return std::nullopt;
}

// One parametric resample of size n with both parameters re-estimated.
PointEstimates resample_estimates(const IgParams& from, std::size_t n,
                                  RngStream& rng) {
  thread_local std::vector<double> xs;
  xs.resize(n);
  for (double& x : xs) x = ig_sample(from, rng);
  SufficientStats ss = sufficient_stats(std::span<const double>(xs));
  if (!(ss.v > 0.0)) throw NumericalError("bootstrap resample degenerate");
  return mle(ss);
}

}  // namespace

void BootConfig::validate() const {
  if (b < 2 || b1 < 2 || b2 < 2)
    throw ConfigError("BootConfig: all replicate counts must be >= 2");
}

double shape_factor(double lower, double upper, double center) {
  return (upper - center) / (center - lower);
}

IntervalResult hpd_interval(std::span<const double> draws, double level) {
  check_level(level);
  std::size_t n = draws.size();
  if (n < 10) throw std::domain_error("hpd_interval: need at least 10 draws");
  if (static_cast<double>(n) * (1.0 - level) < 1.0)
    throw std::domain_error("hpd_interval: too few draws for this level");
  std::vector<double> sorted(draws.begin(), draws.end());
  std::sort(sorted.begin(), sorted.end());
  auto window = static_cast<std::size_t>(
      std::floor(level * static_cast<double>(n)));
  std::size_t best = 0;
  double best_width = sorted[window] - sorted[0];
  for (std::size_t i = 1; i + window < n; ++i) {
    double width = sorted[i + window] - sorted[i];
    if (width < best_width) {
      best_width = width;
      best = i;
    }
  }
  IntervalResult iv;
  iv.lower = sorted[best];
  iv.upper = sorted[best + window];
  iv.method = IntervalMethod::kHpd;
  iv.level = level;
  iv.center = kde_mode(draws);
  iv.shape = maybe_shape(iv.lower, iv.upper, iv.center);
  return iv;
}

IntervalResult exact_lambda_ci(const SufficientStats& ss, double level) {
  check_level(level);
  if (!(ss.v > 0.0)) throw DataError("exact_lambda_ci: degenerate sample (v = 0)");
  double alpha = 1.0 - level;
  int df = static_cast<int>(ss.n) - 1;
  double nv = static_cast<double>(ss.n) * ss.v;
  IntervalResult iv;
  iv.lower = chi2_quantile(alpha / 2.0, df) / nv;
  iv.upper = chi2_quantile(1.0 - alpha / 2.0, df) / nv;
  iv.method = IntervalMethod::kExact;
  iv.level = level;
  iv.center = 1.0 / ss.v;  // MLE
  iv.shape = maybe_shape(iv.lower, iv.upper, iv.center);
  return iv;
}

IntervalResult exact_mu_ci(const SufficientStats& ss, double level) {
  check_level(level);
  double alpha = 1.0 - level;
  int df = static_cast<int>(ss.n) - 1;
  double t = student_t_quantile(1.0 - alpha / 2.0, df);
  double half = std::sqrt(ss.xbar * ss.v / static_cast<double>(df)) * t;
  IntervalResult iv;
  iv.method = IntervalMethod::kExact;
  iv.level = level;
  iv.center = ss.xbar;  // MLE
  iv.lower = ss.xbar / (1.0 + half);
  if (1.0 - half > 0.0) {
    iv.upper = ss.xbar / (1.0 - half);
    iv.shape = maybe_shape(iv.lower, iv.upper, iv.center);
  } else {
    iv.upper = std::numeric_limits<double>::infinity();
    iv.upper_unbounded = true;
  }
  return iv;
}

IntervalPair boot_p_ci_both(const Sample& s, double level, const BootConfig& cfg,
                            RngStream rng) {
  check_level(level);
  cfg.validate();
  if (s.n() < 4) throw DataError("boot_p_ci: need n >= 4");
  PointEstimates fit = mle(s);
  IgParams fitted(fit.mu_hat, fit.lambda_hat);

  std::vector<double> mu_star(cfg.b), lambda_star(cfg.b);
  for (std::size_t i = 0; i < cfg.b; ++i) {
    PointEstimates est = resample_estimates(fitted, s.n(), rng);
    mu_star[i] = est.mu_hat;
    lambda_star[i] = est.lambda_hat;
  }
  std::sort(mu_star.begin(), mu_star.end());
  std::sort(lambda_star.begin(), lambda_star.end());

  double alpha = 1.0 - level;
  std::size_t lo = order_index(cfg.b, alpha / 2.0);
  std::size_t hi = order_index(cfg.b, 1.0 - alpha / 2.0);
  auto make = [&](const std::vector<double>& star, double center) {
    IntervalResult iv;
    iv.lower = star[lo];
    iv.upper = star[hi];
    iv.method = IntervalMethod::kBootP;
    iv.level = level;
    iv.center = center;
    iv.shape = maybe_shape(iv.lower, iv.upper, iv.center);
    return iv;
  };
  return {make(mu_star, fit.mu_hat), make(lambda_star, fit.lambda_hat)};
}

IntervalResult boot_p_ci(const Sample& s, Parameter param, double level,
                         const BootConfig& cfg, RngStream rng) {
  IntervalPair pair = boot_p_ci_both(s, level, cfg, std::move(rng));
  return param == Parameter::kMu ? pair.mu : pair.lambda;
}

IntervalPair boot_t_ci_both(const Sample& s, double level, const BootConfig& cfg,
                            RngStream rng) {
  check_level(level);
  cfg.validate();
  if (s.n() < 4) throw DataError("boot_t_ci: need n >= 4");
  PointEstimates fit = mle(s);
  IgParams fitted(fit.mu_hat, fit.lambda_hat);

  std::vector<double> mu_star(cfg.b1), lambda_star(cfg.b1);
  std::vector<double> t_mu(cfg.b1), t_lambda(cfg.b1);
  for (std::size_t j = 0; j < cfg.b1; ++j) {
    RngStream rep = rng.child(j);
    bool done = false;
    for (std::uint64_t attempt = 0; attempt < 3 && !done; ++attempt) {
      RngStream attempt_rng = rep.child(attempt);
      try {
        PointEstimates star = resample_estimates(fitted, s.n(), attempt_rng);
        IgParams star_params(star.mu_hat, star.lambda_hat);
        std::vector<double> mu_inner(cfg.b2), lambda_inner(cfg.b2);
        for (std::size_t k = 0; k < cfg.b2; ++k) {
          PointEstimates inner = resample_estimates(star_params, s.n(), attempt_rng);
          mu_inner[k] = inner.mu_hat;
          lambda_inner[k] = inner.lambda_hat;
        }
        double se_mu = sd(mu_inner);
        double se_lambda = sd(lambda_inner);
        if (!(se_mu > 0.0) || !(se_lambda > 0.0))
          throw NumericalError("boot_t_ci: inner standard error is zero");
        mu_star[j] = star.mu_hat;
        lambda_star[j] = star.lambda_hat;
        t_mu[j] = (star.mu_hat - fit.mu_hat) / se_mu;
        t_lambda[j] = (star.lambda_hat - fit.lambda_hat) / se_lambda;
        done = true;
      } catch (const NumericalError&) {
        if (attempt == 2) throw;
      }
    }
  }
  // Spread of the first-level estimates (divisor B1 - 1).
  double se_hat_mu = sd(mu_star);
  double se_hat_lambda = sd(lambda_star);
  std::sort(t_mu.begin(), t_mu.end());
  std::sort(t_lambda.begin(), t_lambda.end());

  double alpha = 1.0 - level;
  std::size_t lo = order_index(cfg.b1, alpha / 2.0);
  std::size_t hi = order_index(cfg.b1, 1.0 - alpha / 2.0);
  auto make = [&](const std::vector<double>& t_sorted, double center, double se) {
    IntervalResult iv;
    iv.lower = center - t_sorted[hi] * se;
    iv.upper = center - t_sorted[lo] * se;
    if (iv.lower <= 0.0) iv.lower = std::numeric_limits<double>::min();
    iv.method = IntervalMethod::kBootT;
    iv.level = level;
    iv.center = center;
    iv.shape = maybe_shape(iv.lower, iv.upper, iv.center);
    return iv;
  };
  return {make(t_mu, fit.mu_hat, se_hat_mu),
          make(t_lambda, fit.lambda_hat, se_hat_lambda)};
}

IntervalResult boot_t_ci(const Sample& s, Parameter param, double level,
                         const BootConfig& cfg, RngStream rng) {
  IntervalPair pair = boot_t_ci_both(s, level, cfg, std::move(rng));
  return param == Parameter::kMu ? pair.mu : pair.lambda;
}

Coverage classify_coverage(const IntervalResult& iv, double truth) {
  if (truth < iv.lower) return Coverage::kMissLeft;
  if (!iv.upper_unbounded && truth > iv.upper) return Coverage::kMissRight;
  return Coverage::kCovered;
}

}  // namespace igb
