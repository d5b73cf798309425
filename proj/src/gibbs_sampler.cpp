#include "igbayes/gibbs_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "igbayes/errors.hpp"
#include "igbayes/kde.hpp"
#include "igbayes/special_functions.hpp"

namespace igb {
namespace {

double sorted_quantile(const std::vector<double>& sorted, double p) {
  double pos = p * (static_cast<double>(sorted.size()) - 1.0);
  std::size_t i = static_cast<std::size_t>(pos);
  if (i + 1 >= sorted.size()) return sorted.back();
  double frac = pos - static_cast<double>(i);
  return sorted[i] + frac * (sorted[i + 1] - sorted[i]);
}

double lag1_autocorr(const std::vector<double>& xs) {
  std::size_t n = xs.size();
  if (n < 3) return 0.0;
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(n);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    den += (xs[i] - mean) * (xs[i] - mean);
    if (i + 1 < n) num += (xs[i] - mean) * (xs[i + 1] - mean);
  }
  return den > 0.0 ? num / den : 0.0;
}

}  // namespace

void GibbsConfig::validate() const {
  if (thin < 1) throw ConfigError("GibbsConfig: thin must be >= 1");
  if (n_keep < 2) throw ConfigError("GibbsConfig: n_keep must be >= 2");
  if (grid_points < 16) throw ConfigError("GibbsConfig: grid_points must be >= 16");
  if (mu_truncation && !(*mu_truncation > 0.0))
    throw ConfigError("GibbsConfig: mu_truncation must be positive");
}

GammaParams lambda_conditional_params(double mu, const SufficientStats& ss,
                                      const PriorHyper& prior) {
  if (!(mu > 0.0))
    throw std::domain_error("lambda_conditional_params: mu must be positive");
  double n = static_cast<double>(ss.n);
  double shape = prior.c + n / 2.0;
  double rate = ss.alpha / (mu * mu) - n / mu + ss.beta + prior.d;
  if (!(rate > 0.0))
    throw NumericalError("lambda_conditional_params: nonpositive rate (degenerate sample)");
  return {shape, rate};
}

MuConditionalSampler::MuConditionalSampler(const SufficientStats& ss,
                                           const PriorHyper& prior,
                                           std::optional<double> truncation,
                                           std::size_t grid_points) {
  prior.validate();
  if (grid_points < 16)
    throw std::domain_error("MuConditionalSampler: grid_points must be >= 16");
  double xb = ss.xbar;
  double upper;
  if (truncation) {
    if (!(*truncation > 0.0))
      throw std::domain_error("MuConditionalSampler: truncation must be positive");
    upper = *truncation;
    truncation_active_ = (prior.b == 0.0);
  } else if (prior.b == 0.0) {
    // g(mu) tends to a positive constant as mu grows: the conditional is
    // improper and a hard truncation bound must be supplied.
    throw NumericalError(
        "mu conditional is improper under prior b = 0; a truncation bound is required");
  } else {
    // Upper cutoff valid uniformly in lambda: beyond 2*xbar the
    // lambda-dependent part of log g only lowers the tail relative to the
    // peak near xbar, so a cutoff 60 nats below the lambda-free envelope
    // at xbar is negligible for every lambda >= 0.
    double ref = (prior.a - 1.0) * std::log(xb) - prior.b * xb;
    upper = std::max(4.0 * xb, (prior.a + 10.0) / prior.b);
    while ((prior.a - 1.0) * std::log(upper) - prior.b * upper > ref - 60.0)
      upper *= 2.0;
  }

  double eps = 1e-12 * xb;
  if (upper <= eps)
    throw std::domain_error("MuConditionalSampler: truncation below grid origin");
  grid_.resize(grid_points);
  base_log_.resize(grid_points);
  coef_.resize(grid_points);
  density_.resize(grid_points);
  cum_.resize(grid_points);
  double t_lo = std::log(eps);
  double t_hi = std::log(upper);
  double n = static_cast<double>(ss.n);
  for (std::size_t i = 0; i < grid_points; ++i) {
    double t = t_lo + (t_hi - t_lo) * static_cast<double>(i) /
                          static_cast<double>(grid_points - 1);
    double mu = std::exp(t);
    grid_[i] = mu;
    base_log_[i] = (prior.a - 1.0) * t - prior.b * mu;
    coef_[i] = n / mu - ss.alpha / (mu * mu);
  }
}

void MuConditionalSampler::fill_weights(double lambda) const {
  std::size_t m = grid_.size();
  double max_log = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i) {
    double w = base_log_[i] + lambda * coef_[i];
    density_[i] = w;
    if (w > max_log) max_log = w;
  }
  for (std::size_t i = 0; i < m; ++i) density_[i] = std::exp(density_[i] - max_log);
  cum_[0] = 0.0;
  for (std::size_t i = 1; i < m; ++i)
    cum_[i] = cum_[i - 1] +
              0.5 * (density_[i] + density_[i - 1]) * (grid_[i] - grid_[i - 1]);
}

double MuConditionalSampler::total_mass(double lambda) const {
  if (!(lambda > 0.0))
    throw std::domain_error("MuConditionalSampler: lambda must be positive");
  fill_weights(lambda);
  return cum_.back();  // relative to max g rescaled to 1
}

double MuConditionalSampler::conditional_mean(double lambda) const {
  if (!(lambda > 0.0))
    throw std::domain_error("MuConditionalSampler: lambda must be positive");
  fill_weights(lambda);
  double num = 0.0;
  for (std::size_t i = 1; i < grid_.size(); ++i)
    num += 0.5 * (grid_[i] * density_[i] + grid_[i - 1] * density_[i - 1]) *
           (grid_[i] - grid_[i - 1]);
  return num / cum_.back();
}

double MuConditionalSampler::sample(double lambda, RngStream& rng) const {
  if (!(lambda > 0.0))
    throw std::domain_error("MuConditionalSampler: lambda must be positive");
  fill_weights(lambda);
  double total = cum_.back();
  if (!(total > 0.0) || !std::isfinite(total))
    throw NumericalError("mu conditional: degenerate quadrature mass");
  double u = rng.uniform01() * total;
  auto it = std::upper_bound(cum_.begin(), cum_.end(), u);
  std::size_t i = static_cast<std::size_t>(it - cum_.begin());
  if (i == 0) return grid_.front();
  if (i >= cum_.size()) i = cum_.size() - 1;
  // Invert the trapezoid cell exactly: density is linear across the cell.
  double r = u - cum_[i - 1];
  double width = grid_[i] - grid_[i - 1];
  double f0 = density_[i - 1];
  double slope = (density_[i] - f0) / width;
  double s;
  if (std::fabs(slope) * width < 1e-12 * std::max(f0, 1e-300)) {
    s = f0 > 0.0 ? r / f0 : 0.5 * width;
  } else {
    double disc = f0 * f0 + 2.0 * slope * r;
    s = (std::sqrt(std::max(disc, 0.0)) - f0) / slope;
  }
  s = std::clamp(s, 0.0, width);
  return grid_[i - 1] + s;
}

double sample_mu_conditional(double lambda, const SufficientStats& ss,
                             const PriorHyper& prior, RngStream& rng,
                             std::optional<double> truncation,
                             std::size_t grid_points) {
  MuConditionalSampler sampler(ss, prior, truncation, grid_points);
  return sampler.sample(lambda, rng);
}

McmcChain run_gibbs(const Sample& s, const PriorHyper& prior,
                    const GibbsConfig& cfg, RngStream rng) {
  cfg.validate();
  prior.validate();
  SufficientStats ss = sufficient_stats(s);

  std::optional<double> truncation = cfg.mu_truncation;
  if (!truncation && prior.b == 0.0) truncation = 100.0 * ss.xbar;
  MuConditionalSampler mu_sampler(ss, prior, truncation, cfg.grid_points);

  IgParams state = cfg.init ? *cfg.init : [&] {
    PointEstimates m = mle(ss);
    return IgParams(m.mu_hat, m.lambda_hat);
  }();

  McmcChain chain;
  chain.config = cfg;
  chain.truncation_active = mu_sampler.truncation_active();
  chain.truncation_bound = mu_sampler.upper_bound();
  chain.mu.reserve(cfg.n_keep);
  chain.lambda.reserve(cfg.n_keep);

  double mu = state.mu;
  double lambda = state.lambda;
  std::size_t total = cfg.burn_in + cfg.thin * cfg.n_keep;
  for (std::size_t it = 0; it < total; ++it) {
    GammaParams gp = lambda_conditional_params(mu, ss, prior);
    lambda = gamma_variate(gp.shape, gp.rate, rng);
    mu = mu_sampler.sample(lambda, rng);
    if (it >= cfg.burn_in && (it - cfg.burn_in) % cfg.thin == cfg.thin - 1) {
      chain.mu.push_back(mu);
      chain.lambda.push_back(lambda);
    }
  }
  chain.lag1_autocorr_mu = lag1_autocorr(chain.mu);
  chain.lag1_autocorr_lambda = lag1_autocorr(chain.lambda);
  return chain;
}

PosteriorSummary summarize_draws(std::span<const double> draws) {
  if (draws.size() < 2)
    throw std::domain_error("summarize_draws: need at least 2 draws");
  std::size_t n = draws.size();
  double mean = 0.0;
  for (double x : draws) mean += x;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double x : draws) ss += (x - mean) * (x - mean);
  double variance = ss / (static_cast<double>(n) - 1.0);

  std::vector<double> sorted(draws.begin(), draws.end());
  std::sort(sorted.begin(), sorted.end());
  PosteriorSummary out;
  out.mean = mean;
  out.variance = variance;
  out.q1 = sorted_quantile(sorted, 0.25);
  out.median = sorted_quantile(sorted, 0.5);
  out.q3 = sorted_quantile(sorted, 0.75);
  out.min = sorted.front();
  out.max = sorted.back();
  if (variance == 0.0 || n < 10)
    out.mode = out.median;
  else
    out.mode = kde_mode(draws);
  return out;
}

ChainSummary posterior_summary(const McmcChain& chain) {
  return {summarize_draws(chain.mu), summarize_draws(chain.lambda)};
}

void write_chain_csv(const McmcChain& chain, std::ostream& out) {
  out << "iter,mu,lambda\n";
  for (std::size_t i = 0; i < chain.mu.size(); ++i)
    out << (i + 1) << ',' << chain.mu[i] << ',' << chain.lambda[i] << '\n';
}

}  // namespace igb
