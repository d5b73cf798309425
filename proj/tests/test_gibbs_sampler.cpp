#include <cmath>
#include <optional>
#include <sstream>
#include <vector>

#include <doctest.h>

#include "igbayes/errors.hpp"
#include "igbayes/gibbs_sampler.hpp"
#include "igbayes/ig_distribution.hpp"
#include "igbayes/special_functions.hpp"
#include "support/quadrature.hpp"
#include "support/stats.hpp"

using namespace igb;

namespace {

// Unnormalized mu conditional, written out independently of the sampler.
double log_g(double mu, double lambda, const SufficientStats& ss,
             const PriorHyper& prior) {
  double n = static_cast<double>(ss.n);
  return (prior.a - 1.0) * std::log(mu) - prior.b * mu -
         ss.alpha * lambda / (mu * mu) + n * lambda / mu;
}

// Rejection-sampler oracle: uniform proposal on (0, upper], envelope from
// a dense grid scan of log g.
std::vector<double> rejection_draws(std::size_t count, double lambda,
                                    const SufficientStats& ss,
                                    const PriorHyper& prior, double upper,
                                    RngStream& rng) {
  double max_log = -1e308;
  for (int i = 1; i <= 200000; ++i) {
    double mu = upper * i / 200000.0;
    max_log = std::max(max_log, log_g(mu, lambda, ss, prior));
  }
  std::vector<double> out;
  out.reserve(count);
  while (out.size() < count) {
    double mu = uniform_variate(0.0, upper, rng);
    if (mu <= 0.0) continue;
    double acc = std::exp(log_g(mu, lambda, ss, prior) - max_log);
    if (rng.uniform01() < acc) out.push_back(mu);
  }
  return out;
}

SufficientStats fixed_stats() {
  Sample s({1.1, 2.3, 0.7, 3.9, 1.8, 2.6, 5.2, 1.4});
  return sufficient_stats(s);
}

}  // namespace

TEST_CASE("lambda conditional parameters on a worked example") {
  // x = (1, 2, 4), mu = 2, prior c = d = 1:
  // shape = 1 + 3/2, rate = 3.5/4 - 3/2 + 0.875 + 1 computed by hand.
  Sample s({1.0, 2.0, 4.0});
  auto ss = sufficient_stats(s);
  PriorHyper prior{1.0, 0.0, 1.0, 1.0};
  auto gp = lambda_conditional_params(2.0, ss, prior);
  CHECK(gp.shape == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(gp.rate == doctest::Approx(1.25).epsilon(1e-13));
  // Vague prior: shape n/2, prior adds nothing to the rate.
  auto gv = lambda_conditional_params(2.0, ss, PriorHyper{});
  CHECK(gv.shape == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(gv.rate == doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("lambda conditional rate equals the quadratic-form identity") {
  // alpha/mu^2 - n/mu + beta == sum (x_i - mu)^2 / (2 mu^2 x_i), all mu.
  auto ss = fixed_stats();
  Sample s({1.1, 2.3, 0.7, 3.9, 1.8, 2.6, 5.2, 1.4});
  for (double mu : {0.4, 1.0, 2.2, 6.0}) {
    double direct = 0.0;
    for (double x : s.values())
      direct += (x - mu) * (x - mu) / (2.0 * mu * mu * x);
    auto gp = lambda_conditional_params(mu, ss, PriorHyper{});
    CHECK(gp.rate == doctest::Approx(direct).epsilon(1e-10));
  }
}

TEST_CASE("mu conditional sampler matches a rejection oracle (KS)") {
  auto ss = fixed_stats();
  struct Case {
    PriorHyper prior;
    std::optional<double> trunc;
  };
  for (const Case& c : {Case{PriorHyper{6.0, 2.0, 5.0, 1.25}, std::nullopt},
                        Case{PriorHyper{0.5, 1.0, 1.0, 1.0}, std::nullopt},
                        Case{PriorHyper{}, 10.0}}) {
    MuConditionalSampler sampler(ss, c.prior, c.trunc, 4096);
    for (double lambda : {0.5, 1.6, 4.0}) {
      RngStream rng(4242, static_cast<std::uint64_t>(lambda * 100));
      std::size_t n_draws = 8000;
      std::vector<double> mine(n_draws);
      for (auto& m : mine) m = sampler.sample(lambda, rng);
      RngStream orng(999, static_cast<std::uint64_t>(lambda * 100));
      auto oracle =
          rejection_draws(n_draws, lambda, ss, c.prior, sampler.upper_bound(), orng);
      CHECK(igb_test::ks_distance_two_sample(std::move(mine), std::move(oracle)) <
            0.03);
    }
  }
}

TEST_CASE("mu conditional mean matches independent quadrature") {
  auto ss = fixed_stats();
  PriorHyper prior{6.0, 2.0, 5.0, 1.25};
  MuConditionalSampler sampler(ss, prior, std::nullopt, 8192);
  for (double lambda : {0.8, 2.5}) {
    double upper = sampler.upper_bound();
    double peak = log_g(ss.xbar, lambda, ss, prior);
    auto g = [&](double mu) { return std::exp(log_g(mu, lambda, ss, prior) - peak); };
    auto mug = [&](double mu) { return mu * g(mu); };
    double want = igb_test::integrate(mug, 1e-9, upper, 1e-12) /
                  igb_test::integrate(g, 1e-9, upper, 1e-12);
    CHECK(sampler.conditional_mean(lambda) == doctest::Approx(want).epsilon(1e-4));

    RngStream rng(31337, 5);
    std::vector<double> draws(20000);
    for (auto& d : draws) d = sampler.sample(lambda, rng);
    CHECK(igb_test::mean(draws) == doctest::Approx(want).epsilon(0.01));
  }
}

TEST_CASE("improper conditional without truncation is rejected") {
  auto ss = fixed_stats();
  RngStream rng(1, 1);
  CHECK_THROWS_AS(sample_mu_conditional(1.0, ss, PriorHyper{}, rng), NumericalError);
  // With truncation it works and respects the bound.
  MuConditionalSampler sampler(ss, PriorHyper{}, 10.0, 2048);
  CHECK(sampler.truncation_active());
  CHECK(sampler.upper_bound() == doctest::Approx(10.0));
  for (int i = 0; i < 1000; ++i) {
    double m = sampler.sample(1.5, rng);
    REQUIRE(m > 0.0);
    REQUIRE(m <= 10.0);
  }
}

TEST_CASE("gibbs chains are reproducible and sized correctly") {
  Sample s({1.1, 2.3, 0.7, 3.9, 1.8, 2.6, 5.2, 1.4});
  GibbsConfig cfg;
  cfg.burn_in = 100;
  cfg.n_keep = 50;
  cfg.thin = 2;
  PriorHyper prior{6.0, 2.0, 5.0, 1.25};
  auto c1 = run_gibbs(s, prior, cfg, RngStream(7, 3));
  auto c2 = run_gibbs(s, prior, cfg, RngStream(7, 3));
  REQUIRE(c1.mu.size() == 50);
  REQUIRE(c1.lambda.size() == 50);
  CHECK(c1.mu == c2.mu);
  CHECK(c1.lambda == c2.lambda);
  CHECK_FALSE(c1.truncation_active);

  auto c3 = run_gibbs(s, prior, cfg, RngStream(7, 4));
  CHECK(c1.mu != c3.mu);
}

TEST_CASE("vague prior defaults to the documented truncation fallback") {
  Sample s({1.1, 2.3, 0.7, 3.9, 1.8, 2.6, 5.2, 1.4});
  GibbsConfig cfg;
  cfg.burn_in = 50;
  cfg.n_keep = 20;
  auto chain = run_gibbs(s, PriorHyper{}, cfg, RngStream(7, 0));
  CHECK(chain.truncation_active);
  double xbar = sufficient_stats(s).xbar;
  CHECK(chain.truncation_bound == doctest::Approx(100.0 * xbar).epsilon(1e-12));
}

TEST_CASE("posterior means match 2-D quadrature of the exact posterior") {
  // Informative prior: the lambda integral is available in closed form,
  // leaving one-dimensional quadratures for E[mu] and E[lambda].
  Sample s({1.1, 2.3, 0.7, 3.9, 1.8, 2.6, 5.2, 1.4});
  auto ss = sufficient_stats(s);
  PriorHyper prior{6.0, 2.0, 5.0, 1.25};
  double n = static_cast<double>(ss.n);
  double shape = prior.c + n / 2.0;
  auto rate = [&](double mu) {
    return ss.alpha / (mu * mu) - n / mu + ss.beta + prior.d;
  };
  auto marg = [&](double mu) {
    return std::exp((prior.a - 1.0) * std::log(mu) - prior.b * mu -
                    shape * std::log(rate(mu)));
  };
  double z = igb_test::integrate(marg, 1e-9, 60.0, 1e-13);
  double e_mu = igb_test::integrate([&](double mu) { return mu * marg(mu); }, 1e-9,
                                    60.0, 1e-13) /
                z;
  double e_lambda = igb_test::integrate(
                        [&](double mu) { return shape / rate(mu) * marg(mu); },
                        1e-9, 60.0, 1e-13) /
                    z;

  GibbsConfig cfg;
  cfg.burn_in = 500;
  cfg.thin = 2;
  cfg.n_keep = 8000;
  auto chain = run_gibbs(s, prior, cfg, RngStream(20240401, 0));
  auto summary = posterior_summary(chain);
  CHECK(igb_test::near_abs(summary.mu.mean, e_mu, 0.05));
  CHECK(igb_test::near_abs(summary.lambda.mean, e_lambda, 0.05));
  CHECK(chain.lag1_autocorr_mu < 0.3);
  CHECK(chain.lag1_autocorr_lambda < 0.3);
}

TEST_CASE("summaries: quantile interpolation and degenerate chains") {
  // 1..5: interpolated quartiles 2.0, 3.0, 4.0.
  std::vector<double> small{5.0, 3.0, 1.0, 4.0, 2.0};
  auto s = summarize_draws(small);
  CHECK(s.mean == doctest::Approx(3.0));
  CHECK(s.q1 == doctest::Approx(2.0));
  CHECK(s.median == doctest::Approx(3.0));
  CHECK(s.q3 == doctest::Approx(4.0));
  CHECK(s.min == 1.0);
  CHECK(s.max == 5.0);
  CHECK(s.mode == doctest::Approx(s.median));  // n < 10: no KDE

  std::vector<double> flat(50, 2.5);
  auto sf = summarize_draws(flat);
  CHECK(sf.variance == 0.0);
  CHECK(sf.mode == 2.5);

  CHECK_THROWS(summarize_draws(std::vector<double>{1.0}));
}

TEST_CASE("chain CSV format") {
  McmcChain chain;
  chain.mu = {1.5, 2.5};
  chain.lambda = {0.5, 0.75};
  std::ostringstream out;
  write_chain_csv(chain, out);
  CHECK(out.str() == "iter,mu,lambda\n1,1.5,0.5\n2,2.5,0.75\n");
}

TEST_CASE("config validation") {
  GibbsConfig cfg;
  cfg.thin = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = GibbsConfig{};
  cfg.n_keep = 1;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = GibbsConfig{};
  cfg.mu_truncation = -1.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  CHECK_NOTHROW(GibbsConfig{}.validate());
}
