#include <cmath>
#include <cstdio>
#include <fstream>
#include <vector>

#include <doctest.h>

#include "igbayes/classical_estimators.hpp"
#include "igbayes/errors.hpp"
#include "igbayes/ig_distribution.hpp"
#include "igbayes/special_functions.hpp"
#include "support/stats.hpp"

using namespace igb;

TEST_CASE("sufficient statistics on a worked example") {
  // x = (1, 2, 4): alpha = 7/2, beta = (1 + 1/2 + 1/4)/2, xbar = 7/3,
  // v = (7/4 - 9/7)/3 computed by hand.
  Sample s({1.0, 2.0, 4.0});
  auto ss = sufficient_stats(s);
  CHECK(ss.n == 3);
  CHECK(ss.alpha == doctest::Approx(3.5).epsilon(1e-15));
  CHECK(ss.beta == doctest::Approx(0.875).epsilon(1e-15));
  CHECK(ss.xbar == doctest::Approx(7.0 / 3.0).epsilon(1e-15));
  CHECK(ss.v == doctest::Approx((1.75 - 9.0 / 7.0) / 3.0).epsilon(1e-13));
}

TEST_CASE("MLE and UMVUE on a worked example") {
  // x = (1, 2, 3, 4): sum(1/x_i - 1/xbar) = 25/12 - 8/5 = 29/60.
  Sample s({1.0, 2.0, 3.0, 4.0});
  auto m = mle(s);
  CHECK(m.mu_hat == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(m.lambda_hat == doctest::Approx(4.0 / (29.0 / 60.0)).epsilon(1e-12));
  CHECK(m.method == Method::kMle);
  auto u = umvue(s);
  CHECK(u.mu_hat == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(u.lambda_hat == doctest::Approx(1.0 / (29.0 / 60.0)).epsilon(1e-12));
  CHECK(u.method == Method::kUmvue);
}

TEST_CASE("UMVUE/MLE lambda ratio is exactly (n-3)/n") {
  RngStream rng(5150, 0);
  IgParams p(2.0, 7.0);
  for (std::size_t n : {4, 10, 25, 60}) {
    std::vector<double> xs(n);
    for (auto& x : xs) x = ig_sample(p, rng);
    Sample s(xs);
    double ratio = umvue(s).lambda_hat / mle(s).lambda_hat;
    CHECK(ratio == doctest::Approx((double)(n - 3) / (double)n).epsilon(1e-14));
  }
}

TEST_CASE("scale equivariance: data scaled by k scales both estimates by k") {
  std::vector<double> xs{0.8, 1.9, 2.4, 5.5, 3.1};
  Sample s(xs);
  double k = 7.25;
  for (auto& x : xs) x *= k;
  Sample sk(xs);
  CHECK(mle(sk).mu_hat == doctest::Approx(k * mle(s).mu_hat).epsilon(1e-12));
  CHECK(mle(sk).lambda_hat == doctest::Approx(k * mle(s).lambda_hat).epsilon(1e-12));
  CHECK(umvue(sk).lambda_hat ==
        doctest::Approx(k * umvue(s).lambda_hat).epsilon(1e-12));
}

TEST_CASE("UMVUE of lambda is unbiased, MLE is biased by n/(n-3)") {
  RngStream rng(31415, 0);
  IgParams p(3.0, 4.0);
  std::size_t reps = 5000, n = 20;
  std::vector<double> mles(reps), umvues(reps), pivots(reps);
  std::vector<double> xs(n);
  for (std::size_t r = 0; r < reps; ++r) {
    for (auto& x : xs) x = ig_sample(p, rng);
    Sample s(xs);
    auto ss = sufficient_stats(s);
    mles[r] = mle(ss).lambda_hat;
    umvues[r] = umvue(ss).lambda_hat;
    pivots[r] = (double)n * p.lambda * ss.v;
  }
  // E[lambda-tilde] = lambda. SE of the mean of 1/chi2-type variables is
  // roughly lambda * sqrt(2/(n-5)) / sqrt(reps) ~ 0.02; use 4 SE.
  CHECK(igb_test::mean(umvues) == doctest::Approx(4.0).epsilon(0.03));
  CHECK(igb_test::mean(mles) ==
        doctest::Approx(4.0 * (double)n / (double)(n - 3)).epsilon(0.03));
  // The pivot n*lambda*V is chi-squared with n-1 degrees of freedom.
  CHECK(igb_test::mean(pivots) == doctest::Approx((double)(n - 1)).epsilon(0.01));
  double d = igb_test::ks_distance(std::move(pivots), [n](double x) {
    return chi2_cdf(x, (int)n - 1);
  });
  CHECK(d < 0.025);
}

TEST_CASE("degenerate and invalid samples are rejected") {
  CHECK_THROWS_AS(Sample({1.0}), DataError);
  CHECK_THROWS_AS(Sample({1.0, -2.0, 3.0}), DataError);
  CHECK_THROWS_AS(Sample({1.0, 0.0}), DataError);
  CHECK_THROWS_AS(Sample({1.0, std::nan("")}), DataError);
  // All values equal: V = 0, lambda MLE undefined.
  Sample flat({2.0, 2.0, 2.0, 2.0});
  CHECK_THROWS_AS(mle(flat), DataError);
  // UMVUE needs n >= 4.
  CHECK_THROWS_AS(umvue(Sample({1.0, 2.0, 3.0})), DataError);
}

TEST_CASE("from_file parses values, comments, and blank lines") {
  std::string path = "test_sample_input.txt";
  {
    std::ofstream f(path);
    f << "# repair data\n1.5\n\n2.5  # trailing comment\n0.75\n4.0\n";
  }
  Sample s = Sample::from_file(path);
  CHECK(s.n() == 4);
  CHECK(s.values()[0] == 1.5);
  CHECK(s.values()[2] == 0.75);
  {
    std::ofstream f(path);
    f << "1.5\nnot-a-number\n";
  }
  CHECK_THROWS_AS(Sample::from_file(path), DataError);
  {
    std::ofstream f(path);
    f << "1.5\n-3.0\n";
  }
  CHECK_THROWS_AS(Sample::from_file(path), DataError);
  CHECK_THROWS_AS(Sample::from_file("no_such_file_anywhere.txt"), DataError);
  std::remove(path.c_str());
}

TEST_CASE("repair-times dataset point estimates") {
  Sample s = Sample::from_file(std::string(IGB_DATA_DIR) + "/repair_times.txt");
  CHECK(s.n() == 46);
  auto m = mle(s);
  CHECK(igb_test::near_abs(m.mu_hat, 3.6065, 5e-4));
  CHECK(igb_test::near_abs(m.lambda_hat, 1.6589, 5e-4));
  auto u = umvue(s);
  CHECK(igb_test::near_abs(u.lambda_hat, 1.5507, 5e-4));
}
