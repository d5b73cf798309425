#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "igbayes/classical_estimators.hpp"
#include "igbayes/rng.hpp"

namespace igb {

enum class IntervalMethod { kHpd, kExact, kBootP, kBootT };
enum class Parameter { kMu, kLambda };

struct IntervalResult {
  double lower = 0.0;
  double upper = 0.0;
  bool upper_unbounded = false;
  IntervalMethod method;
  double level = 0.95;
  // (upper - center) / (center - lower); unset when the interval is
  // unbounded or the center is not strictly inside.
  std::optional<double> shape;
  // MLE for the frequentist intervals, KDE posterior mode for HPD.
  double center = 0.0;
};

struct BootConfig {
  std::size_t b = 1000;    // bootstrap-p replicates
  std::size_t b1 = 1000;   // bootstrap-t outer replicates
  std::size_t b2 = 100;    // bootstrap-t inner replicates

  void validate() const;
};

double shape_factor(double lower, double upper, double center);

// Shortest interval containing a fraction `level` of the draws
// (minimum-width window over the order statistics; ties take the
// leftmost window).
IntervalResult hpd_interval(std::span<const double> draws, double level);

// Pivotal intervals: n*lambda*V ~ chi^2(n-1) for lambda, and the
// Chhikara-Folks t pivot for mu (upper endpoint may be unbounded).
IntervalResult exact_lambda_ci(const SufficientStats& ss, double level);
IntervalResult exact_mu_ci(const SufficientStats& ss, double level);

// Parametric bootstrap intervals, resampling from IG(mu-hat, lambda-hat).
IntervalResult boot_p_ci(const Sample& s, Parameter param, double level,
                         const BootConfig& cfg, RngStream rng);
IntervalResult boot_t_ci(const Sample& s, Parameter param, double level,
                         const BootConfig& cfg, RngStream rng);

// Both parameters from one set of resamples; the harness hot path.
struct IntervalPair {
  IntervalResult mu;
  IntervalResult lambda;
};
IntervalPair boot_p_ci_both(const Sample& s, double level, const BootConfig& cfg,
                            RngStream rng);
IntervalPair boot_t_ci_both(const Sample& s, double level, const BootConfig& cfg,
                            RngStream rng);

enum class Coverage { kCovered, kMissLeft, kMissRight };

Coverage classify_coverage(const IntervalResult& iv, double truth);

}  // namespace igb
