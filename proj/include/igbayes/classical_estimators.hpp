#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace igb {

// An observed sample of strictly positive values, n >= 2.
class Sample {
 public:
  explicit Sample(std::vector<double> values);

  // One value per line; blank lines and '#' comments are skipped.
  static Sample from_file(const std::string& path);

  const std::vector<double>& values() const { return values_; }
  std::size_t n() const { return values_.size(); }

 private:
  std::vector<double> values_;
};

struct SufficientStats {
  std::size_t n;
  double alpha;  // sum(x_i) / 2
  double beta;   // sum(1/x_i) / 2
  double xbar;   // sample mean
  double v;      // sum(1/x_i - 1/xbar) / n
};

enum class Method { kMle, kUmvue, kLindley, kGibbs };

struct PointEstimates {
  double mu_hat;
  double lambda_hat;
  Method method;
};

SufficientStats sufficient_stats(const Sample& s);
// Unvalidated fast path for resampling loops.
SufficientStats sufficient_stats(std::span<const double> values);

PointEstimates mle(const Sample& s);
PointEstimates mle(const SufficientStats& ss);

PointEstimates umvue(const Sample& s);
PointEstimates umvue(const SufficientStats& ss);

}  // namespace igb
