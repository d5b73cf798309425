#include "igbayes/classical_estimators.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "igbayes/errors.hpp"

namespace igb {
namespace {

// Kahan-compensated sum of f(x_i); the v statistic cancels badly when
// the data are nearly constant.
template <typename F>
double compensated_sum(std::span<const double> xs, F f) {
  double sum = 0.0, comp = 0.0;
  for (double x : xs) {
    double y = f(x) - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

}  // namespace

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2) throw DataError("Sample: need at least 2 observations");
  for (double x : values_)
    if (!(x > 0.0) || !std::isfinite(x))
      throw DataError("Sample: all observations must be positive and finite");
}

Sample Sample::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open data file: " + path);
  std::vector<double> values;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double x;
    while (ls >> x) values.push_back(x);
    if (!ls.eof()) {
      std::string junk;
      ls.clear();
      ls >> junk;
      throw DataError(path + ":" + std::to_string(lineno) +
                      ": unparseable token '" + junk + "'");
    }
  }
  return Sample(std::move(values));
}

SufficientStats sufficient_stats(std::span<const double> xs) {
  SufficientStats ss;
  ss.n = xs.size();
  double sum = compensated_sum(xs, [](double x) { return x; });
  ss.alpha = sum / 2.0;
  ss.beta = compensated_sum(xs, [](double x) { return 1.0 / x; }) / 2.0;
  ss.xbar = sum / static_cast<double>(ss.n);
  double inv_xbar = 1.0 / ss.xbar;
  double diff = compensated_sum(xs, [inv_xbar](double x) { return 1.0 / x - inv_xbar; });
  ss.v = std::max(diff, 0.0) / static_cast<double>(ss.n);
  return ss;
}

SufficientStats sufficient_stats(const Sample& s) {
  return sufficient_stats(std::span<const double>(s.values()));
}

PointEstimates mle(const SufficientStats& ss) {
  if (!(ss.v > 0.0))
    throw DataError("mle: degenerate sample (all values equal), lambda-hat infinite");
  return {ss.xbar, 1.0 / ss.v, Method::kMle};
}

PointEstimates mle(const Sample& s) { return mle(sufficient_stats(s)); }

PointEstimates umvue(const SufficientStats& ss) {
  if (ss.n < 4)
    throw DataError("umvue: need n >= 4 for a nondegenerate lambda estimate");
  if (!(ss.v > 0.0)) throw DataError("umvue: degenerate sample (all values equal)");
  double lambda_tilde =
      (static_cast<double>(ss.n) - 3.0) / (static_cast<double>(ss.n) * ss.v);
  return {ss.xbar, lambda_tilde, Method::kUmvue};
}

PointEstimates umvue(const Sample& s) { return umvue(sufficient_stats(s)); }

}  // namespace igb
