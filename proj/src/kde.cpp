#include "igbayes/kde.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "igbayes/errors.hpp"

namespace igb {
namespace {

double sorted_quantile(const std::vector<double>& sorted, double p) {
  double pos = p * (static_cast<double>(sorted.size()) - 1.0);
  std::size_t i = static_cast<std::size_t>(pos);
  if (i + 1 >= sorted.size()) return sorted.back();
  double frac = pos - static_cast<double>(i);
  return sorted[i] + frac * (sorted[i + 1] - sorted[i]);
}

}  // namespace

double silverman_bandwidth(std::span<const double> draws) {
  std::size_t n = draws.size();
  if (n < 10) throw std::domain_error("silverman_bandwidth: need at least 10 draws");
  double mean = 0.0;
  for (double x : draws) mean += x;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double x : draws) ss += (x - mean) * (x - mean);
  double sd = std::sqrt(ss / (static_cast<double>(n) - 1.0));
  std::vector<double> sorted(draws.begin(), draws.end());
  std::sort(sorted.begin(), sorted.end());
  double iqr = sorted_quantile(sorted, 0.75) - sorted_quantile(sorted, 0.25);
  double spread = std::min(sd, iqr / 1.34);
  if (!(spread > 0.0))
    throw NumericalError("silverman_bandwidth: zero-variance draws");
  return 0.9 * spread * std::pow(static_cast<double>(n), -0.2);
}

std::vector<KdePoint> kde_curve(std::span<const double> draws,
                                std::size_t grid_points) {
  double h = silverman_bandwidth(draws);
  auto [lo_it, hi_it] = std::minmax_element(draws.begin(), draws.end());
  double lo = *lo_it - 3.0 * h;
  double hi = *hi_it + 3.0 * h;
  std::vector<KdePoint> curve(grid_points);
  double inv_h = 1.0 / h;
  double norm = inv_h / (std::sqrt(2.0 * M_PI) * static_cast<double>(draws.size()));
  for (std::size_t i = 0; i < grid_points; ++i) {
    double x = lo + (hi - lo) * static_cast<double>(i) /
                        static_cast<double>(grid_points - 1);
    double sum = 0.0;
    for (double d : draws) {
      double z = (x - d) * inv_h;
      sum += std::exp(-0.5 * z * z);
    }
    curve[i] = {x, norm * sum};
  }
  return curve;
}

double kde_mode(std::span<const double> draws) {
  auto curve = kde_curve(draws, 512);
  auto best = std::max_element(curve.begin(), curve.end(),
                               [](const KdePoint& p, const KdePoint& q) {
                                 return p.density < q.density;
                               });
  return best->x;
}

}  // namespace igb
