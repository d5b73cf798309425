#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace igb {

struct KdePoint {
  double x;
  double density;
};

// Silverman's rule: 0.9 * min(sd, IQR/1.34) * N^(-1/5).
double silverman_bandwidth(std::span<const double> draws);

// Gaussian KDE evaluated on a uniform grid over [min - 3h, max + 3h].
std::vector<KdePoint> kde_curve(std::span<const double> draws,
                                std::size_t grid_points);

// Grid maximizer of the KDE on a 512-point grid.
double kde_mode(std::span<const double> draws);

}  // namespace igb
