#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "crowdbelief/errors.hpp"

namespace crowdbelief {

// Linear-interpolation quantile (R's type 7), the single convention used
// everywhere a quantile is needed (T0 estimation, IQR bands, bootstrap CIs).
inline double quantile_type7(std::vector<double> xs, double q) {
  if (xs.empty()) throw EmptyInput("quantile of empty sample");
  std::sort(xs.begin(), xs.end());
  if (xs.size() == 1) return xs[0];
  double h = q * static_cast<double>(xs.size() - 1);
  auto lo = static_cast<std::size_t>(std::floor(h));
  auto hi = std::min(lo + 1, xs.size() - 1);
  return xs[lo] + (h - static_cast<double>(lo)) * (xs[hi] - xs[lo]);
}

}  // namespace crowdbelief
