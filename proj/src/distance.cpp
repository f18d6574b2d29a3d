#include "crowdbelief/distance.hpp"

#include <cmath>
#include <vector>

namespace crowdbelief {

double jaccard_index(FocalSet x, FocalSet y) {
  if (x == 0 && y == 0) return 1.0;
  if (x == 0 || y == 0) return 0.0;
  return static_cast<double>(set_size(x & y)) / static_cast<double>(set_size(x | y));
}

double jousselme_distance(const MassFunction& m1, const MassFunction& m2) {
  if (m1.frame() != m2.frame()) throw FrameMismatch("jousselme_distance needs a common frame");
  // Difference vector over the union of touched subsets only.
  std::vector<std::pair<FocalSet, double>> diff;
  diff.reserve(m1.focals().size() + m2.focals().size());
  auto a = m1.focals().begin(), ae = m1.focals().end();
  auto b = m2.focals().begin(), be = m2.focals().end();
  while (a != ae || b != be) {
    if (b == be || (a != ae && a->first < b->first)) {
      diff.emplace_back(a->first, a->second);
      ++a;
    } else if (a == ae || b->first < a->first) {
      diff.emplace_back(b->first, -b->second);
      ++b;
    } else {
      double d = a->second - b->second;
      if (d != 0.0) diff.emplace_back(a->first, d);
      ++a;
      ++b;
    }
  }
  double quad = 0.0;
  for (const auto& [x, dx] : diff)
    for (const auto& [y, dy] : diff) quad += dx * dy * jaccard_index(x, y);
  return std::sqrt(std::max(0.0, 0.5 * quad));
}

}  // namespace crowdbelief
