#include "crowdbelief/decide.hpp"

#include <algorithm>

#include "crowdbelief/distance.hpp"

namespace crowdbelief {

std::vector<double> pignistic(const MassFunction& m) {
  double conflict = m.conflict();
  if (conflict >= 1.0 - 1e-12) throw AllConflict("all mass on the empty set");
  int n = m.frame().size();
  std::vector<double> betp(n, 0.0);
  for (const auto& [x, v] : m.focals()) {
    if (x == 0) continue;
    double share = v / (static_cast<double>(set_size(x)) * (1.0 - conflict));
    for (int i = 0; i < n; ++i)
      if (x & (FocalSet{1} << i)) betp[i] += share;
  }
  return betp;
}

int decide_pignistic(const MassFunction& m) {
  std::vector<double> betp = pignistic(m);
  return static_cast<int>(std::max_element(betp.begin(), betp.end()) - betp.begin());
}

FocalSet decide_min_distance(const MassFunction& m, std::span<const FocalSet> candidates) {
  if (candidates.empty()) throw EmptyCandidates("no candidate sets");
  FocalSet best = 0;
  double best_d = 0.0;
  bool have = false;
  for (FocalSet c : candidates) {
    if (c == 0) throw EmptyFocal("empty candidate set");
    if (c >= m.frame().subset_count()) throw FrameMismatch("candidate outside the frame");
    double d = jousselme_distance(m, make_categorical(m.frame(), c));
    bool better = !have || d < best_d ||
                  (d == best_d && (set_size(c) < set_size(best) ||
                                   (set_size(c) == set_size(best) && c < best)));
    if (better) {
      best = c;
      best_d = d;
      have = true;
    }
  }
  return best;
}

}  // namespace crowdbelief
