#include "crowdbelief/combine.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "crowdbelief/csv.hpp"

namespace crowdbelief {

namespace {

void check_common_frame(std::span<const MassFunction> ms, const char* op) {
  if (ms.empty()) throw EmptyInput(std::string(op) + " needs at least one mass");
  for (std::size_t i = 1; i < ms.size(); ++i)
    if (ms[i].frame() != ms[0].frame()) throw FrameMismatch(std::string(op) + " needs a common frame");
}

}  // namespace

MassFunction combine_mean(std::span<const MassFunction> ms) {
  check_common_frame(ms, "combine_mean");
  std::map<FocalSet, double> acc;
  for (const auto& m : ms)
    for (const auto& [x, v] : m.focals()) acc[x] += v;
  std::vector<MassFunction::Entry> entries;
  entries.reserve(acc.size());
  double k = static_cast<double>(ms.size());
  for (const auto& [x, v] : acc) entries.emplace_back(x, v / k);
  return MassFunction(ms[0].frame(), std::move(entries));
}

MassFunction combine_conjunctive(std::span<const MassFunction> ms) {
  check_common_frame(ms, "combine_conjunctive");
  std::map<FocalSet, double> acc;
  for (const auto& [x, v] : ms[0].focals()) acc[x] = v;
  for (std::size_t i = 1; i < ms.size(); ++i) {
    std::map<FocalSet, double> next;
    for (const auto& [x, vx] : acc)
      for (const auto& [y, vy] : ms[i].focals()) next[x & y] += vx * vy;
    acc = std::move(next);
  }
  std::vector<MassFunction::Entry> entries(acc.begin(), acc.end());
  return MassFunction(ms[0].frame(), std::move(entries));
}

MassFunction combine_dempster(std::span<const MassFunction> ms) {
  MassFunction conj = combine_conjunctive(ms);
  double k = conj.conflict();
  if (k >= 1.0 - 1e-12)
    throw TotalConflict("conflict " + format_double(k) + " leaves nothing to renormalize");
  std::vector<MassFunction::Entry> entries;
  entries.reserve(conj.focals().size());
  for (const auto& [x, v] : conj.focals())
    if (x != 0) entries.emplace_back(x, v / (1.0 - k));
  return MassFunction(conj.frame(), std::move(entries));
}

MassFunction combine_lns(const Frame& frame, std::span<const SimpleSupport> supports,
                         LnsWeighting weighting) {
  if (supports.empty()) throw EmptyInput("combine_lns needs at least one support");
  std::map<FocalSet, std::pair<int, double>> clusters;  // focal -> (count, weight product)
  for (const auto& s : supports) {
    if (s.focal == 0) throw EmptyFocal("simple support on the empty set");
    if (s.focal >= frame.subset_count() || s.focal == frame.full_set())
      throw FrameMismatch("support focal not a proper subset of the frame");
    if (s.support < 0.0 || s.support > 1.0)
      throw AlphaOutOfRange("support " + format_double(s.support) + " outside [0,1]");
    auto& [count, prod] = clusters[s.focal];
    if (count == 0) prod = 1.0;
    ++count;
    prod *= (weighting == LnsWeighting::diffidence) ? 1.0 - s.support : s.support;
  }
  double total = static_cast<double>(supports.size());
  std::vector<MassFunction> cluster_masses;
  cluster_masses.reserve(clusters.size());
  for (const auto& [focal, cw] : clusters) {
    double alpha = static_cast<double>(cw.first) / total;
    double mass_on_focal = (weighting == LnsWeighting::diffidence)
                               ? alpha * (1.0 - cw.second)
                               : 1.0 - alpha * (1.0 - cw.second);
    if (mass_on_focal <= 0.0) continue;  // all-zero-support cluster contributes nothing
    cluster_masses.push_back(make_simple_support(frame, focal, mass_on_focal));
  }
  if (cluster_masses.empty()) return make_vacuous(frame);
  return combine_conjunctive(cluster_masses);
}

std::vector<SimpleSupport> canonical_decompose(const MassFunction& m) {
  const Frame& frame = m.frame();
  FocalSet full = frame.full_set();
  if (m.mass(full) == 0.0) throw DogmaticMass("decomposition needs mass on the full frame");
  std::uint32_t n = frame.subset_count();
  int bits = frame.size();

  // Commonality q(A) = sum of m(B) over supersets B of A, dense over 2^M.
  std::vector<double> lnq(n, 0.0);
  for (const auto& [x, v] : m.focals()) lnq[x] = v;
  for (int i = 0; i < bits; ++i) {
    FocalSet bit = FocalSet{1} << i;
    for (std::uint32_t a = 0; a < n; ++a)
      if (!(a & bit)) lnq[a] += lnq[a | bit];
  }
  // q > 0 is guaranteed by the mass on the full frame.
  for (auto& q : lnq) q = std::log(q);
  // Moebius inversion over supersets: g(A) = sum_{B>=A} (-1)^{|B\A|} ln q(B);
  // the simple-support weight is w(A) = exp(-g(A)), support 1-w.
  for (int i = 0; i < bits; ++i) {
    FocalSet bit = FocalSet{1} << i;
    for (std::uint32_t a = 0; a < n; ++a)
      if (!(a & bit)) lnq[a] -= lnq[a | bit];
  }

  constexpr double kTol = 1e-9;
  double w_empty = std::exp(-lnq[0]);
  if (std::abs(w_empty - 1.0) > kTol)
    throw NonSeparable("empty-set weight " + format_double(w_empty) + " != 1");
  std::vector<SimpleSupport> out;
  for (std::uint32_t a = 1; a + 1 < n; ++a) {  // proper non-empty subsets
    double support = 1.0 - std::exp(-lnq[a]);
    if (support < -kTol || support > 1.0 + kTol)
      throw NonSeparable("support " + format_double(support) + " on subset " +
                         frame.set_to_string(a) + " outside [0,1]");
    if (support > kTol) out.push_back({a, std::min(support, 1.0)});
  }
  return out;
}

}  // namespace crowdbelief
