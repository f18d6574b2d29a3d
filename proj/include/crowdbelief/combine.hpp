#pragma once

#include <span>
#include <vector>

#include "crowdbelief/mass.hpp"

namespace crowdbelief {

// One uncertain, possibly imprecise piece of evidence: mass `support` on a
// proper non-empty subset, the rest on the frame.
struct SimpleSupport {
  FocalSet focal = 0;
  double support = 0.0;
};

// Element-wise arithmetic mean. Conflict-free when the inputs are.
MassFunction combine_mean(std::span<const MassFunction> ms);

// Unnormalized conjunctive sum; mass may land on the empty set (conflict).
// Pairwise left fold; order-insensitive (see tests).
MassFunction combine_conjunctive(std::span<const MassFunction> ms);

// Conjunctive sum with the conflict removed and the remainder rescaled by
// 1/(1-k). Throws TotalConflict when k >= 1 - 1e-12.
MassFunction combine_dempster(std::span<const MassFunction> ms);

// Which per-source weight enters the cluster product of the LNS rule.
// `diffidence` multiplies 1-support (default; concordant sources reinforce
// each other); `support_product` multiplies the raw supports, which is the
// literal notation some write-ups use.
enum class LnsWeighting { diffidence, support_product };

// Cluster sources by focal set, weight clusters by relative size, build one
// simple support per cluster, then combine those conjunctively.
MassFunction combine_lns(const Frame& frame, std::span<const SimpleSupport> supports,
                         LnsWeighting weighting = LnsWeighting::diffidence);

// Unique factorization of a non-dogmatic mass into simple supports under
// conjunctive combination (commonality transform, log-Moebius over
// supersets). Supports of ~0 are omitted. Throws DogmaticMass when
// mass(full frame) = 0 and NonSeparable when a computed support leaves
// [0,1] by more than 1e-9.
std::vector<SimpleSupport> canonical_decompose(const MassFunction& m);

}  // namespace crowdbelief
