#pragma once

#include <span>
#include <vector>

#include "crowdbelief/mass.hpp"

namespace crowdbelief {

// Pignistic probability: each focal mass spread uniformly over its members,
// conflict renormalized away. Throws AllConflict when everything sits on
// the empty set.
std::vector<double> pignistic(const MassFunction& m);

// Index of the betP argmax; ties go to the lowest frame index.
int decide_pignistic(const MassFunction& m);

// Candidate whose categorical mass is closest to m in Jousselme distance;
// ties go to the smaller cardinality, then the lower subset index.
FocalSet decide_min_distance(const MassFunction& m, std::span<const FocalSet> candidates);

}  // namespace crowdbelief
