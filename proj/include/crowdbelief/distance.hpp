#pragma once

#include "crowdbelief/mass.hpp"

namespace crowdbelief {

// Jaccard similarity |X&Y|/|X|Y| with the conventions D(0,0)=1 and
// D(X,0)=0 for X!=0.
double jaccard_index(FocalSet x, FocalSet y);

// Jousselme distance in [0,1]: sqrt(0.5 * (m1-m2)^T D (m1-m2)), evaluated
// only over the subsets either mass actually touches (never a dense 2^M
// matrix).
double jousselme_distance(const MassFunction& m1, const MassFunction& m2);

}  // namespace crowdbelief
