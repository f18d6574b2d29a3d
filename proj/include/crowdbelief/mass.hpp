#pragma once

#include <utility>
#include <vector>

#include "crowdbelief/frame.hpp"

namespace crowdbelief {

// Normalized belief allocation over subsets of one frame. Entries are kept
// sparse, sorted by subset index, strictly positive, and must sum to 1
// within 1e-9. Immutable after construction.
class MassFunction {
 public:
  using Entry = std::pair<FocalSet, double>;

  // Merges duplicate subsets, drops zeros, validates normalization.
  MassFunction(Frame frame, std::vector<Entry> entries);

  const Frame& frame() const { return frame_; }
  const std::vector<Entry>& focals() const { return entries_; }
  double mass(FocalSet x) const;
  double conflict() const { return mass(0); }

  bool is_vacuous() const;
  bool is_dogmatic() const { return mass(frame_.full_set()) == 0.0; }
  bool is_bayesian() const;
  // At most one focal set besides the full frame (vacuous counts).
  bool is_simple_support() const;

  // Canonical text form, entries in subset-index order:
  //   "a:0.6;a|b:0.1;*:0.3"   ("*" = full frame, "!" = empty set)
  std::string to_string() const;
  static MassFunction from_string(const Frame& frame, const std::string& s);

  bool operator==(const MassFunction& o) const {
    return frame_ == o.frame_ && entries_ == o.entries_;
  }

 private:
  Frame frame_;
  std::vector<Entry> entries_;
};

MassFunction make_categorical(const Frame& frame, FocalSet x);
MassFunction make_vacuous(const Frame& frame);
// Mass omega on a proper non-empty subset x, remainder on the frame.
// omega=0 degenerates to the vacuous mass, omega=1 to the categorical one.
MassFunction make_simple_support(const Frame& frame, FocalSet x, double omega);
MassFunction discount(const MassFunction& m, double alpha);

}  // namespace crowdbelief
