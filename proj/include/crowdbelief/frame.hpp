#pragma once

#include <bit>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "crowdbelief/errors.hpp"

namespace crowdbelief {

// Subset of a frame's labels encoded as a bit index: bit i set <=> label i in
// the set. 0 is the empty set, (1 << M) - 1 is the whole frame.
using FocalSet = std::uint32_t;

inline int set_size(FocalSet x) { return std::popcount(x); }

inline constexpr int kMaxFrameSize = 20;

// Ordered set of answer labels for one question. Cheap to copy (shared,
// immutable payload); equality compares label vectors, not identity.
class Frame {
 public:
  explicit Frame(std::vector<std::string> labels);

  int size() const { return static_cast<int>(labels_->size()); }
  const std::string& label(int i) const { return (*labels_)[i]; }
  const std::vector<std::string>& labels() const { return *labels_; }
  FocalSet full_set() const { return (FocalSet{1} << size()) - 1; }
  std::uint32_t subset_count() const { return FocalSet{1} << size(); }

  // -1 when the label is not part of the frame.
  int index_of(const std::string& label) const;

  // Joins member labels with '|' in frame order; "*" for the full frame,
  // "!" for the empty set.
  std::string set_to_string(FocalSet x) const;
  // Inverse of set_to_string. Rejects unknown and duplicated labels.
  FocalSet set_from_string(const std::string& s) const;

  bool operator==(const Frame& o) const { return labels_ == o.labels_ || *labels_ == *o.labels_; }
  bool operator!=(const Frame& o) const { return !(*this == o); }

 private:
  std::shared_ptr<const std::vector<std::string>> labels_;
};

}  // namespace crowdbelief
