#include "crowdbelief/frame.hpp"

#include <algorithm>
#include <unordered_set>

#include "crowdbelief/csv.hpp"

namespace crowdbelief {

namespace {

bool valid_label(const std::string& s) {
  if (s.empty() || s == "*" || s == "!") return false;
  for (char c : s) {
    if (c == ',' || c == ';' || c == ':' || c == '|' || std::isspace(static_cast<unsigned char>(c)))
      return false;
  }
  return true;
}

}  // namespace

Frame::Frame(std::vector<std::string> labels) {
  if (labels.empty()) throw SchemaError("frame needs at least one label");
  if (labels.size() > kMaxFrameSize)
    throw SchemaError("frame has " + std::to_string(labels.size()) + " labels, cap is " +
                      std::to_string(kMaxFrameSize));
  std::unordered_set<std::string> seen;
  for (const auto& l : labels) {
    if (!valid_label(l))
      throw SchemaError("invalid frame label '" + l + "' (empty, reserved, or contains ,;:|* or whitespace)");
    if (!seen.insert(l).second) throw SchemaError("duplicate frame label '" + l + "'");
  }
  labels_ = std::make_shared<const std::vector<std::string>>(std::move(labels));
}

int Frame::index_of(const std::string& label) const {
  for (int i = 0; i < size(); ++i)
    if ((*labels_)[i] == label) return i;
  return -1;
}

std::string Frame::set_to_string(FocalSet x) const {
  if (x == 0) return "!";
  if (x == full_set()) return "*";
  std::string out;
  for (int i = 0; i < size(); ++i) {
    if (x & (FocalSet{1} << i)) {
      if (!out.empty()) out += '|';
      out += (*labels_)[i];
    }
  }
  return out;
}

FocalSet Frame::set_from_string(const std::string& s) const {
  if (s == "!") return 0;
  if (s == "*") return full_set();
  FocalSet x = 0;
  for (const auto& part : split_on(s, '|')) {
    int i = index_of(part);
    if (i < 0) throw SchemaError("label '" + part + "' not in frame");
    FocalSet bit = FocalSet{1} << i;
    if (x & bit) throw SchemaError("duplicate label '" + part + "' in subset");
    x |= bit;
  }
  if (x == 0) throw SchemaError("empty label set");
  return x;
}

}  // namespace crowdbelief
