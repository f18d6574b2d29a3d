#include "crowdbelief/mass.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "crowdbelief/csv.hpp"

namespace crowdbelief {

namespace {
constexpr double kNormTol = 1e-9;
}

MassFunction::MassFunction(Frame frame, std::vector<Entry> entries) : frame_(std::move(frame)) {
  std::map<FocalSet, double> acc;
  for (const auto& [x, v] : entries) {
    if (x >= frame_.subset_count())
      throw InvalidMass("subset index " + std::to_string(x) + " out of range for frame");
    if (v < 0.0) {
      if (v < -kNormTol) throw InvalidMass("negative mass " + format_double(v));
      continue;  // tolerate -0.0 style dust
    }
    if (v > 0.0) acc[x] += v;
  }
  double total = 0.0;
  entries_.reserve(acc.size());
  for (const auto& [x, v] : acc) {
    if (v <= 0.0) continue;
    entries_.emplace_back(x, v);
    total += v;
  }
  if (std::abs(total - 1.0) > kNormTol)
    throw InvalidMass("masses sum to " + format_double(total) + ", expected 1");
}

double MassFunction::mass(FocalSet x) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), x,
                             [](const Entry& e, FocalSet key) { return e.first < key; });
  return (it != entries_.end() && it->first == x) ? it->second : 0.0;
}

bool MassFunction::is_vacuous() const {
  return entries_.size() == 1 && entries_[0].first == frame_.full_set();
}

bool MassFunction::is_bayesian() const {
  for (const auto& [x, v] : entries_)
    if (set_size(x) != 1) return false;
  return true;
}

bool MassFunction::is_simple_support() const {
  int non_full = 0;
  for (const auto& [x, v] : entries_) {
    if (x == frame_.full_set()) continue;
    if (x == 0) return false;
    ++non_full;
  }
  return non_full <= 1;
}

std::string MassFunction::to_string() const {
  std::string out;
  for (const auto& [x, v] : entries_) {
    if (!out.empty()) out += ';';
    out += frame_.set_to_string(x);
    out += ':';
    out += format_double(v);
  }
  return out;
}

MassFunction MassFunction::from_string(const Frame& frame, const std::string& s) {
  std::vector<Entry> entries;
  for (const auto& part : split_on(s, ';')) {
    auto colon = part.rfind(':');
    if (colon == std::string::npos) throw SchemaError("mass entry '" + part + "' missing ':'");
    FocalSet x = frame.set_from_string(part.substr(0, colon));
    double v = parse_double(part.substr(colon + 1), 0, "mass");
    entries.emplace_back(x, v);
  }
  return MassFunction(frame, std::move(entries));
}

MassFunction make_categorical(const Frame& frame, FocalSet x) {
  if (x == 0) throw EmptyFocal("categorical mass on the empty set");
  return MassFunction(frame, {{x, 1.0}});
}

MassFunction make_vacuous(const Frame& frame) {
  return MassFunction(frame, {{frame.full_set(), 1.0}});
}

MassFunction make_simple_support(const Frame& frame, FocalSet x, double omega) {
  if (x == 0) throw EmptyFocal("simple support on the empty set");
  if (x == frame.full_set())
    throw FullFrameFocal("simple support focal equals the frame; use the vacuous/categorical mass");
  if (omega < 0.0 || omega > 1.0)
    throw AlphaOutOfRange("support " + format_double(omega) + " outside [0,1]");
  return MassFunction(frame, {{x, omega}, {frame.full_set(), 1.0 - omega}});
}

MassFunction discount(const MassFunction& m, double alpha) {
  if (alpha < 0.0 || alpha > 1.0)
    throw AlphaOutOfRange("discount rate " + format_double(alpha) + " outside [0,1]");
  std::vector<MassFunction::Entry> entries;
  FocalSet full = m.frame().full_set();
  double ignorance = 1.0 - alpha * (1.0 - m.mass(full));
  for (const auto& [x, v] : m.focals())
    if (x != full) entries.emplace_back(x, alpha * v);
  entries.emplace_back(full, ignorance);
  return MassFunction(m.frame(), std::move(entries));
}

}  // namespace crowdbelief
