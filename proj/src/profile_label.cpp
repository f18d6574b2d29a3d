#include "crowdbelief/profile_label.hpp"

namespace crowdbelief {

const Frame& profile_frame() {
  static const Frame f(std::vector<std::string>{"expert", "good", "average", "bad"});
  return f;
}

std::string to_string(ProfileLabel p) {
  switch (p) {
    case ProfileLabel::Expert: return "expert";
    case ProfileLabel::Good: return "good";
    case ProfileLabel::Average: return "average";
    case ProfileLabel::Bad: return "bad";
  }
  throw ArgOutOfRange("bad profile label value");
}

ProfileLabel profile_from_string(const std::string& s) {
  if (s == "expert") return ProfileLabel::Expert;
  if (s == "good") return ProfileLabel::Good;
  if (s == "average") return ProfileLabel::Average;
  if (s == "bad") return ProfileLabel::Bad;
  throw ArgOutOfRange("unknown profile label '" + s + "'");
}

}  // namespace crowdbelief
