#pragma once

#include <string>

#include "crowdbelief/frame.hpp"

namespace crowdbelief {

// Values match the profile frame's label order (index 0 = expert).
enum class ProfileLabel { Expert = 0, Good = 1, Average = 2, Bad = 3 };

inline constexpr int kProfileCount = 4;

// The frame {expert, good, average, bad} all profile masses live on.
const Frame& profile_frame();

std::string to_string(ProfileLabel p);
ProfileLabel profile_from_string(const std::string& s);

inline FocalSet profile_bit(ProfileLabel p) { return FocalSet{1} << static_cast<int>(p); }

}  // namespace crowdbelief
