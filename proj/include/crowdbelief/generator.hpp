#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "crowdbelief/campaign.hpp"
#include "crowdbelief/profile_label.hpp"

namespace crowdbelief {

// Samplable knobs for one planted contributor profile.
struct ProfileSpec {
  ProfileLabel label = ProfileLabel::Average;
  double correct_rate = 0.5;  // chance the gold label lands in the selection
  std::vector<std::pair<int, double>> imprecision_dist;  // |X| -> probability
  std::vector<std::pair<int, double>> certainty_dist;    // likert -> probability
  double time_min_s = 1.0, time_max_s = 10.0;            // uniform response time
  double attention_fidelity = 0.9;  // chance of repeating the original answer
};

// Default planted profiles: Expert (precise, certain, fast, attentive,
// correct 0.9), Good (mildly imprecise, certain, slow, correct 0.65),
// Average (imprecise, uncertain, slow, correct 0.35), Bad (precise, certain,
// fast, inattentive, answers by chance: correct 1/frame_size).
std::vector<ProfileSpec> default_profile_specs(int frame_size);

struct GeneratedCampaign {
  Campaign campaign;
  std::vector<std::pair<std::string, ProfileLabel>> planted;  // contributor -> truth
};

// Deterministic for a fixed seed. Every question gets a gold label;
// attention questions repeat an earlier question (same frame, same gold).
GeneratedCampaign generate_synthetic_campaign(const std::vector<std::pair<ProfileSpec, int>>& specs,
                                              int n_questions, const Frame& frame, int imp_max,
                                              int n_attention, std::uint64_t seed);

void write_truth_csv(const GeneratedCampaign& g, const std::string& path);
std::vector<std::pair<std::string, ProfileLabel>> parse_truth_csv(const std::string& path);

}  // namespace crowdbelief
