#pragma once

#include <array>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "crowdbelief/campaign.hpp"
#include "crowdbelief/parallel.hpp"
#include "crowdbelief/profile_label.hpp"

namespace crowdbelief {

// The four fixed behavioral frames: precision, certainty, reflection,
// attention (each with its negation).
const Frame& precision_frame();   // {P, IP}
const Frame& certainty_frame();   // {C, UC}
const Frame& reflection_frame();  // {R, NR}
const Frame& attention_frame();   // {A, NA}

// How imprecise one answer is: omega = log2|x|/log2(imp_max); mass alpha*(1-omega)
// on P, alpha*omega on IP, 1-alpha on the frame.
MassFunction precision_mass(int card, int imp_max, double alpha);

// Diagnostic threshold comparing the precision mass against the dispersion
// degree baseline: (log2 M / log2 imp_max) * (log2 imp_max - log2 c) / (log2 M - log2 c).
double gamma_threshold(int card, int imp_max, int frame_size);

MassFunction certainty_mass(int likert, double alpha, const LikertScale& scale = {});

// First quartile of all response times to one question; the reflection
// reference point.
double estimate_t0(const Campaign& campaign, const Question& q);

// omega = arctan(t - t0)/pi + 1/2, so answering faster than the crowd's
// first quartile counts against reflection.
MassFunction reflection_mass(double t, double t0, double alpha);

// Distance between the original answer and its repeat on the attention
// question; identical answers (set and certainty) give full attention mass.
MassFunction attention_mass(const Response& original, const Response& attention,
                            const Question& q, double alpha, const LikertScale& scale = {});

// Mean across the per-question masses of one characteristic.
MassFunction aggregate_characteristic(std::span<const MassFunction> per_question);

// Mass transport from a characteristic frame onto the profile frame:
//   P -> {expert,bad}   IP -> {good,average}
//   C -> {expert,good,bad}   UC -> {average}
//   R -> {good,average}   NR -> {expert,bad}
//   A -> {expert,good,average}   NA -> {bad}
// and the characteristic frame's ignorance onto the profile ignorance.
MassFunction convert_to_profile_frame(const MassFunction& m);

// Relative weights of the four characteristics in the profile fusion.
struct FusionWeights {
  double p = 1.0, c = 1.0, r = 1.0, a = 1.0;
};

// Per-characteristic discount rates applied when building the per-question
// masses.
struct CharDiscounts {
  double p = 0.9, c = 0.9, r = 0.9, a = 0.9;
};

// Weighted mean of the four converted characteristic masses.
MassFunction fuse_profile(const MassFunction& mp, const MassFunction& mc, const MassFunction& mr,
                          const MassFunction& ma, const FusionWeights& w);

// betP argmax with ties resolved toward the less trusted profile
// (bad beats average beats good beats expert).
ProfileLabel decide_profile(const MassFunction& pm);

// One contributor's four campaign-level characteristic masses, already
// converted onto the profile frame. Weight-independent, so grid searches
// reuse them across tuples.
struct CharacteristicProfile {
  std::string contributor;
  MassFunction precision, certainty, reflection, attention;
};

std::vector<CharacteristicProfile> characteristic_profiles(const Campaign& campaign,
                                                           const CharDiscounts& d = {},
                                                           const LikertScale& scale = {},
                                                           Execution exec = Execution::parallel);

struct ContributorProfile {
  std::string contributor;
  MassFunction profile;  // fused mass on the profile frame
  std::array<double, kProfileCount> betp{};
  ProfileLabel decided = ProfileLabel::Bad;
};

ContributorProfile fuse_and_decide(const CharacteristicProfile& cp, const FusionWeights& w);

std::vector<ContributorProfile> profile_contributors(const Campaign& campaign,
                                                     const FusionWeights& w = {},
                                                     const CharDiscounts& d = {},
                                                     const LikertScale& scale = {},
                                                     Execution exec = Execution::parallel);

void write_profiles_csv(const std::vector<ContributorProfile>& profiles, const std::string& path);
std::map<std::string, ProfileLabel> parse_profiles_csv(const std::string& path);

}  // namespace crowdbelief
