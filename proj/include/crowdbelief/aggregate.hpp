#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crowdbelief/campaign.hpp"
#include "crowdbelief/combine.hpp"
#include "crowdbelief/parallel.hpp"
#include "crowdbelief/profile_label.hpp"

namespace crowdbelief {

// Reliability per decided profile. The ordering expert > good > average >= bad
// is a hard requirement, validated wherever a tuple enters the pipeline.
struct ProfileDiscounts {
  double expert = 1.0;
  double good = 0.85;
  double average = 0.40;
  double bad = 0.20;

  double of(ProfileLabel p) const;
  void validate() const;  // throws ConfigError on range or ordering violations
};

enum class CombineRule { mean, conjunctive, dempster, lns };
CombineRule rule_from_string(const std::string& s);
std::string to_string(CombineRule r);

struct QuestionDecision {
  std::string question;
  MassFunction combined;
  std::vector<double> betp;
  int decided_ix = 0;         // frame index of the betP argmax
  std::string decided;        // its label
  FocalSet decided_set = 0;   // min-distance subset decision, when requested
};

struct AggregateOptions {
  CombineRule rule = CombineRule::mean;
  LnsWeighting lns = LnsWeighting::diffidence;
  LikertScale scale{};
  double global_discount = 0.9;  // used when no profile map is supplied
  bool decide_sets = false;      // also run the subset decision (not scored)
};

// Answer masses of everyone who responded to q, discounted by their profile
// (or by the global rate when profiles is null), combined by rule, decided
// by betP argmax (ties toward the lowest frame index).
QuestionDecision aggregate_question(const Campaign& campaign, const Question& q,
                                    const std::map<std::string, ProfileLabel>* profiles,
                                    const ProfileDiscounts& d, const AggregateOptions& opt = {});

MassFunction discount_by_profile(const MassFunction& m, ProfileLabel profile,
                                 const ProfileDiscounts& d);

// Decisions for every non-attention question with at least one response, in
// campaign question order.
std::vector<QuestionDecision> aggregate_campaign(const Campaign& campaign,
                                                 const std::map<std::string, ProfileLabel>* profiles,
                                                 const ProfileDiscounts& d,
                                                 const AggregateOptions& opt = {},
                                                 Execution exec = Execution::parallel);

// Mean over gold-bearing non-attention questions of (gold in X)/|X|.
double contributor_crr(const Campaign& campaign, const std::string& contributor);

// Fraction of decisions whose label matches the gold label.
double crowd_crr(const std::vector<QuestionDecision>& decisions, const Campaign& campaign);

void write_decisions_csv(const std::vector<QuestionDecision>& decisions, const Campaign& campaign,
                         const std::string& path);

}  // namespace crowdbelief
