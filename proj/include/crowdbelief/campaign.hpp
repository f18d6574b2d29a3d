#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "crowdbelief/mass.hpp"

namespace crowdbelief {

struct Question {
  std::string id;
  Frame frame;
  std::string gold;          // empty = no gold label
  int imp_max = 1;           // max selectable options, 1..|frame|
  bool is_attention = false;
  std::string ref_question;  // non-empty iff is_attention

  bool has_gold() const { return !gold.empty(); }
  int gold_index() const { return frame.index_of(gold); }
};

struct Response {
  std::string contributor;
  std::string question;
  FocalSet selected = 0;
  int likert = 0;  // 0..6
  double time_s = 0.0;
};

// Immutable after construction; all invariants validated up front. Lookup
// indexes (per question, per contributor) are built once.
class Campaign {
 public:
  Campaign(std::vector<Question> questions, std::vector<Response> responses);

  const std::vector<Question>& questions() const { return questions_; }
  const std::vector<Response>& responses() const { return responses_; }
  const std::vector<std::string>& contributors() const { return contributors_; }

  const Question& question(const std::string& id) const;
  bool has_question(const std::string& id) const { return question_ix_.count(id) > 0; }
  // Indices into responses() for one question / one contributor.
  const std::vector<int>& responses_to(const std::string& question_id) const;
  const std::vector<int>& responses_by(const std::string& contributor) const;
  // nullptr when the contributor skipped the question.
  const Response* response_of(const std::string& contributor, const std::string& question_id) const;

  // Same questions, responses filtered to the given contributors.
  Campaign restrict_to(const std::vector<std::string>& contributors) const;

 private:
  std::vector<Question> questions_;
  std::vector<Response> responses_;
  std::vector<std::string> contributors_;  // sorted, unique
  std::unordered_map<std::string, int> question_ix_;
  std::unordered_map<std::string, std::vector<int>> by_question_;
  std::unordered_map<std::string, std::vector<int>> by_contributor_;
};

// Self-assessment scale endpoints. With the defaults the normalized
// certainty equals the raw omega, so one Likert value feeds both the answer
// mass and the certainty characteristic.
struct LikertScale {
  double omega_min = 0.0;
  double omega_max = 1.0;

  double omega(int likert) const;       // omega_min + likert/6 * (omega_max-omega_min)
  double normalized(int likert) const;  // (omega - omega_min)/(omega_max - omega_min)
};

double likert_to_omega(int likert);  // default scale

// Simple support on the selected set with omega from the Likert value;
// vacuous when the selection covers the whole frame or omega is 0.
MassFunction response_to_mass(const Response& r, const Question& q, const LikertScale& scale = {});

Campaign parse_campaign_csv(const std::string& path);
void write_campaign_csv(const Campaign& c, const std::string& path);

}  // namespace crowdbelief
