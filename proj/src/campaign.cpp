#include "crowdbelief/campaign.hpp"

#include <algorithm>
#include <set>

#include "crowdbelief/csv.hpp"

namespace crowdbelief {

Campaign::Campaign(std::vector<Question> questions, std::vector<Response> responses)
    : questions_(std::move(questions)), responses_(std::move(responses)) {
  for (int i = 0; i < static_cast<int>(questions_.size()); ++i) {
    const Question& q = questions_[i];
    if (q.id.empty()) throw SchemaError("question with empty id");
    if (!question_ix_.emplace(q.id, i).second)
      throw SchemaError("duplicate question id '" + q.id + "'");
    if (q.imp_max < 1 || q.imp_max > q.frame.size())
      throw SchemaError("question '" + q.id + "': imp_max " + std::to_string(q.imp_max) +
                        " outside [1, frame size]");
    if (q.has_gold() && q.gold_index() < 0)
      throw SchemaError("question '" + q.id + "': gold label '" + q.gold + "' not in frame");
    if (q.is_attention == q.ref_question.empty())
      throw SchemaError("question '" + q.id + "': ref_question required iff attention");
  }
  for (const Question& q : questions_) {
    if (!q.is_attention) continue;
    auto it = question_ix_.find(q.ref_question);
    if (it == question_ix_.end())
      throw DanglingAttentionRef("attention question '" + q.id + "' references missing question '" +
                                 q.ref_question + "'");
    const Question& ref = questions_[it->second];
    if (ref.is_attention)
      throw DanglingAttentionRef("attention question '" + q.id + "' references another attention question");
    if (ref.frame != q.frame)
      throw SchemaError("attention question '" + q.id + "' frame differs from its reference");
  }
  std::set<std::pair<std::string, std::string>> seen;
  for (int i = 0; i < static_cast<int>(responses_.size()); ++i) {
    const Response& r = responses_[i];
    auto it = question_ix_.find(r.question);
    if (it == question_ix_.end())
      throw SchemaError("response references missing question '" + r.question + "'");
    const Question& q = questions_[it->second];
    if (r.selected == 0 || r.selected >= q.frame.subset_count())
      throw InvalidSelection("response by '" + r.contributor + "' to '" + r.question +
                             "': selection outside the frame");
    if (set_size(r.selected) > q.imp_max)
      throw InvalidSelection("response by '" + r.contributor + "' to '" + r.question +
                             "': selected " + std::to_string(set_size(r.selected)) +
                             " options, imp_max is " + std::to_string(q.imp_max));
    if (r.likert < 0 || r.likert > 6)
      throw LikertOutOfRange("response by '" + r.contributor + "' to '" + r.question +
                             "': likert " + std::to_string(r.likert));
    if (r.time_s < 0.0)
      throw SchemaError("response by '" + r.contributor + "' to '" + r.question + "': negative time");
    if (!seen.emplace(r.contributor, r.question).second)
      throw DuplicateResponse("contributor '" + r.contributor + "' answered '" + r.question + "' twice");
    by_question_[r.question].push_back(i);
    by_contributor_[r.contributor].push_back(i);
  }
  contributors_.reserve(by_contributor_.size());
  for (const auto& [c, ix] : by_contributor_) contributors_.push_back(c);
  std::sort(contributors_.begin(), contributors_.end());
}

const Question& Campaign::question(const std::string& id) const {
  auto it = question_ix_.find(id);
  if (it == question_ix_.end()) throw SchemaError("unknown question '" + id + "'");
  return questions_[it->second];
}

const std::vector<int>& Campaign::responses_to(const std::string& question_id) const {
  static const std::vector<int> empty;
  auto it = by_question_.find(question_id);
  return it == by_question_.end() ? empty : it->second;
}

const std::vector<int>& Campaign::responses_by(const std::string& contributor) const {
  static const std::vector<int> empty;
  auto it = by_contributor_.find(contributor);
  return it == by_contributor_.end() ? empty : it->second;
}

const Response* Campaign::response_of(const std::string& contributor,
                                      const std::string& question_id) const {
  for (int i : responses_by(contributor))
    if (responses_[i].question == question_id) return &responses_[i];
  return nullptr;
}

Campaign Campaign::restrict_to(const std::vector<std::string>& contributors) const {
  std::set<std::string> keep(contributors.begin(), contributors.end());
  std::vector<Response> rs;
  for (const Response& r : responses_)
    if (keep.count(r.contributor)) rs.push_back(r);
  return Campaign(questions_, std::move(rs));
}

double LikertScale::omega(int likert) const {
  if (likert < 0 || likert > 6)
    throw LikertOutOfRange("likert " + std::to_string(likert) + " outside 0..6");
  return omega_min + (omega_max - omega_min) * static_cast<double>(likert) / 6.0;
}

double LikertScale::normalized(int likert) const {
  return (omega(likert) - omega_min) / (omega_max - omega_min);
}

double likert_to_omega(int likert) { return LikertScale{}.omega(likert); }

MassFunction response_to_mass(const Response& r, const Question& q, const LikertScale& scale) {
  if (r.selected == 0) throw InvalidSelection("empty selection");
  if (set_size(r.selected) > q.imp_max)
    throw InvalidSelection("selection larger than imp_max");
  if (r.selected == q.frame.full_set()) return make_vacuous(q.frame);
  return make_simple_support(q.frame, r.selected, scale.omega(r.likert));
}

}  // namespace crowdbelief
