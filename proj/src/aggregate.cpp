#include "crowdbelief/aggregate.hpp"

#include <algorithm>
#include <fstream>

#include "crowdbelief/csv.hpp"
#include "crowdbelief/decide.hpp"

namespace crowdbelief {

double ProfileDiscounts::of(ProfileLabel p) const {
  switch (p) {
    case ProfileLabel::Expert: return expert;
    case ProfileLabel::Good: return good;
    case ProfileLabel::Average: return average;
    case ProfileLabel::Bad: return bad;
  }
  throw ArgOutOfRange("bad profile label value");
}

void ProfileDiscounts::validate() const {
  for (double v : {expert, good, average, bad})
    if (v < 0.0 || v > 1.0) throw ConfigError("profile discount outside [0,1]");
  if (!(expert > good && good > average && average >= bad))
    throw ConfigError("profile discounts must satisfy expert > good > average >= bad");
}

CombineRule rule_from_string(const std::string& s) {
  if (s == "mean") return CombineRule::mean;
  if (s == "conjunctive") return CombineRule::conjunctive;
  if (s == "dempster") return CombineRule::dempster;
  if (s == "lns") return CombineRule::lns;
  throw ConfigError("unknown combination rule '" + s + "'");
}

std::string to_string(CombineRule r) {
  switch (r) {
    case CombineRule::mean: return "mean";
    case CombineRule::conjunctive: return "conjunctive";
    case CombineRule::dempster: return "dempster";
    case CombineRule::lns: return "lns";
  }
  throw ArgOutOfRange("bad rule value");
}

MassFunction discount_by_profile(const MassFunction& m, ProfileLabel profile,
                                 const ProfileDiscounts& d) {
  return discount(m, d.of(profile));
}

QuestionDecision aggregate_question(const Campaign& campaign, const Question& q,
                                    const std::map<std::string, ProfileLabel>* profiles,
                                    const ProfileDiscounts& d, const AggregateOptions& opt) {
  if (profiles != nullptr) d.validate();
  const auto& ix = campaign.responses_to(q.id);
  if (ix.empty()) throw NoResponses("no responses to '" + q.id + "'");

  std::vector<MassFunction> discounted;
  discounted.reserve(ix.size());
  for (int i : ix) {
    const Response& r = campaign.responses()[i];
    MassFunction m = response_to_mass(r, q, opt.scale);
    double alpha = opt.global_discount;
    if (profiles != nullptr) {
      auto it = profiles->find(r.contributor);
      if (it == profiles->end())
        throw ConfigError("no profile for contributor '" + r.contributor + "'");
      alpha = d.of(it->second);
    }
    discounted.push_back(discount(m, alpha));
  }

  MassFunction combined = make_vacuous(q.frame);
  switch (opt.rule) {
    case CombineRule::mean:
      combined = combine_mean(discounted);
      break;
    case CombineRule::conjunctive:
      combined = combine_conjunctive(discounted);
      break;
    case CombineRule::dempster:
      combined = combine_dempster(discounted);
      break;
    case CombineRule::lns: {
      // Vacuous answers carry no support; they are neutral for this rule and
      // stay out of the clustering.
      std::vector<SimpleSupport> supports;
      for (const MassFunction& m : discounted) {
        if (m.is_vacuous()) continue;
        for (const auto& [x, v] : m.focals())
          if (x != q.frame.full_set()) supports.push_back({x, v});
      }
      if (!supports.empty()) combined = combine_lns(q.frame, supports, opt.lns);
      break;
    }
  }

  QuestionDecision out{q.id, std::move(combined), {}, 0, "", 0};
  out.betp = pignistic(out.combined);
  out.decided_ix = decide_pignistic(out.combined);
  out.decided = q.frame.label(out.decided_ix);
  if (opt.decide_sets) {
    std::vector<FocalSet> candidates;
    for (FocalSet x = 1; x < q.frame.subset_count(); ++x)
      if (set_size(x) <= q.imp_max) candidates.push_back(x);
    out.decided_set = decide_min_distance(out.combined, candidates);
  }
  return out;
}

std::vector<QuestionDecision> aggregate_campaign(const Campaign& campaign,
                                                 const std::map<std::string, ProfileLabel>* profiles,
                                                 const ProfileDiscounts& d,
                                                 const AggregateOptions& opt, Execution exec) {
  std::vector<const Question*> targets;
  for (const Question& q : campaign.questions())
    if (!q.is_attention && !campaign.responses_to(q.id).empty()) targets.push_back(&q);
  if (targets.empty()) return {};
  QuestionDecision blank{"", make_vacuous(targets[0]->frame), {}, 0, "", 0};
  std::vector<QuestionDecision> out(targets.size(), blank);
  parallel_for(targets.size(), exec, [&](std::size_t i) {
    out[i] = aggregate_question(campaign, *targets[i], profiles, d, opt);
  });
  return out;
}

double contributor_crr(const Campaign& campaign, const std::string& contributor) {
  double total = 0.0;
  int n = 0;
  for (int i : campaign.responses_by(contributor)) {
    const Response& r = campaign.responses()[i];
    const Question& q = campaign.question(r.question);
    if (q.is_attention || !q.has_gold()) continue;
    FocalSet gold_bit = FocalSet{1} << q.gold_index();
    double valid = (r.selected & gold_bit) ? 1.0 : 0.0;
    total += valid / static_cast<double>(set_size(r.selected));
    ++n;
  }
  if (n == 0)
    throw NoGoldQuestions("contributor '" + contributor + "' answered no gold-bearing questions");
  return total / static_cast<double>(n);
}

double crowd_crr(const std::vector<QuestionDecision>& decisions, const Campaign& campaign) {
  if (decisions.empty()) throw EmptyInput("no decisions to score");
  int correct = 0;
  for (const QuestionDecision& d : decisions) {
    const Question& q = campaign.question(d.question);
    if (!q.has_gold()) throw MissingGold("question '" + q.id + "' has no gold label");
    if (d.decided == q.gold) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(decisions.size());
}

void write_decisions_csv(const std::vector<QuestionDecision>& decisions, const Campaign& campaign,
                         const std::string& path) {
  std::ofstream out(path);
  if (!out) throw SchemaError("cannot write '" + path + "'");
  out << "question_id,decided,gold,correct,betp_top1,betp_top2,conflict_mass\n";
  for (const QuestionDecision& d : decisions) {
    const Question& q = campaign.question(d.question);
    std::vector<double> sorted_betp = d.betp;
    std::sort(sorted_betp.begin(), sorted_betp.end(), std::greater<>());
    double top2 = sorted_betp.size() > 1 ? sorted_betp[1] : 0.0;
    int correct = q.has_gold() ? (d.decided == q.gold ? 1 : 0) : 0;
    out << d.question << ',' << d.decided << ',' << q.gold << ',' << correct << ','
        << format_double(sorted_betp[0]) << ',' << format_double(top2) << ','
        << format_double(d.combined.conflict()) << '\n';
  }
}

}  // namespace crowdbelief
