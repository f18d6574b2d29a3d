#include "crowdbelief/monitor.hpp"

#include <cmath>
#include <fstream>

#include "crowdbelief/combine.hpp"
#include "crowdbelief/csv.hpp"
#include "crowdbelief/decide.hpp"
#include "crowdbelief/distance.hpp"
#include "crowdbelief/quantile.hpp"

namespace crowdbelief {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_alpha(double alpha) {
  if (alpha < 0.0 || alpha > 1.0)
    throw AlphaOutOfRange("characteristic discount " + format_double(alpha) + " outside [0,1]");
}

MassFunction two_way_mass(const Frame& frame, double first_share, double alpha) {
  // first_share of the discounted belief goes to label 0, the rest to
  // label 1, ignorance keeps 1-alpha.
  return MassFunction(frame, {{1, alpha * first_share}, {2, alpha * (1.0 - first_share)}, {3, 1.0 - alpha}});
}

}  // namespace

const Frame& precision_frame() {
  static const Frame f(std::vector<std::string>{"P", "IP"});
  return f;
}
const Frame& certainty_frame() {
  static const Frame f(std::vector<std::string>{"C", "UC"});
  return f;
}
const Frame& reflection_frame() {
  static const Frame f(std::vector<std::string>{"R", "NR"});
  return f;
}
const Frame& attention_frame() {
  static const Frame f(std::vector<std::string>{"A", "NA"});
  return f;
}

MassFunction precision_mass(int card, int imp_max, double alpha) {
  if (imp_max < 2) throw ImpMaxTooSmall("imp_max " + std::to_string(imp_max) + " < 2");
  if (card < 1 || card > imp_max)
    throw SelectionTooLarge("|x| = " + std::to_string(card) + " outside [1, imp_max]");
  check_alpha(alpha);
  double omega = std::log2(static_cast<double>(card)) / std::log2(static_cast<double>(imp_max));
  return two_way_mass(precision_frame(), 1.0 - omega, alpha);
}

double gamma_threshold(int card, int imp_max, int frame_size) {
  if (card < 1 || card > imp_max || imp_max > frame_size)
    throw ArgOutOfRange("need 1 <= card <= imp_max <= frame_size");
  if (card == 1) return 1.0;
  if (card == imp_max) return 0.0;
  double li = std::log2(static_cast<double>(imp_max));
  double lm = std::log2(static_cast<double>(frame_size));
  double lx = std::log2(static_cast<double>(card));
  return (lm / li) * ((li - lx) / (lm - lx));
}

MassFunction certainty_mass(int likert, double alpha, const LikertScale& scale) {
  check_alpha(alpha);
  double omega = scale.normalized(likert);  // throws LikertOutOfRange
  return two_way_mass(certainty_frame(), omega, alpha);
}

double estimate_t0(const Campaign& campaign, const Question& q) {
  const auto& ix = campaign.responses_to(q.id);
  if (ix.empty()) throw NoResponses("no responses to '" + q.id + "'");
  std::vector<double> times;
  times.reserve(ix.size());
  for (int i : ix) times.push_back(campaign.responses()[i].time_s);
  return quantile_type7(std::move(times), 0.25);
}

MassFunction reflection_mass(double t, double t0, double alpha) {
  check_alpha(alpha);
  double omega = std::atan(t - t0) / kPi + 0.5;
  return two_way_mass(reflection_frame(), omega, alpha);
}

MassFunction attention_mass(const Response& original, const Response& attention,
                            const Question& q, double alpha, const LikertScale& scale) {
  if (original.question != q.id || attention.question == original.question)
    throw MismatchedQuestions("attention pair must be (answer to '" + q.id +
                              "', answer to its repeat)");
  check_alpha(alpha);
  auto to_mass = [&](const Response& r) {
    if (r.selected == q.frame.full_set()) return make_vacuous(q.frame);
    return make_simple_support(q.frame, r.selected, scale.omega(r.likert));
  };
  double omega = jousselme_distance(to_mass(original), to_mass(attention));
  return two_way_mass(attention_frame(), 1.0 - omega, alpha);
}

MassFunction aggregate_characteristic(std::span<const MassFunction> per_question) {
  return combine_mean(per_question);
}

MassFunction convert_to_profile_frame(const MassFunction& m) {
  FocalSet first, second;
  if (m.frame() == precision_frame()) {
    first = 0b1001;  // {expert, bad}
    second = 0b0110;  // {good, average}
  } else if (m.frame() == certainty_frame()) {
    first = 0b1011;  // {expert, good, bad}
    second = 0b0100;  // {average}
  } else if (m.frame() == reflection_frame()) {
    first = 0b0110;  // {good, average}
    second = 0b1001;  // {expert, bad}
  } else if (m.frame() == attention_frame()) {
    first = 0b0111;  // {expert, good, average}
    second = 0b1000;  // {bad}
  } else {
    throw UnknownFrame("not a characteristic frame: " + m.frame().label(0) + ", ...");
  }
  std::vector<MassFunction::Entry> entries;
  for (const auto& [x, v] : m.focals()) {
    switch (x) {
      case 1: entries.emplace_back(first, v); break;
      case 2: entries.emplace_back(second, v); break;
      case 3: entries.emplace_back(profile_frame().full_set(), v); break;
      default: throw UnknownFrame("characteristic mass touches the empty set");
    }
  }
  return MassFunction(profile_frame(), std::move(entries));
}

MassFunction fuse_profile(const MassFunction& mp, const MassFunction& mc, const MassFunction& mr,
                          const MassFunction& ma, const FusionWeights& w) {
  if (w.p < 0.0 || w.c < 0.0 || w.r < 0.0 || w.a < 0.0)
    throw ZeroWeights("fusion weights must be non-negative");
  double total = w.p + w.c + w.r + w.a;
  if (total <= 0.0) throw ZeroWeights("fusion weights sum to zero");
  const MassFunction* ms[4] = {&mp, &mc, &mr, &ma};
  double ws[4] = {w.p, w.c, w.r, w.a};
  std::map<FocalSet, double> acc;
  for (int i = 0; i < 4; ++i) {
    if (ms[i]->frame() != profile_frame())
      throw FrameMismatch("fuse_profile inputs must live on the profile frame");
    for (const auto& [x, v] : ms[i]->focals()) acc[x] += ws[i] * v;
  }
  std::vector<MassFunction::Entry> entries;
  entries.reserve(acc.size());
  for (const auto& [x, v] : acc) entries.emplace_back(x, v / total);
  return MassFunction(profile_frame(), std::move(entries));
}

ProfileLabel decide_profile(const MassFunction& pm) {
  std::vector<double> betp = pignistic(pm);
  int best = 0;
  for (int i = 1; i < kProfileCount; ++i)
    if (betp[i] >= betp[best]) best = i;  // >= so ties land on the worse profile
  return static_cast<ProfileLabel>(best);
}

std::vector<CharacteristicProfile> characteristic_profiles(const Campaign& campaign,
                                                           const CharDiscounts& d,
                                                           const LikertScale& scale,
                                                           Execution exec) {
  const auto& contributors = campaign.contributors();
  std::map<std::string, double> t0;
  for (const Question& q : campaign.questions())
    if (!campaign.responses_to(q.id).empty()) t0[q.id] = estimate_t0(campaign, q);

  CharacteristicProfile blank{"", make_vacuous(profile_frame()), make_vacuous(profile_frame()),
                              make_vacuous(profile_frame()), make_vacuous(profile_frame())};
  std::vector<CharacteristicProfile> out(contributors.size(), blank);
  parallel_for(contributors.size(), exec, [&](std::size_t ci) {
    const std::string& c = contributors[ci];
    std::vector<MassFunction> mp, mc, mr, ma;
    for (int i : campaign.responses_by(c)) {
      const Response& r = campaign.responses()[i];
      const Question& q = campaign.question(r.question);
      // Questions that forbid imprecision carry no precision evidence.
      if (q.imp_max >= 2) mp.push_back(precision_mass(set_size(r.selected), q.imp_max, d.p));
      mc.push_back(certainty_mass(r.likert, d.c, scale));
      mr.push_back(reflection_mass(r.time_s, t0.at(q.id), d.r));
      if (q.is_attention) {
        const Response* orig = campaign.response_of(c, q.ref_question);
        if (orig != nullptr)
          ma.push_back(attention_mass(*orig, r, campaign.question(q.ref_question), d.a, scale));
      }
    }
    auto agg = [](std::vector<MassFunction>& ms, const Frame& frame) {
      return ms.empty() ? make_vacuous(frame) : aggregate_characteristic(ms);
    };
    out[ci] = CharacteristicProfile{c, convert_to_profile_frame(agg(mp, precision_frame())),
                                    convert_to_profile_frame(agg(mc, certainty_frame())),
                                    convert_to_profile_frame(agg(mr, reflection_frame())),
                                    convert_to_profile_frame(agg(ma, attention_frame()))};
  });
  return out;
}

ContributorProfile fuse_and_decide(const CharacteristicProfile& cp, const FusionWeights& w) {
  ContributorProfile p{cp.contributor,
                       fuse_profile(cp.precision, cp.certainty, cp.reflection, cp.attention, w),
                       {}, ProfileLabel::Bad};
  std::vector<double> betp = pignistic(p.profile);
  for (int i = 0; i < kProfileCount; ++i) p.betp[i] = betp[i];
  p.decided = decide_profile(p.profile);
  return p;
}

std::vector<ContributorProfile> profile_contributors(const Campaign& campaign,
                                                     const FusionWeights& w, const CharDiscounts& d,
                                                     const LikertScale& scale, Execution exec) {
  auto cps = characteristic_profiles(campaign, d, scale, exec);
  ContributorProfile blank{"", make_vacuous(profile_frame()), {}, ProfileLabel::Bad};
  std::vector<ContributorProfile> out(cps.size(), blank);
  parallel_for(cps.size(), exec, [&](std::size_t i) { out[i] = fuse_and_decide(cps[i], w); });
  return out;
}

void write_profiles_csv(const std::vector<ContributorProfile>& profiles, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw SchemaError("cannot write '" + path + "'");
  out << "contributor_id,m_expert,m_good,m_average,m_bad,m_ignorance_total,"
         "betp_expert,betp_good,betp_average,betp_bad,decided_profile\n";
  for (const ContributorProfile& p : profiles) {
    double singles = 0.0;
    out << p.contributor;
    for (int i = 0; i < kProfileCount; ++i) {
      double v = p.profile.mass(FocalSet{1} << i);
      singles += v;
      out << ',' << format_double(v);
    }
    out << ',' << format_double(1.0 - singles);
    for (int i = 0; i < kProfileCount; ++i) out << ',' << format_double(p.betp[i]);
    out << ',' << to_string(p.decided) << '\n';
  }
}

std::map<std::string, ProfileLabel> parse_profiles_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw SchemaError("'" + path + "' is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line.rfind("contributor_id,", 0) != 0)
    throw SchemaError("line 1: not a profile CSV header");
  std::map<std::string, ProfileLabel> out;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != 11)
      throw SchemaError("line " + std::to_string(lineno) + ": expected 11 fields");
    if (!out.emplace(fields[0], profile_from_string(fields[10])).second)
      throw SchemaError("line " + std::to_string(lineno) + ": duplicate contributor '" + fields[0] + "'");
  }
  return out;
}

}  // namespace crowdbelief
