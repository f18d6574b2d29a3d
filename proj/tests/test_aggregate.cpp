#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <vector>

#include "crowdbelief/aggregate.hpp"
#include "crowdbelief/errors.hpp"
#include "crowdbelief/generator.hpp"

using namespace crowdbelief;

namespace {

Response resp(const std::string& c, const std::string& q, FocalSet x, int likert, double t) {
  Response r;
  r.contributor = c;
  r.question = q;
  r.selected = x;
  r.likert = likert;
  r.time_s = t;
  return r;
}

Question base_q(const std::string& id, const Frame& f, const std::string& gold, int imp_max) {
  return Question{id, f, gold, imp_max, false, ""};
}

}  // namespace

TEST_CASE("profile discounts validate range and ordering") {
  ProfileDiscounts d;
  CHECK_NOTHROW(d.validate());
  CHECK(d.of(ProfileLabel::Expert) == 1.0);
  CHECK(d.of(ProfileLabel::Bad) == 0.2);

  CHECK_THROWS_AS((ProfileDiscounts{0.8, 0.9, 0.4, 0.2}.validate()), ConfigError);  // e < g
  CHECK_THROWS_AS((ProfileDiscounts{1.0, 0.4, 0.4, 0.2}.validate()), ConfigError);  // g = a
  CHECK_THROWS_AS((ProfileDiscounts{1.0, 0.9, 0.2, 0.4}.validate()), ConfigError);  // a < b
  CHECK_THROWS_AS((ProfileDiscounts{1.2, 0.9, 0.4, 0.2}.validate()), ConfigError);  // range
  CHECK_NOTHROW((ProfileDiscounts{1.0, 0.9, 0.4, 0.4}.validate()));                 // a = b ok
}

TEST_CASE("combination rule names round-trip") {
  for (CombineRule r : {CombineRule::mean, CombineRule::conjunctive, CombineRule::dempster,
                        CombineRule::lns})
    CHECK(rule_from_string(to_string(r)) == r);
  CHECK_THROWS_AS(rule_from_string("voodoo"), ConfigError);
}

TEST_CASE("profile discounting weakens untrusted answers") {
  Frame f({"a", "b"});
  MassFunction m(f, {{1, 0.8}, {3, 0.2}});
  ProfileDiscounts d{1.0, 0.85, 0.40, 0.05};

  MassFunction kept = discount_by_profile(m, ProfileLabel::Expert, d);
  CHECK(kept.mass(1) == doctest::Approx(0.8));
  CHECK(kept.mass(3) == doctest::Approx(0.2));
  MassFunction bad = discount_by_profile(m, ProfileLabel::Bad, d);
  CHECK(bad.mass(1) == doctest::Approx(0.04));
  CHECK(bad.mass(3) == doctest::Approx(0.96));
  ProfileDiscounts zero{1.0, 0.85, 0.40, 0.0};
  CHECK(discount_by_profile(m, ProfileLabel::Bad, zero).is_vacuous());
}

TEST_CASE("single answer decides a question") {
  Frame f({"a", "b", "c"});
  std::vector<Question> qs{base_q("q1", f, "b", 2)};
  std::vector<Response> rs{resp("c1", "q1", 0b010, 6, 2.0)};
  Campaign c(qs, rs);

  AggregateOptions opt;
  opt.global_discount = 1.0;
  QuestionDecision d = aggregate_question(c, c.question("q1"), nullptr, {}, opt);
  CHECK(d.question == "q1");
  CHECK(d.combined == make_categorical(f, 0b010));
  CHECK(d.decided == "b");
  CHECK(d.decided_ix == 1);
  CHECK(d.betp[1] == doctest::Approx(1.0));
}

TEST_CASE("ties fall to the lowest frame index") {
  Frame f({"a", "b", "c"});
  std::vector<Question> qs{base_q("q1", f, "a", 2)};
  std::vector<Response> rs{resp("c1", "q1", 0b001, 6, 2.0), resp("c2", "q1", 0b010, 6, 2.0)};
  Campaign c(qs, rs);
  QuestionDecision d = aggregate_question(c, c.question("q1"), nullptr, {}, {});
  CHECK(d.betp[0] == doctest::Approx(d.betp[1]));
  CHECK(d.decided == "a");
}

TEST_CASE("mean aggregation follows the plurality") {
  Frame f({"a", "b", "c"});
  std::vector<Question> qs{base_q("q1", f, "a", 2)};
  std::vector<Response> rs{resp("c1", "q1", 0b001, 6, 2.0), resp("c2", "q1", 0b001, 6, 2.0),
                           resp("c3", "q1", 0b010, 6, 2.0)};
  Campaign c(qs, rs);
  QuestionDecision d = aggregate_question(c, c.question("q1"), nullptr, {}, {});
  CHECK(d.decided == "a");
  CHECK(d.betp[0] > d.betp[1]);

  std::vector<Question> q2{base_q("q9", f, "a", 2)};
  Campaign unanswered(q2, {});
  CHECK_THROWS_AS(aggregate_question(unanswered, unanswered.question("q9"), nullptr, {}, {}),
                  NoResponses);
}

TEST_CASE("profiles gate whose answers carry weight") {
  Frame f({"a", "b"});
  std::vector<Question> qs{base_q("q1", f, "a", 1)};
  std::vector<Response> rs{resp("good_c", "q1", 0b01, 6, 2.0), resp("bad_c", "q1", 0b10, 6, 2.0)};
  Campaign c(qs, rs);

  std::map<std::string, ProfileLabel> trust_first{{"good_c", ProfileLabel::Expert},
                                                  {"bad_c", ProfileLabel::Bad}};
  std::map<std::string, ProfileLabel> trust_second{{"good_c", ProfileLabel::Bad},
                                                   {"bad_c", ProfileLabel::Expert}};
  CHECK(aggregate_question(c, c.question("q1"), &trust_first, {}, {}).decided == "a");
  CHECK(aggregate_question(c, c.question("q1"), &trust_second, {}, {}).decided == "b");

  std::map<std::string, ProfileLabel> incomplete{{"good_c", ProfileLabel::Expert}};
  CHECK_THROWS_AS(aggregate_question(c, c.question("q1"), &incomplete, {}, {}), ConfigError);
  ProfileDiscounts backwards{0.2, 0.4, 0.85, 1.0};
  CHECK_THROWS_AS(aggregate_question(c, c.question("q1"), &trust_first, backwards, {}),
                  ConfigError);
}

TEST_CASE("dempster aggregation equals conflict-renormalized conjunctive") {
  Frame f({"a", "b", "c"});
  auto specs = default_profile_specs(f.size());
  std::vector<std::pair<ProfileSpec, int>> plan{{specs[0], 2}, {specs[2], 3}};
  GeneratedCampaign g = generate_synthetic_campaign(plan, 25, f, 2, 2, 11);

  AggregateOptions conj;
  conj.rule = CombineRule::conjunctive;
  AggregateOptions demp;
  demp.rule = CombineRule::dempster;
  auto dc = aggregate_campaign(g.campaign, nullptr, {}, conj, Execution::serial);
  auto dd = aggregate_campaign(g.campaign, nullptr, {}, demp, Execution::serial);
  REQUIRE(dc.size() == dd.size());
  REQUIRE(dc.size() == 25);
  for (std::size_t i = 0; i < dc.size(); ++i) {
    CHECK(dc[i].decided == dd[i].decided);
    for (int l = 0; l < f.size(); ++l)
      CHECK(dc[i].betp[l] == doctest::Approx(dd[i].betp[l]).epsilon(1e-9));
    CHECK(dd[i].combined.conflict() == 0.0);
  }
}

TEST_CASE("lns aggregation clusters concordant answers") {
  Frame f({"a", "b", "c"});
  std::vector<Question> qs{base_q("q1", f, "a", 2)};
  std::vector<Response> rs{resp("c1", "q1", 0b001, 5, 2.0), resp("c2", "q1", 0b001, 5, 2.0),
                           resp("c3", "q1", 0b010, 5, 2.0), resp("c4", "q1", 0b001, 0, 2.0)};
  Campaign c(qs, rs);
  AggregateOptions opt;
  opt.rule = CombineRule::lns;
  QuestionDecision d = aggregate_question(c, c.question("q1"), nullptr, {}, opt);
  CHECK(d.decided == "a");
  CHECK(d.betp[0] > d.betp[1]);

  // only vacuous answers (likert 0) -> vacuous combination
  std::vector<Response> quiet{resp("c1", "q1", 0b001, 0, 2.0)};
  Campaign cq(qs, quiet);
  CHECK(aggregate_question(cq, cq.question("q1"), nullptr, {}, opt).combined.is_vacuous());
}

TEST_CASE("subset decision honors the imprecision cap") {
  Frame f({"a", "b", "c"});
  std::vector<Question> qs{base_q("q1", f, "a", 2)};
  std::vector<Response> rs{resp("c1", "q1", 0b011, 6, 2.0), resp("c2", "q1", 0b011, 6, 2.0)};
  Campaign c(qs, rs);
  AggregateOptions opt;
  opt.decide_sets = true;
  QuestionDecision d = aggregate_question(c, c.question("q1"), nullptr, {}, opt);
  CHECK(d.decided_set == 0b011);  // the pair itself, allowed since imp_max = 2
  CHECK(d.decided == "a");        // betP tie inside the pair goes to the lower index
}

TEST_CASE("mean aggregation reproduces plurality voting on precise ballots") {
  Frame f({"a", "b", "c", "d"});
  std::mt19937_64 rng(31);
  std::vector<Question> qs;
  std::vector<Response> rs;
  const int nq = 40, nc = 7;
  for (int i = 0; i < nq; ++i) qs.push_back(base_q("q" + std::to_string(i), f, "a", 1));
  for (int ci = 0; ci < nc; ++ci)
    for (int i = 0; i < nq; ++i)
      rs.push_back(resp("c" + std::to_string(ci), "q" + std::to_string(i),
                        FocalSet{1} << (rng() % 4), 6, 2.0));
  Campaign c(qs, rs);

  auto decisions = aggregate_campaign(c, nullptr, {}, {}, Execution::serial);
  REQUIRE(decisions.size() == static_cast<std::size_t>(nq));
  for (const QuestionDecision& d : decisions) {
    int counts[4] = {0, 0, 0, 0};
    for (int i : c.responses_to(d.question)) {
      FocalSet x = c.responses()[i].selected;
      for (int l = 0; l < 4; ++l)
        if (x == (FocalSet{1} << l)) ++counts[l];
    }
    int winner = 0;
    for (int l = 1; l < 4; ++l)
      if (counts[l] > counts[winner]) winner = l;
    CHECK(d.decided_ix == winner);
  }
}

TEST_CASE("aggregate_campaign skips attention questions and keeps order") {
  Frame f({"a", "b"});
  std::vector<Question> qs{base_q("q1", f, "a", 1), base_q("q2", f, "b", 1),
                           Question{"a01", f, "a", 1, true, "q1"}};
  std::vector<Response> rs{resp("c1", "q1", 1, 6, 2.0), resp("c1", "q2", 2, 6, 2.0),
                           resp("c1", "a01", 1, 6, 2.0)};
  Campaign c(qs, rs);
  auto ds = aggregate_campaign(c, nullptr, {}, {}, Execution::serial);
  REQUIRE(ds.size() == 2);
  CHECK(ds[0].question == "q1");
  CHECK(ds[1].question == "q2");
}

TEST_CASE("serial and parallel aggregation agree bit for bit") {
  Frame f({"a", "b", "c", "d"});
  auto specs = default_profile_specs(f.size());
  std::vector<std::pair<ProfileSpec, int>> plan{
      {specs[0], 3}, {specs[1], 3}, {specs[2], 3}, {specs[3], 3}};
  GeneratedCampaign g = generate_synthetic_campaign(plan, 30, f, 2, 3, 77);

  for (CombineRule rule : {CombineRule::mean, CombineRule::lns}) {
    AggregateOptions opt;
    opt.rule = rule;
    opt.decide_sets = true;
    auto ser = aggregate_campaign(g.campaign, nullptr, {}, opt, Execution::serial);
    auto par = aggregate_campaign(g.campaign, nullptr, {}, opt, Execution::parallel);
    REQUIRE(ser.size() == par.size());
    for (std::size_t i = 0; i < ser.size(); ++i) {
      CHECK(ser[i].question == par[i].question);
      CHECK(ser[i].combined == par[i].combined);
      CHECK(ser[i].betp == par[i].betp);
      CHECK(ser[i].decided_ix == par[i].decided_ix);
      CHECK(ser[i].decided_set == par[i].decided_set);
    }
  }
}

TEST_CASE("per-contributor validity rate") {
  Frame f({"a", "b"});
  std::vector<Question> qs{base_q("q1", f, "a", 2), base_q("q2", f, "a", 2),
                           base_q("q3", f, "", 2), Question{"a01", f, "a", 2, true, "q1"}};
  std::vector<Response> rs{resp("c1", "q1", 0b01, 6, 2.0), resp("c1", "q2", 0b11, 6, 2.0),
                           resp("c1", "q3", 0b01, 6, 2.0), resp("c1", "a01", 0b01, 6, 2.0),
                           resp("c2", "q1", 0b10, 6, 2.0), resp("c3", "q3", 0b01, 6, 2.0)};
  Campaign c(qs, rs);
  // hit (1) and half-credit hit (0.5); gold-less and attention answers ignored
  CHECK(contributor_crr(c, "c1") == doctest::Approx(0.75));
  CHECK(contributor_crr(c, "c2") == doctest::Approx(0.0));
  CHECK_THROWS_AS(contributor_crr(c, "c3"), NoGoldQuestions);
}

TEST_CASE("crowd validity requires gold labels") {
  Frame f({"a", "b"});
  std::vector<Question> qs{base_q("q1", f, "a", 1), base_q("q2", f, "b", 1)};
  std::vector<Response> rs{resp("c1", "q1", 1, 6, 2.0), resp("c1", "q2", 1, 6, 2.0)};
  Campaign c(qs, rs);
  auto ds = aggregate_campaign(c, nullptr, {}, {}, Execution::serial);
  CHECK(crowd_crr(ds, c) == doctest::Approx(0.5));  // q1 right, q2 wrong
  CHECK_THROWS_AS(crowd_crr({}, c), EmptyInput);

  std::vector<Question> no_gold{base_q("q1", f, "", 1)};
  Campaign cn(no_gold, {resp("c1", "q1", 1, 6, 2.0)});
  auto dn = aggregate_campaign(cn, nullptr, {}, {}, Execution::serial);
  CHECK_THROWS_AS(crowd_crr(dn, cn), MissingGold);
}

TEST_CASE("decision csv lists one scored row per question") {
  Frame f({"a", "b"});
  std::vector<Question> qs{base_q("q1", f, "a", 1), base_q("q2", f, "b", 1)};
  std::vector<Response> rs{resp("c1", "q1", 1, 6, 2.0), resp("c1", "q2", 1, 6, 2.0)};
  Campaign c(qs, rs);
  auto ds = aggregate_campaign(c, nullptr, {}, {}, Execution::serial);
  std::string path = "/tmp/crowdbelief_test_decisions.csv";
  write_decisions_csv(ds, c, path);
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "question_id,decided,gold,correct,betp_top1,betp_top2,conflict_mass");
  std::getline(in, line);
  CHECK(line.rfind("q1,a,a,1,", 0) == 0);
  std::getline(in, line);
  CHECK(line.rfind("q2,a,b,0,", 0) == 0);
  std::remove(path.c_str());
}
