#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <vector>

#include "crowdbelief/baselines.hpp"
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

GeneratedCampaign medium_campaign(std::uint64_t seed) {
  Frame f({"a", "b", "c", "d"});
  auto specs = default_profile_specs(f.size());
  std::vector<std::pair<ProfileSpec, int>> plan{
      {specs[0], 3}, {specs[1], 3}, {specs[2], 3}, {specs[3], 3}};
  return generate_synthetic_campaign(plan, 30, f, 2, 3, seed);
}

}  // namespace

TEST_CASE("fractional majority vote") {
  Frame f({"a", "b", "c"});
  std::vector<Question> qs{base_q("q1", f, "a", 2), base_q("q2", f, "a", 2),
                           base_q("q3", f, "a", 2)};
  std::vector<Response> rs{
      resp("c1", "q1", 0b001, 6, 1.0), resp("c2", "q1", 0b001, 6, 1.0),
      resp("c3", "q1", 0b010, 6, 1.0),
      // q2: half a vote for each of a,b against a full vote for b
      resp("c1", "q2", 0b011, 6, 1.0), resp("c2", "q2", 0b010, 6, 1.0),
      // q3: single voter
      resp("c1", "q3", 0b100, 6, 1.0)};
  Campaign c(qs, rs);

  CHECK(majority_vote(c, c.question("q1")) == "a");
  CHECK(majority_vote(c, c.question("q2")) == "b");  // 1.5 beats 0.5
  CHECK(majority_vote(c, c.question("q3")) == "c");

  // exact tie breaks toward the lower frame index
  std::vector<Question> qt{base_q("t1", f, "a", 2)};
  std::vector<Response> rt{resp("c1", "t1", 0b001, 6, 1.0), resp("c2", "t1", 0b010, 6, 1.0)};
  Campaign ct(qt, rt);
  CHECK(majority_vote(ct, ct.question("t1")) == "a");
}

TEST_CASE("dawid-skene recovers labels from a clean crowd") {
  Frame f({"a", "b", "c"});
  std::vector<Question> qs;
  std::vector<Response> rs;
  const char* golds[3] = {"a", "b", "c"};
  for (int i = 0; i < 18; ++i) {
    std::string id = "q" + std::to_string(i);
    qs.push_back(base_q(id, f, golds[i % 3], 2));
    for (int ci = 0; ci < 4; ++ci)
      rs.push_back(resp("c" + std::to_string(ci), id, FocalSet{1} << (i % 3), 6, 2.0));
  }
  Campaign c(qs, rs);

  EmResult em = em_dawid_skene(c);
  CHECK(em.converged);
  REQUIRE(em.question_ids.size() == 18);
  for (std::size_t i = 0; i < em.question_ids.size(); ++i) {
    int gold_ix = c.question(em.question_ids[i]).gold_index();
    CHECK(em.decided[i] == gold_ix);
    CHECK(em.posteriors[i][static_cast<std::size_t>(gold_ix)] > 0.999);
  }
  REQUIRE(em.confusions.size() == 4);
  for (const ConfusionMatrix& cm : em.confusions) {
    for (std::size_t l = 0; l < 3; ++l) {
      CHECK(cm.rows[l][l] > 0.99);
      double row = cm.rows[l][0] + cm.rows[l][1] + cm.rows[l][2];
      CHECK(row == doctest::Approx(1.0));
    }
    CHECK(em_ppv(cm) > 0.99);
  }
  double prior_total = em.priors[0] + em.priors[1] + em.priors[2];
  CHECK(prior_total == doctest::Approx(1.0));
}

TEST_CASE("dawid-skene log-likelihood never decreases") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull, 5ull}) {
    GeneratedCampaign g = medium_campaign(seed);
    for (EmExpansion ex : {EmExpansion::fractional, EmExpansion::collapsed}) {
      EmResult em = em_dawid_skene(g.campaign, 200, 1e-8, ex);
      REQUIRE(!em.loglik.empty());
      for (std::size_t i = 1; i < em.loglik.size(); ++i)
        CHECK(em.loglik[i] >= em.loglik[i - 1] - 1e-9);
      CHECK(em.converged);
    }
  }
}

TEST_CASE("dawid-skene outperforms chance on a noisy crowd") {
  GeneratedCampaign g = medium_campaign(97);
  EmResult em = em_dawid_skene(g.campaign);
  int hits = 0;
  for (std::size_t i = 0; i < em.question_ids.size(); ++i)
    if (em.decided[i] == g.campaign.question(em.question_ids[i]).gold_index()) ++hits;
  CHECK(static_cast<double>(hits) / em.question_ids.size() > 0.5);  // chance = 0.25
  // attention questions stay out of the estimation
  for (const std::string& id : em.question_ids) CHECK(!g.campaign.question(id).is_attention);
}

TEST_CASE("dawid-skene demands one shared frame") {
  Frame f1({"a", "b"});
  Frame f2({"x", "y", "z"});
  std::vector<Question> qs{base_q("q1", f1, "a", 1), base_q("q2", f2, "x", 1)};
  std::vector<Response> rs{resp("c1", "q1", 1, 6, 2.0), resp("c1", "q2", 1, 6, 2.0)};
  Campaign c(qs, rs);
  CHECK_THROWS_AS(em_dawid_skene(c), IncompatibleFrames);
  CHECK_THROWS_AS(em_dawid_skene(Campaign({base_q("q", f1, "a", 1)}, {})), EmptyInput);
  Campaign ok(std::vector<Question>{base_q("q1", f1, "a", 1)},
              std::vector<Response>{resp("c1", "q1", 1, 6, 2.0)});
  CHECK_THROWS_AS(em_dawid_skene(ok, 0), ArgOutOfRange);
}

TEST_CASE("collapsed expansion reduces a selection to its first label") {
  Frame f({"a", "b", "c"});
  std::vector<Question> qs{base_q("q1", f, "a", 2)};
  // both contributors hedge {a,b}; collapsed mode reads that as 'a'
  std::vector<Response> rs{resp("c1", "q1", 0b011, 6, 2.0), resp("c2", "q1", 0b011, 6, 2.0)};
  Campaign c(qs, rs);
  EmResult em = em_dawid_skene(c, 50, 1e-8, EmExpansion::collapsed);
  CHECK(em.decided[0] == 0);
  CHECK(em.posteriors[0][0] > 0.99);
}

TEST_CASE("positive predictive value of a confusion matrix") {
  ConfusionMatrix identity{"c", {{1.0, 0.0}, {0.0, 1.0}}};
  CHECK(em_ppv(identity) == doctest::Approx(1.0));

  ConfusionMatrix example{"c", {{0.8, 0.2}, {0.4, 0.6}}};
  // (0.8/1.2 + 0.6/0.8) / 2
  CHECK(em_ppv(example) == doctest::Approx(0.708333).epsilon(1e-5));

  ConfusionMatrix uniform{"c", std::vector<std::vector<double>>(
                                   10, std::vector<double>(10, 0.1))};
  CHECK(em_ppv(uniform) == doctest::Approx(0.1));

  ConfusionMatrix half_zero{"c", {{1.0, 0.0}, {1.0, 0.0}}};
  CHECK(em_ppv(half_zero) == doctest::Approx(0.5));  // only the first column counts

  ConfusionMatrix zero{"c", {{0.0, 0.0}, {0.0, 0.0}}};
  CHECK_THROWS_AS(em_ppv(zero), DegenerateMatrix);
}

TEST_CASE("correctness degree compares against the crowd mean") {
  Frame f({"a", "b"});
  std::vector<Question> qs{base_q("q1", f, "a", 1), base_q("q2", f, "a", 1)};
  std::vector<Response> agree{resp("c1", "q1", 1, 6, 1.0), resp("c2", "q1", 1, 6, 1.0),
                              resp("c1", "q2", 1, 6, 1.0), resp("c2", "q2", 1, 6, 1.0)};
  Campaign ca(qs, agree);
  CHECK(rjab_de(ca, "c1") == doctest::Approx(1.0));

  std::vector<Response> clash{resp("c1", "q1", 1, 6, 1.0), resp("c2", "q1", 2, 6, 1.0)};
  Campaign cc({qs[0]}, clash);
  CHECK(rjab_de(cc, "c1") == doctest::Approx(0.0));
  CHECK(rjab_de(cc, "c2") == doctest::Approx(0.0));

  std::vector<Response> alone{resp("c1", "q1", 1, 6, 1.0)};
  Campaign cl({qs[0]}, alone);
  CHECK_THROWS_AS(rjab_de(cl, "c1"), LoneContributor);
  CHECK_THROWS_AS(rjab_de(cl, "ghost"), NoResponses);
}

TEST_CASE("precision degree takes declared support literally") {
  Frame f({"a", "b", "c", "d"});
  std::vector<Question> qs{base_q("q1", f, "a", 4)};

  // fully certain precise answer
  Campaign c1({qs[0]}, {resp("c1", "q1", 0b0001, 6, 1.0)});
  CHECK(rjab_dp(c1, "c1") == doctest::Approx(1.0));

  // whole frame selected with full support: declared omega counts against it
  Campaign c2({qs[0]}, {resp("c1", "q1", 0b1111, 6, 1.0)});
  CHECK(rjab_dp(c2, "c1") == doctest::Approx(0.0));

  // whole frame with zero support scores 1 even though it says nothing
  Campaign c3({qs[0]}, {resp("c1", "q1", 0b1111, 0, 1.0)});
  CHECK(rjab_dp(c3, "c1") == doctest::Approx(1.0));

  // half-sure pair on a 4-frame: 0.5 * (1 - 1/2)
  Campaign c4({qs[0]}, {resp("c1", "q1", 0b0011, 3, 1.0)});
  CHECK(rjab_dp(c4, "c1") == doctest::Approx(0.25));
}

TEST_CASE("global degree blends the two") {
  CHECK(rjab_dg(0.6, 0.4, 0.5) == doctest::Approx(0.5));
  CHECK(rjab_dg(0.6, 0.4, 1.0) == doctest::Approx(0.6));
  CHECK(rjab_dg(0.6, 0.4, 0.0) == doctest::Approx(0.4));
  CHECK_THROWS_AS(rjab_dg(1.2, 0.4, 0.5), ArgOutOfRange);
  CHECK_THROWS_AS(rjab_dg(0.6, -0.1, 0.5), ArgOutOfRange);
  CHECK_THROWS_AS(rjab_dg(0.6, 0.4, 1.5), ArgOutOfRange);
}

TEST_CASE("kmeans recovers well-separated clusters") {
  std::vector<std::vector<double>> pts;
  double centers[4][2] = {{0.0, 0.0}, {10.0, 0.0}, {0.0, 10.0}, {10.0, 10.0}};
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 5; ++i)
      pts.push_back({centers[k][0] + 0.01 * i, centers[k][1] - 0.01 * i});

  KmeansResult km = kmeans(pts, 4, 3);
  REQUIRE(km.assignment.size() == pts.size());
  // every true cluster maps to exactly one kmeans cluster
  for (int k = 0; k < 4; ++k)
    for (int i = 1; i < 5; ++i) CHECK(km.assignment[5 * k + i] == km.assignment[5 * k]);
  std::set<int> distinct(km.assignment.begin(), km.assignment.end());
  CHECK(distinct.size() == 4);

  for (std::size_t i = 1; i < km.sse_trace.size(); ++i)
    CHECK(km.sse_trace[i] <= km.sse_trace[i - 1] + 1e-12);

  KmeansResult again = kmeans(pts, 4, 3);
  CHECK(again.assignment == km.assignment);
  CHECK(again.centers == km.centers);

  // degenerate data collapses into one occupied cluster
  std::vector<std::vector<double>> same(6, {1.0, 1.0});
  KmeansResult deg = kmeans(same, 2, 0);
  for (int a : deg.assignment) CHECK(a == deg.assignment[0]);

  CHECK_THROWS_AS(kmeans(pts, 0, 0), ArgOutOfRange);
  CHECK_THROWS_AS(kmeans(std::vector<std::vector<double>>(2, {0.0}), 4, 0), TooFewContributors);
}

TEST_CASE("kmeans profiling ranks clusters by their first feature") {
  std::map<std::string, std::vector<double>> features;
  double levels[4] = {0.05, 0.35, 0.65, 0.95};
  const char* tags[4] = {"bad", "avg", "good", "exp"};
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 3; ++i)
      features[std::string(tags[k]) + std::to_string(i)] = {levels[k] + 0.001 * i};

  auto profiles = kmeans_profiles(features, 5);
  for (int i = 0; i < 3; ++i) {
    CHECK(profiles.at("bad" + std::to_string(i)) == ProfileLabel::Bad);
    CHECK(profiles.at("avg" + std::to_string(i)) == ProfileLabel::Average);
    CHECK(profiles.at("good" + std::to_string(i)) == ProfileLabel::Good);
    CHECK(profiles.at("exp" + std::to_string(i)) == ProfileLabel::Expert);
  }
  CHECK_THROWS_AS(kmeans_profiles({{"a", {0.1}}, {"b", {0.2}}}, 0), TooFewContributors);
}

TEST_CASE("response-time validity flags extreme outliers only") {
  Frame f({"a", "b"});
  std::vector<Question> qs{base_q("q1", f, "a", 1)};
  std::vector<Response> rs;
  for (int i = 0; i < 4; ++i)
    rs.push_back(resp("c" + std::to_string(i), "q1", 1, 6, 1.0 + 0.1 * i));
  rs.push_back(resp("slow", "q1", 1, 6, 100.0));
  Campaign c(qs, rs);

  for (int i = 0; i < 4; ++i)
    CHECK(komarov_validity(c, "c" + std::to_string(i)) == doctest::Approx(1.0));
  CHECK(komarov_validity(c, "slow") == doctest::Approx(0.0));

  // a lone contributor defines the band itself: IQR 0 around its own time
  Campaign alone(qs, {resp("c1", "q1", 1, 6, 5.0)});
  CHECK(komarov_validity(alone, "c1") == doctest::Approx(1.0));
}

TEST_CASE("baseline report covers every contributor") {
  GeneratedCampaign g = medium_campaign(41);
  auto rows = baseline_report(g.campaign);
  REQUIRE(rows.size() == g.campaign.contributors().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].contributor == g.campaign.contributors()[i]);
    CHECK(rows[i].de >= 0.0);
    CHECK(rows[i].de <= 1.0);
    CHECK(rows[i].dp >= 0.0);
    CHECK(rows[i].dp <= 1.0);
    CHECK(rows[i].dg == doctest::Approx(0.5 * rows[i].de + 0.5 * rows[i].dp));
    CHECK(rows[i].ppv >= 0.0);
    CHECK(rows[i].ppv <= 1.0);
    CHECK(rows[i].komarov >= 0.0);
    CHECK(rows[i].komarov <= 1.0);
  }

  auto par = baseline_report(g.campaign, 0.5, 0, {}, Execution::parallel);
  REQUIRE(par.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(par[i].de == rows[i].de);  // bit-identical across execution modes
    CHECK(par[i].dg == rows[i].dg);
    CHECK(par[i].ppv == rows[i].ppv);
    CHECK(par[i].k_de_dp == rows[i].k_de_dp);
    CHECK(par[i].k_dg == rows[i].k_dg);
    CHECK(par[i].k_ppv == rows[i].k_ppv);
  }

  // planted experts should out-score planted spammers on the global degree
  std::map<std::string, ProfileLabel> planted(g.planted.begin(), g.planted.end());
  double dg_expert = 0.0, dg_bad = 0.0;
  int ne = 0, nb = 0;
  for (const BaselineRow& r : rows) {
    if (planted.at(r.contributor) == ProfileLabel::Expert) dg_expert += r.dg, ++ne;
    if (planted.at(r.contributor) == ProfileLabel::Bad) dg_bad += r.dg, ++nb;
  }
  REQUIRE(ne > 0);
  REQUIRE(nb > 0);
  CHECK(dg_expert / ne > dg_bad / nb);
}

TEST_CASE("baseline report csv") {
  GeneratedCampaign g = medium_campaign(43);
  auto rows = baseline_report(g.campaign);
  std::string path = "/tmp/crowdbelief_test_baselines.csv";
  write_baseline_report_csv(rows, path);
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line ==
        "contributor_id,de,dp,dg,ppv,komarov_validity,kmeans_profile_de_dp,kmeans_profile_dg,"
        "kmeans_profile_ppv");
  int n = 0;
  while (std::getline(in, line))
    if (!line.empty()) ++n;
  CHECK(n == static_cast<int>(rows.size()));
  std::remove(path.c_str());
}
