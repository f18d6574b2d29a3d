#include "crowdbelief/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>

#include "crowdbelief/baselines.hpp"
#include "crowdbelief/csv.hpp"
#include "crowdbelief/errors.hpp"
#include "crowdbelief/quantile.hpp"

namespace crowdbelief {

ProfileLabel reference_profile_from_crr(double crr) {
  if (crr < 0.0 || crr > 1.0) throw ArgOutOfRange("crr must be in [0,1]");
  if (crr <= 0.2) return ProfileLabel::Bad;
  if (crr < 0.5) return ProfileLabel::Average;
  if (crr < 0.85) return ProfileLabel::Good;
  return ProfileLabel::Expert;
}

ContributorSplit split_contributors(const Campaign& campaign, double train_fraction,
                                    std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw ArgOutOfRange("train fraction must be in (0,1)");
  std::vector<std::string> pool = campaign.contributors();
  if (pool.size() < 2) throw TooFewContributors("splitting needs at least 2 contributors");
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i + 1 < pool.size(); ++i) {
    std::size_t j = i + rng() % (pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  auto n_train = static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(pool.size())));
  n_train = std::clamp<std::size_t>(n_train, 1, pool.size() - 1);
  ContributorSplit out;
  out.train.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n_train));
  out.test.assign(pool.begin() + static_cast<std::ptrdiff_t>(n_train), pool.end());
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

namespace {

void require_gold(const Campaign& campaign) {
  for (const Question& q : campaign.questions())
    if (!q.is_attention && q.has_gold()) return;
  throw NoGold("campaign has no gold labels to learn from");
}

}  // namespace

AlphaSearchResult learn_characteristic_alphas(const Campaign& campaign, int grid_max,
                                              double train_fraction, std::uint64_t seed,
                                              const CharDiscounts& d, const LikertScale& scale,
                                              Execution exec) {
  if (grid_max < 1) throw ArgOutOfRange("grid_max must be >= 1");
  require_gold(campaign);
  ContributorSplit split = split_contributors(campaign, train_fraction, seed);

  std::vector<CharacteristicProfile> cps = characteristic_profiles(campaign, d, scale, exec);
  std::map<std::string, const CharacteristicProfile*> by_name;
  for (const CharacteristicProfile& cp : cps) by_name[cp.contributor] = &cp;
  std::map<std::string, ProfileLabel> ref;
  for (const std::string& c : campaign.contributors())
    ref[c] = reference_profile_from_crr(contributor_crr(campaign, c));

  auto score_side = [&](const std::vector<std::string>& side, const FusionWeights& w) {
    int hits = 0;
    for (const std::string& c : side)
      if (fuse_and_decide(*by_name.at(c), w).decided == ref.at(c)) ++hits;
    return static_cast<double>(hits) / static_cast<double>(side.size());
  };

  // Flat index = p*base^3 + c*base^2 + r*base + a, so ascending order is
  // lexicographic in (p,c,r,a) and the first maximum is the tie winner.
  const auto base = static_cast<std::size_t>(grid_max + 1);
  const std::size_t total = base * base * base * base;
  std::vector<double> scores(total, -1.0);
  parallel_for(total, exec, [&](std::size_t ix) {
    if (ix == 0) return;  // the all-zero tuple is excluded
    FusionWeights w{static_cast<double>(ix / (base * base * base)),
                    static_cast<double>((ix / (base * base)) % base),
                    static_cast<double>((ix / base) % base),
                    static_cast<double>(ix % base)};
    scores[ix] = score_side(split.train, w);
  });
  std::size_t best = 1;
  for (std::size_t ix = 2; ix < total; ++ix)
    if (scores[ix] > scores[best]) best = ix;

  AlphaSearchResult out;
  out.weights = FusionWeights{static_cast<double>(best / (base * base * base)),
                              static_cast<double>((best / (base * base)) % base),
                              static_cast<double>((best / base) % base),
                              static_cast<double>(best % base)};
  out.train_ccr = scores[best];
  out.test_ccr = score_side(split.test, out.weights);
  return out;
}

DiscountSearchResult learn_profile_discounts(const Campaign& campaign,
                                             const std::map<std::string, ProfileLabel>& profiles,
                                             double train_fraction, std::uint64_t seed,
                                             const AggregateOptions& opt, Execution exec) {
  require_gold(campaign);
  for (const std::string& c : campaign.contributors())
    if (profiles.find(c) == profiles.end())
      throw ConfigError("no profile for contributor '" + c + "'");

  ContributorSplit split = split_contributors(campaign, train_fraction, seed);
  Campaign train = campaign.restrict_to(split.train);
  Campaign test = campaign.restrict_to(split.test);

  // Grid in integer hundredths, ascending lexicographic (expert, good,
  // average, bad) order; the first maximum is the tie winner.
  struct Tuple {
    int e, g, a, b;
  };
  std::vector<Tuple> grid;
  for (int e = 50; e <= 100; e += 5)
    for (int g = 50; g <= 85; g += 5)
      for (int a = 20; a <= 70; a += 5)
        for (int b = 0; b <= 20; b += 5)
          if (e > g && g > a && a >= b) grid.push_back({e, g, a, b});

  auto to_discounts = [](const Tuple& t) {
    return ProfileDiscounts{t.e / 100.0, t.g / 100.0, t.a / 100.0, t.b / 100.0};
  };

  std::vector<double> scores(grid.size(), -1.0);
  parallel_for(grid.size(), exec, [&](std::size_t i) {
    auto decisions = aggregate_campaign(train, &profiles, to_discounts(grid[i]), opt,
                                        Execution::serial);
    scores[i] = crowd_crr(decisions, train);
  });
  std::size_t best = 0;
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (scores[i] > scores[best]) best = i;

  DiscountSearchResult out;
  out.discounts = to_discounts(grid[best]);
  out.train_crr = scores[best];
  out.test_crr = crowd_crr(
      aggregate_campaign(test, &profiles, out.discounts, opt, Execution::serial), test);
  return out;
}

namespace {

double method_crr(const std::string& method, const Campaign& sub, const ExperimentConfig& cfg,
                  const std::map<std::string, ProfileLabel>& monitor_profiles,
                  const std::map<std::string, ProfileLabel>& rjab_profiles) {
  if (method == "mv") {
    int hits = 0;
    int total = 0;
    for (const Question& q : sub.questions()) {
      if (q.is_attention || sub.responses_to(q.id).empty()) continue;
      if (!q.has_gold()) throw MissingGold("question '" + q.id + "' has no gold label");
      ++total;
      if (majority_vote(sub, q) == q.gold) ++hits;
    }
    if (total == 0) throw EmptyInput("no scorable questions");
    return static_cast<double>(hits) / static_cast<double>(total);
  }
  if (method == "em") {
    EmResult em = em_dawid_skene(sub);
    int hits = 0;
    for (std::size_t i = 0; i < em.question_ids.size(); ++i) {
      const Question& q = sub.question(em.question_ids[i]);
      if (!q.has_gold()) throw MissingGold("question '" + q.id + "' has no gold label");
      if (em.frame.label(em.decided[i]) == q.gold) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(em.question_ids.size());
  }
  if (method == "monitor")
    return crowd_crr(
        aggregate_campaign(sub, &monitor_profiles, cfg.discounts, cfg.agg, Execution::serial),
        sub);
  if (method == "rjab")
    return crowd_crr(
        aggregate_campaign(sub, &rjab_profiles, cfg.discounts, cfg.agg, Execution::serial), sub);
  // mean09: profile-blind mean combination with a flat 0.9 discount
  AggregateOptions flat = cfg.agg;
  flat.rule = CombineRule::mean;
  flat.global_discount = 0.9;
  return crowd_crr(aggregate_campaign(sub, nullptr, cfg.discounts, flat, Execution::serial), sub);
}

}  // namespace

std::vector<CurvePoint> bootstrap_curves(const Campaign& campaign, const ExperimentConfig& cfg,
                                         Execution exec) {
  if (cfg.sizes.empty()) throw ConfigError("no crowd sizes given");
  if (cfg.repetitions < 1) throw ConfigError("repetitions must be >= 1");
  if (cfg.methods.empty()) throw ConfigError("no methods given");
  const std::vector<std::string>& all = campaign.contributors();
  for (int n : cfg.sizes) {
    if (n < 2) throw ConfigError("crowd sizes must be >= 2");
    if (n > static_cast<int>(all.size()))
      throw SizeExceedsCrowd("crowd size " + std::to_string(n) + " exceeds the " +
                             std::to_string(all.size()) + " available contributors");
  }
  bool want_monitor = false;
  bool want_rjab = false;
  for (const std::string& m : cfg.methods) {
    if (m == "monitor") want_monitor = true;
    else if (m == "rjab") want_rjab = true;
    else if (m != "mv" && m != "em" && m != "mean09")
      throw ConfigError("unknown method '" + m + "'");
  }
  cfg.discounts.validate();

  std::map<std::string, ProfileLabel> monitor_profiles;
  if (want_monitor)
    for (const ContributorProfile& p :
         profile_contributors(campaign, cfg.weights, cfg.char_discounts, cfg.agg.scale, exec))
      monitor_profiles[p.contributor] = p.decided;

  std::map<std::string, ProfileLabel> rjab_profiles;
  if (want_rjab) {
    std::map<std::string, std::vector<double>> f;
    for (const std::string& c : all) {
      double de = std::clamp(rjab_de(campaign, c, cfg.agg.scale), 0.0, 1.0);
      double dp = std::clamp(rjab_dp(campaign, c, cfg.agg.scale), 0.0, 1.0);
      f[c] = {rjab_dg(de, dp, cfg.beta)};
    }
    rjab_profiles = kmeans_profiles(f, cfg.seed);
  }

  const std::size_t S = cfg.sizes.size();
  const auto R = static_cast<std::size_t>(cfg.repetitions);
  const std::size_t Mn = cfg.methods.size();
  std::vector<double> crr(S * R * Mn, 0.0);
  parallel_for(S * R, exec, [&](std::size_t t) {
    const std::size_t si = t / R;
    const std::size_t r = t % R;
    const int n = cfg.sizes[si];
    std::mt19937_64 rng(sub_seed(cfg.seed, static_cast<std::uint64_t>(n), r));
    std::vector<std::string> pool = all;
    for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
      std::size_t j = i + rng() % (pool.size() - i);
      std::swap(pool[i], pool[j]);
    }
    pool.resize(static_cast<std::size_t>(n));
    Campaign sub = campaign.restrict_to(pool);
    for (std::size_t mi = 0; mi < Mn; ++mi)
      crr[(si * R + r) * Mn + mi] =
          method_crr(cfg.methods[mi], sub, cfg, monitor_profiles, rjab_profiles);
  });

  std::vector<CurvePoint> out;
  out.reserve(Mn * S);
  for (std::size_t mi = 0; mi < Mn; ++mi)
    for (std::size_t si = 0; si < S; ++si) {
      std::vector<double> vals(R);
      for (std::size_t r = 0; r < R; ++r) vals[r] = crr[(si * R + r) * Mn + mi];
      double mean = std::accumulate(vals.begin(), vals.end(), 0.0) / static_cast<double>(R);
      double lo = std::min(quantile_type7(vals, 0.025), mean);
      double hi = std::max(quantile_type7(vals, 0.975), mean);
      out.push_back({cfg.methods[mi], cfg.sizes[si], mean, lo, hi});
    }
  return out;
}

void write_curves_csv(const std::vector<CurvePoint>& points, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw SchemaError("cannot write '" + path + "'");
  out << "method,n,mean_crr,ci_low,ci_high\n";
  for (const CurvePoint& p : points)
    out << p.method << ',' << p.n << ',' << format_double(p.mean_crr) << ','
        << format_double(p.ci_low) << ',' << format_double(p.ci_high) << '\n';
}

}  // namespace crowdbelief
