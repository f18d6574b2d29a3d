// Command-line front end: synthetic campaigns, contributor profiling,
// calibration searches, aggregation, baseline reports, and crowd-size
// comparison curves. Exit codes: 0 ok, 2 schema/config problem, 3 method
// not applicable to the given data.
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "crowdbelief/aggregate.hpp"
#include "crowdbelief/baselines.hpp"
#include "crowdbelief/experiments.hpp"
#include "crowdbelief/generator.hpp"
#include "crowdbelief/monitor.hpp"

using namespace crowdbelief;

namespace {

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_real(const std::string& s, const char* what) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(std::string(what) + ": '" + s + "' is not a number");
  }
}

std::vector<double> parse_reals(const std::string& s, std::size_t n, const char* what) {
  auto parts = split_commas(s);
  if (parts.size() != n)
    throw ConfigError(std::string(what) + ": expected " + std::to_string(n) +
                      " comma-separated values, got " + std::to_string(parts.size()));
  std::vector<double> out;
  for (const auto& p : parts) out.push_back(parse_real(p, what));
  return out;
}

FusionWeights parse_weights(const std::string& s) {
  auto v = parse_reals(s, 4, "--alphas");
  return FusionWeights{v[0], v[1], v[2], v[3]};
}

ProfileDiscounts parse_discounts(const std::string& s) {
  auto v = parse_reals(s, 4, "--discounts");
  return ProfileDiscounts{v[0], v[1], v[2], v[3]};
}

std::vector<int> parse_sizes(const std::string& s) {
  std::vector<int> out;
  for (const auto& p : split_commas(s)) {
    try {
      std::size_t pos = 0;
      int v = std::stoi(p, &pos);
      if (pos != p.size()) throw std::invalid_argument(p);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ConfigError("--sizes: '" + p + "' is not an integer");
    }
  }
  return out;
}

Frame default_frame(int frame_size) {
  if (frame_size < 2 || frame_size > kMaxFrameSize)
    throw ConfigError("--frame-size must be in [2, " + std::to_string(kMaxFrameSize) + "]");
  int width = static_cast<int>(std::to_string(frame_size).size());
  std::vector<std::string> labels;
  for (int i = 1; i <= frame_size; ++i) {
    std::string n = std::to_string(i);
    labels.push_back("opt" + std::string(width - static_cast<int>(n.size()), '0') + n);
  }
  return Frame(labels);
}

std::vector<std::pair<ProfileSpec, int>> parse_plan(const std::string& s, int frame_size) {
  auto specs = default_profile_specs(frame_size);
  std::vector<std::pair<ProfileSpec, int>> plan;
  for (const auto& part : split_commas(s)) {
    auto colon = part.find(':');
    if (colon == std::string::npos)
      throw ConfigError("--contributors: '" + part + "' is not name:count");
    ProfileLabel label = profile_from_string(part.substr(0, colon));
    int count;
    try {
      count = std::stoi(part.substr(colon + 1));
    } catch (const std::exception&) {
      throw ConfigError("--contributors: bad count in '" + part + "'");
    }
    plan.emplace_back(specs[static_cast<std::size_t>(label)], count);
  }
  return plan;
}

LnsWeighting parse_lns_mode(const std::string& s) {
  if (s == "diffidence") return LnsWeighting::diffidence;
  if (s == "support-product") return LnsWeighting::support_product;
  throw ConfigError("--lns-mode must be 'diffidence' or 'support-product'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Crowd labeling with belief functions: contributor profiling, "
               "profile-discounted aggregation, and baseline comparisons."};
  app.require_subcommand(1);
  bool serial = false;
  app.add_flag("--serial", serial, "run single-threaded (results are identical)");
  auto exec = [&] { return serial ? Execution::serial : Execution::parallel; };

  // ---- simulate ----
  struct {
    std::string contributors = "expert:8,good:16,average:16,bad:8";
    int questions = 50;
    int frame_size = 10;
    int imp_max = 5;
    int attention = 3;
    std::uint64_t seed = 42;
    std::string out;
    std::string truth_out;
  } sim;
  CLI::App* c_sim = app.add_subcommand("simulate", "generate a synthetic campaign");
  c_sim->add_option("--contributors", sim.contributors,
                    "planted crowd as name:count,... (expert/good/average/bad)");
  c_sim->add_option("--questions", sim.questions, "number of base questions");
  c_sim->add_option("--frame-size", sim.frame_size, "answer options per question");
  c_sim->add_option("--imp-max", sim.imp_max, "max options selectable at once");
  c_sim->add_option("--attention", sim.attention, "number of repeated attention questions");
  c_sim->add_option("--seed", sim.seed, "generator seed");
  c_sim->add_option("--out", sim.out, "campaign CSV path")->required();
  c_sim->add_option("--truth-out", sim.truth_out, "planted-profile CSV path");
  c_sim->callback([&] {
    GeneratedCampaign g =
        generate_synthetic_campaign(parse_plan(sim.contributors, sim.frame_size), sim.questions,
                                    default_frame(sim.frame_size), sim.imp_max, sim.attention,
                                    sim.seed);
    write_campaign_csv(g.campaign, sim.out);
    if (!sim.truth_out.empty()) write_truth_csv(g, sim.truth_out);
    std::printf("wrote %zu responses from %zu contributors over %zu questions to %s\n",
                g.campaign.responses().size(), g.campaign.contributors().size(),
                g.campaign.questions().size(), sim.out.c_str());
  });

  // ---- profile ----
  struct {
    std::string in;
    std::string alphas = "1,1,1,1";
    double char_discount = 0.9;
    std::string out;
  } prof;
  CLI::App* c_prof = app.add_subcommand("profile", "estimate contributor profiles");
  c_prof->add_option("--in", prof.in, "campaign CSV")->required();
  c_prof->add_option("--alphas", prof.alphas,
                     "fusion weights alpha_P,alpha_C,alpha_R,alpha_A "
                     "(precision, certainty, reflection, attention)");
  c_prof->add_option("--char-discount", prof.char_discount,
                     "reliability discount applied inside each characteristic");
  c_prof->add_option("--out", prof.out, "profiles CSV path")->required();
  c_prof->callback([&] {
    Campaign campaign = parse_campaign_csv(prof.in);
    CharDiscounts d{prof.char_discount, prof.char_discount, prof.char_discount,
                    prof.char_discount};
    auto profiles = profile_contributors(campaign, parse_weights(prof.alphas), d, {}, exec());
    write_profiles_csv(profiles, prof.out);
    int counts[kProfileCount] = {0, 0, 0, 0};
    for (const auto& p : profiles) ++counts[static_cast<int>(p.decided)];
    std::printf("profiled %zu contributors: %d expert, %d good, %d average, %d bad -> %s\n",
                profiles.size(), counts[0], counts[1], counts[2], counts[3], prof.out.c_str());
  });

  // ---- learn-profile-alphas ----
  struct {
    std::string in;
    int grid_max = 10;
    double split = 0.5;
    std::uint64_t seed = 7;
    double char_discount = 0.9;
  } la;
  CLI::App* c_la = app.add_subcommand("learn-profile-alphas",
                                      "grid-search the characteristic fusion weights");
  c_la->add_option("--in", la.in, "campaign CSV (gold labels required)")->required();
  c_la->add_option("--grid-max", la.grid_max, "weights range over integers 0..grid-max");
  c_la->add_option("--split", la.split, "train fraction of the contributors");
  c_la->add_option("--seed", la.seed, "split seed");
  c_la->add_option("--char-discount", la.char_discount, "per-characteristic discount");
  c_la->callback([&] {
    Campaign campaign = parse_campaign_csv(la.in);
    CharDiscounts d{la.char_discount, la.char_discount, la.char_discount, la.char_discount};
    AlphaSearchResult r =
        learn_characteristic_alphas(campaign, la.grid_max, la.split, la.seed, d, {}, exec());
    std::printf("alphas (P,C,R,A) = %g,%g,%g,%g  train_ccr=%.6f  test_ccr=%.6f\n", r.weights.p,
                r.weights.c, r.weights.r, r.weights.a, r.train_ccr, r.test_ccr);
  });

  // ---- aggregate ----
  struct {
    std::string in;
    std::string profiles;
    std::string discounts = "1.0,0.85,0.40,0.20";
    std::string rule = "mean";
    std::string lns_mode = "diffidence";
    double global_discount = 0.9;
    bool decide_sets = false;
    std::string out;
  } agg;
  CLI::App* c_agg = app.add_subcommand("aggregate", "combine answers into decisions");
  c_agg->add_option("--in", agg.in, "campaign CSV")->required();
  c_agg->add_option("--profiles", agg.profiles,
                    "profiles CSV; when omitted a flat --global-discount applies");
  c_agg->add_option("--discounts", agg.discounts,
                    "reliability per profile: expert,good,average,bad");
  c_agg->add_option("--rule", agg.rule, "mean | conjunctive | dempster | lns");
  c_agg->add_option("--lns-mode", agg.lns_mode, "diffidence | support-product");
  c_agg->add_option("--global-discount", agg.global_discount,
                    "flat discount when no profiles are given");
  c_agg->add_flag("--decide-sets", agg.decide_sets, "also report the best subset per question");
  c_agg->add_option("--out", agg.out, "decisions CSV path")->required();
  c_agg->callback([&] {
    Campaign campaign = parse_campaign_csv(agg.in);
    AggregateOptions opt;
    opt.rule = rule_from_string(agg.rule);
    opt.lns = parse_lns_mode(agg.lns_mode);
    opt.global_discount = agg.global_discount;
    opt.decide_sets = agg.decide_sets;
    std::map<std::string, ProfileLabel> profiles;
    const std::map<std::string, ProfileLabel>* pp = nullptr;
    if (!agg.profiles.empty()) {
      profiles = parse_profiles_csv(agg.profiles);
      pp = &profiles;
    }
    auto decisions =
        aggregate_campaign(campaign, pp, parse_discounts(agg.discounts), opt, exec());
    write_decisions_csv(decisions, campaign, agg.out);
    std::printf("decided %zu questions -> %s\n", decisions.size(), agg.out.c_str());
    try {
      std::printf("crowd crr vs gold: %.6f\n", crowd_crr(decisions, campaign));
    } catch (const MissingGold&) {
      std::printf("crowd crr vs gold: n/a (not all questions carry gold labels)\n");
    }
  });

  // ---- learn-discounts ----
  struct {
    std::string in;
    std::string profiles;
    double split = 0.5;
    std::uint64_t seed = 7;
    std::string rule = "mean";
  } ld;
  CLI::App* c_ld = app.add_subcommand("learn-discounts",
                                      "grid-search the per-profile reliability discounts");
  c_ld->add_option("--in", ld.in, "campaign CSV (gold labels required)")->required();
  c_ld->add_option("--profiles", ld.profiles, "profiles CSV")->required();
  c_ld->add_option("--split", ld.split, "train fraction of the contributors");
  c_ld->add_option("--seed", ld.seed, "split seed");
  c_ld->add_option("--rule", ld.rule, "combination rule used while scoring");
  c_ld->callback([&] {
    Campaign campaign = parse_campaign_csv(ld.in);
    AggregateOptions opt;
    opt.rule = rule_from_string(ld.rule);
    DiscountSearchResult r = learn_profile_discounts(campaign, parse_profiles_csv(ld.profiles),
                                                     ld.split, ld.seed, opt, exec());
    std::printf("discounts (E,G,A,B) = %.2f,%.2f,%.2f,%.2f  train_crr=%.6f  test_crr=%.6f\n",
                r.discounts.expert, r.discounts.good, r.discounts.average, r.discounts.bad,
                r.train_crr, r.test_crr);
  });

  // ---- baselines ----
  struct {
    std::string in;
    double beta = 0.5;
    std::uint64_t seed = 0;
    std::string out;
  } base;
  CLI::App* c_base = app.add_subcommand("baselines",
                                        "expertise degrees, EM PPV, and time-validity report");
  c_base->add_option("--in", base.in, "campaign CSV")->required();
  c_base->add_option("--beta", base.beta, "mix between correctness and precision degrees");
  c_base->add_option("--seed", base.seed, "k-means seed");
  c_base->add_option("--out", base.out, "report CSV path")->required();
  c_base->callback([&] {
    Campaign campaign = parse_campaign_csv(base.in);
    auto rows = baseline_report(campaign, base.beta, base.seed, {}, exec());
    write_baseline_report_csv(rows, base.out);
    std::printf("wrote %zu baseline rows -> %s\n", rows.size(), base.out.c_str());
  });

  // ---- compare ----
  struct {
    std::string in;
    std::string methods = "mv,em,monitor,mean09";
    std::string sizes;
    int reps = 25;
    std::uint64_t seed = 7;
    std::string alphas = "1,1,1,1";
    std::string discounts = "1.0,0.85,0.40,0.20";
    std::string rule = "mean";
    double beta = 0.5;
    std::string out;
  } cmp;
  CLI::App* c_cmp = app.add_subcommand("compare", "CRR-vs-crowd-size bootstrap curves");
  c_cmp->add_option("--in", cmp.in, "campaign CSV (gold labels required)")->required();
  c_cmp->add_option("--methods", cmp.methods, "subset of mv,em,monitor,mean09,rjab");
  c_cmp->add_option("--sizes", cmp.sizes, "crowd sizes, e.g. 2,4,8,16")->required();
  c_cmp->add_option("--reps", cmp.reps, "bootstrap repetitions per size");
  c_cmp->add_option("--seed", cmp.seed, "bootstrap seed");
  c_cmp->add_option("--alphas", cmp.alphas, "fusion weights for the profile-based method");
  c_cmp->add_option("--discounts", cmp.discounts, "profile reliabilities expert,good,average,bad");
  c_cmp->add_option("--rule", cmp.rule, "combination rule for the profile-based methods");
  c_cmp->add_option("--beta", cmp.beta, "degree mix for the rjab method");
  c_cmp->add_option("--out", cmp.out, "curves CSV path")->required();
  c_cmp->callback([&] {
    Campaign campaign = parse_campaign_csv(cmp.in);
    ExperimentConfig cfg;
    cfg.sizes = parse_sizes(cmp.sizes);
    cfg.repetitions = cmp.reps;
    cfg.seed = cmp.seed;
    cfg.methods = split_commas(cmp.methods);
    cfg.weights = parse_weights(cmp.alphas);
    cfg.discounts = parse_discounts(cmp.discounts);
    cfg.agg.rule = rule_from_string(cmp.rule);
    cfg.beta = cmp.beta;
    auto points = bootstrap_curves(campaign, cfg, exec());
    write_curves_csv(points, cmp.out);
    std::printf("wrote %zu curve points -> %s\n", points.size(), cmp.out.c_str());
    for (const CurvePoint& p : points)
      std::printf("  %-8s n=%-3d crr=%.4f [%.4f, %.4f]\n", p.method.c_str(), p.n, p.mean_crr,
                  p.ci_low, p.ci_high);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const IncompatibleFrames& e) {
    std::fprintf(stderr, "method not applicable: %s\n", e.what());
    return 3;
  } catch (const TotalConflict& e) {
    std::fprintf(stderr, "method not applicable: %s\n", e.what());
    return 3;
  } catch (const AllConflict& e) {
    std::fprintf(stderr, "method not applicable: %s\n", e.what());
    return 3;
  } catch (const LoneContributor& e) {
    std::fprintf(stderr, "method not applicable: %s\n", e.what());
    return 3;
  } catch (const DegenerateMatrix& e) {
    std::fprintf(stderr, "method not applicable: %s\n", e.what());
    return 3;
  } catch (const NoResponses& e) {
    std::fprintf(stderr, "method not applicable: %s\n", e.what());
    return 3;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
