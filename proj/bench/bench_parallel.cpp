// Times the serial and parallel executions of every OpenMP-enabled kernel on
// the same synthetic campaign and checks that both produce identical results.
#include <chrono>
#include <cstdio>
#include <tuple>
#include <utility>
#include <vector>

#include "crowdbelief/baselines.hpp"
#include "crowdbelief/experiments.hpp"
#include "crowdbelief/generator.hpp"
#include "crowdbelief/monitor.hpp"

using namespace crowdbelief;
using clock_type = std::chrono::steady_clock;

namespace {

int g_mismatches = 0;

template <typename F>
auto timed(F&& f, double& out_ms) {
  auto t0 = clock_type::now();
  auto r = f();
  out_ms = std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
  return r;
}

// Runs the kernel in both modes, averages the wall time, compares the results
// exactly. The lambda must reduce its output to something with operator==.
template <typename F>
void bench(const char* name, F&& run, int reps = 3) {
  double serial_ms = 0.0, parallel_ms = 0.0;
  bool equal = true;
  for (int i = 0; i < reps; ++i) {
    double s = 0.0, p = 0.0;
    auto rs = timed([&] { return run(Execution::serial); }, s);
    auto rp = timed([&] { return run(Execution::parallel); }, p);
    serial_ms += s;
    parallel_ms += p;
    equal = equal && rs == rp;
  }
  serial_ms /= reps;
  parallel_ms /= reps;
  if (!equal) ++g_mismatches;
  std::printf("%-28s serial %9.1f ms   parallel %9.1f ms   speedup %5.2fx   %s\n", name,
              serial_ms, parallel_ms, serial_ms / parallel_ms,
              equal ? "identical" : "MISMATCH");
}

Frame bench_frame(int n) {
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back("opt" + std::to_string(i));
  return Frame(labels);
}

}  // namespace

int main() {
  auto specs = default_profile_specs(10);
  std::vector<std::pair<ProfileSpec, int>> plan{
      {specs[0], 10}, {specs[1], 20}, {specs[2], 20}, {specs[3], 10}};
  GeneratedCampaign g = generate_synthetic_campaign(plan, 120, bench_frame(10), 5, 4, 2024);
  const Campaign& campaign = g.campaign;
  std::printf("campaign: %zu contributors, %zu questions, %zu responses\n\n",
              campaign.contributors().size(), campaign.questions().size(),
              campaign.responses().size());

  bench("profile_contributors", [&](Execution e) {
    std::vector<std::tuple<std::string, MassFunction, std::array<double, kProfileCount>, int>> out;
    for (const auto& p : profile_contributors(campaign, FusionWeights{1, 6, 2, 1}, {}, {}, e))
      out.emplace_back(p.contributor, p.profile, p.betp, static_cast<int>(p.decided));
    return out;
  });

  bench(
      "learn_characteristic_alphas",
      [&](Execution e) {
        AlphaSearchResult r = learn_characteristic_alphas(campaign, 4, 0.5, 7, {}, {}, e);
        return std::make_tuple(r.weights.p, r.weights.c, r.weights.r, r.weights.a, r.train_ccr,
                               r.test_ccr);
      },
      1);

  std::map<std::string, ProfileLabel> profiles;
  for (const auto& p : profile_contributors(campaign, FusionWeights{1, 6, 2, 1}))
    profiles[p.contributor] = p.decided;
  bench(
      "learn_profile_discounts",
      [&](Execution e) {
        DiscountSearchResult r = learn_profile_discounts(campaign, profiles, 0.5, 7, {}, e);
        return std::make_tuple(r.discounts.expert, r.discounts.good, r.discounts.average,
                               r.discounts.bad, r.train_crr, r.test_crr);
      },
      1);

  bench("baseline_report", [&](Execution e) {
    std::vector<std::tuple<std::string, double, double, double, double, double, int, int, int>> out;
    for (const auto& r : baseline_report(campaign, 0.5, 0, {}, e))
      out.emplace_back(r.contributor, r.de, r.dp, r.dg, r.ppv, r.komarov,
                       static_cast<int>(r.k_de_dp), static_cast<int>(r.k_dg),
                       static_cast<int>(r.k_ppv));
    return out;
  });

  bench(
      "bootstrap_curves",
      [&](Execution e) {
        ExperimentConfig cfg;
        cfg.sizes = {5, 10, 20, 40, 60};
        cfg.repetitions = 20;
        cfg.seed = 7;
        std::vector<std::tuple<std::string, int, double, double, double>> out;
        for (const auto& p : bootstrap_curves(campaign, cfg, e))
          out.emplace_back(p.method, p.n, p.mean_crr, p.ci_low, p.ci_high);
        return out;
      },
      1);

  if (g_mismatches > 0) {
    std::printf("\n%d kernel(s) diverged between serial and parallel\n", g_mismatches);
    return 1;
  }
  std::printf("\nall kernels produce identical serial/parallel results\n");
  return 0;
}
