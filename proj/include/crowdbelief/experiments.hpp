#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "crowdbelief/aggregate.hpp"
#include "crowdbelief/campaign.hpp"
#include "crowdbelief/monitor.hpp"
#include "crowdbelief/parallel.hpp"
#include "crowdbelief/profile_label.hpp"

namespace crowdbelief {

// Reference profile from a correct-response rate:
// Bad <= 0.2 < Average < 0.5 <= Good < 0.85 <= Expert.
ProfileLabel reference_profile_from_crr(double crr);

struct ContributorSplit {
  std::vector<std::string> train;
  std::vector<std::string> test;
};

// Seeded contributor-level split; both sides are guaranteed non-empty.
ContributorSplit split_contributors(const Campaign& campaign, double train_fraction,
                                    std::uint64_t seed);

struct AlphaSearchResult {
  FusionWeights weights;
  double train_ccr = 0.0;  // profile agreement rate on the train contributors
  double test_ccr = 0.0;   // same measure on the held-out contributors
};

// Exhaustive search over integer fusion-weight tuples (p,c,r,a) in
// [0,grid_max]^4 minus the all-zero tuple. A tuple scores by how often the
// decided profile matches the CRR reference profile of a train contributor;
// ties go to the lexicographically smallest tuple. The per-contributor
// characteristic masses are weight-independent and computed once.
AlphaSearchResult learn_characteristic_alphas(const Campaign& campaign, int grid_max,
                                              double train_fraction, std::uint64_t seed,
                                              const CharDiscounts& d = {},
                                              const LikertScale& scale = {},
                                              Execution exec = Execution::parallel);

struct DiscountSearchResult {
  ProfileDiscounts discounts;
  double train_crr = 0.0;
  double test_crr = 0.0;
};

// 0.05-step grid over expert [0.5,1.0], good [0.5,0.85], average [0.2,0.7],
// bad [0.0,0.2], restricted to expert > good > average >= bad; maximizes the
// aggregated crowd CRR on the train contributors, ties toward the
// lexicographically smallest tuple.
DiscountSearchResult learn_profile_discounts(const Campaign& campaign,
                                             const std::map<std::string, ProfileLabel>& profiles,
                                             double train_fraction, std::uint64_t seed,
                                             const AggregateOptions& opt = {},
                                             Execution exec = Execution::parallel);

struct ExperimentConfig {
  std::vector<int> sizes;  // each >= 2 and <= the crowd size
  int repetitions = 50;
  std::uint64_t seed = 0;
  std::vector<std::string> methods{"mv", "em", "monitor", "mean09"};
  FusionWeights weights{};         // contributor profiling (monitor)
  CharDiscounts char_discounts{};  // contributor profiling (monitor)
  ProfileDiscounts discounts{};    // profile-aware aggregation
  AggregateOptions agg{};          // combination rule, scale, global discount
  double beta = 0.5;               // expertise-degree mixing for the rjab method
};

struct CurvePoint {
  std::string method;
  int n = 0;
  double mean_crr = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

// For every crowd size and repetition, draws that many contributors without
// replacement (one draw shared by all methods), aggregates per method, and
// scores the crowd CRR. Reports the mean and a percentile 95% interval per
// (method, size); the interval is widened to include the mean in the rare
// skewed cases where raw percentiles would exclude it. Draws are seeded per
// (size, repetition), so output is identical in serial and parallel runs.
// Contributor profiles for the monitor and rjab methods are estimated once
// on the full campaign.
std::vector<CurvePoint> bootstrap_curves(const Campaign& campaign, const ExperimentConfig& cfg,
                                         Execution exec = Execution::parallel);

void write_curves_csv(const std::vector<CurvePoint>& points, const std::string& path);

}  // namespace crowdbelief
