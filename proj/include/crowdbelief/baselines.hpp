#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "crowdbelief/campaign.hpp"
#include "crowdbelief/parallel.hpp"
#include "crowdbelief/profile_label.hpp"

namespace crowdbelief {

// Fractional plurality: each response adds 1/|X| to every label in its
// selected set X; ties break toward the lowest frame index.
std::string majority_vote(const Campaign& campaign, const Question& q);

// Row-stochastic M x M matrix; rows[true_label][reported_label].
struct ConfusionMatrix {
  std::string contributor;
  std::vector<std::vector<double>> rows;
};

// How imprecise selections enter the EM counts:
//  - fractional: a selection X contributes 1/|X| to each of its labels;
//  - collapsed:  a selection is reduced to one precise label first (the
//    pignistic argmax of the bare selection, i.e. its lowest-index member).
enum class EmExpansion { fractional, collapsed };

struct EmResult {
  Frame frame;
  std::vector<std::string> question_ids;        // non-attention answered questions
  std::vector<std::vector<double>> posteriors;  // per question, per label
  std::vector<int> decided;                     // argmax posterior, tie -> lowest index
  std::vector<ConfusionMatrix> confusions;      // aligned with campaign.contributors()
  std::vector<double> priors;
  std::vector<double> loglik;                   // one entry per EM iteration
  bool converged = false;
};

// Dawid-Skene EM over the non-attention answered questions. All of them must
// share one frame (IncompatibleFrames otherwise). Posteriors are initialised
// from the fractional majority vote; no smoothing is applied, so the recorded
// log-likelihood trace is exactly non-decreasing. Failure to reach `tol`
// within `max_iter` iterations is reported through `converged`, not thrown.
EmResult em_dawid_skene(const Campaign& campaign, int max_iter = 200, double tol = 1e-8,
                        EmExpansion expansion = EmExpansion::fractional);

// Macro-averaged column precision: mean over reported labels of
// diagonal / column sum, skipping all-zero columns.
double em_ppv(const ConfusionMatrix& cm);

// Correctness degree: 1 - mean Jousselme distance between the contributor's
// answer mass and the mean mass of the other respondents, over the questions
// where at least one other contributor answered.
double rjab_de(const Campaign& campaign, const std::string& contributor,
               const LikertScale& scale = LikertScale{});

// Precision degree: mean over answered questions of
//   delta = omega * (1 - log2|X| / log2 M)   for X a proper subset, and
//   delta = 1 - omega                        for X = the full frame
// where omega is the declared support. The full-frame case takes the declared
// mass literally instead of folding it into total ignorance, so a contributor
// who selects everything with zero support still scores delta = 1; that
// behaviour is intentional, it is what this comparison method actually does.
double rjab_dp(const Campaign& campaign, const std::string& contributor,
               const LikertScale& scale = LikertScale{});

// Global degree: beta * de + (1 - beta) * dp, all arguments in [0,1].
double rjab_dg(double de, double dp, double beta);

struct KmeansResult {
  std::vector<int> assignment;              // per point
  std::vector<std::vector<double>> centers; // k centers
  std::vector<double> sse_trace;            // objective after each assignment pass
  int iterations = 0;
};

// Lloyd's algorithm with seeded farthest-point initialisation (first center
// drawn from the RNG, each next one the point farthest from its nearest
// center, ties toward the lowest index). Runs at most 100 passes or until no
// center moves by more than 1e-9. Empty clusters keep their previous center.
KmeansResult kmeans(const std::vector<std::vector<double>>& points, int k, std::uint64_t seed);

// k=4 clustering of per-contributor feature vectors; clusters are ranked by
// ascending mean first feature (center coordinate when a cluster is empty)
// and labelled Bad, Average, Good, Expert in that order.
std::map<std::string, ProfileLabel> kmeans_profiles(
    const std::map<std::string, std::vector<double>>& features, std::uint64_t seed = 0);

// Fraction of the contributor's response times that fall inside
// [Q1 - 3*IQR, Q3 + 3*IQR] of the per-question crowd times.
double komarov_validity(const Campaign& campaign, const std::string& contributor);

struct BaselineRow {
  std::string contributor;
  double de = 0.0;
  double dp = 0.0;
  double dg = 0.0;
  double ppv = 0.0;
  double komarov = 0.0;
  ProfileLabel k_de_dp = ProfileLabel::Bad;
  ProfileLabel k_dg = ProfileLabel::Bad;
  ProfileLabel k_ppv = ProfileLabel::Bad;
};

// One row per contributor: expertise degrees, EM positive predictive value,
// response-time validity, and the three k-means profilings ((de,dp), dg, ppv).
std::vector<BaselineRow> baseline_report(const Campaign& campaign, double beta = 0.5,
                                         std::uint64_t seed = 0,
                                         const LikertScale& scale = LikertScale{},
                                         Execution exec = Execution::serial);

void write_baseline_report_csv(const std::vector<BaselineRow>& rows, const std::string& path);

}  // namespace crowdbelief
