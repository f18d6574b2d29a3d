#include "crowdbelief/baselines.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <unordered_map>

#include "crowdbelief/combine.hpp"
#include "crowdbelief/csv.hpp"
#include "crowdbelief/distance.hpp"
#include "crowdbelief/errors.hpp"
#include "crowdbelief/quantile.hpp"

namespace crowdbelief {

std::string majority_vote(const Campaign& campaign, const Question& q) {
  const std::vector<int>& ix = campaign.responses_to(q.id);
  if (ix.empty()) throw NoResponses("no responses to question '" + q.id + "'");
  std::vector<double> score(static_cast<std::size_t>(q.frame.size()), 0.0);
  for (int i : ix) {
    const Response& r = campaign.responses()[static_cast<std::size_t>(i)];
    double w = 1.0 / static_cast<double>(set_size(r.selected));
    for (int l = 0; l < q.frame.size(); ++l)
      if (r.selected & (FocalSet{1} << l)) score[static_cast<std::size_t>(l)] += w;
  }
  auto best = std::max_element(score.begin(), score.end()) - score.begin();
  return q.frame.label(static_cast<int>(best));
}

namespace {

struct EmEntry {
  int c;     // contributor index
  int l;     // reported label index
  double w;  // fractional count
};

}  // namespace

EmResult em_dawid_skene(const Campaign& campaign, int max_iter, double tol,
                        EmExpansion expansion) {
  if (max_iter < 1) throw ArgOutOfRange("max_iter must be >= 1");
  std::vector<const Question*> qs;
  for (const Question& q : campaign.questions())
    if (!q.is_attention && !campaign.responses_to(q.id).empty()) qs.push_back(&q);
  if (qs.empty()) throw EmptyInput("no answered questions to estimate from");
  const Frame& frame = qs[0]->frame;
  for (const Question* q : qs)
    if (q->frame != frame)
      throw IncompatibleFrames("questions '" + qs[0]->id + "' and '" + q->id +
                               "' use different frames");

  const int M = frame.size();
  const auto N = static_cast<int>(qs.size());
  const std::vector<std::string>& contributors = campaign.contributors();
  const auto C = static_cast<int>(contributors.size());
  std::unordered_map<std::string, int> cix;
  for (int c = 0; c < C; ++c) cix[contributors[static_cast<std::size_t>(c)]] = c;

  std::vector<std::vector<EmEntry>> entries(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) {
    for (int rix : campaign.responses_to(qs[static_cast<std::size_t>(i)]->id)) {
      const Response& r = campaign.responses()[static_cast<std::size_t>(rix)];
      int c = cix.at(r.contributor);
      if (expansion == EmExpansion::collapsed) {
        entries[static_cast<std::size_t>(i)].push_back({c, std::countr_zero(r.selected), 1.0});
      } else {
        double w = 1.0 / static_cast<double>(set_size(r.selected));
        for (int l = 0; l < M; ++l)
          if (r.selected & (FocalSet{1} << l))
            entries[static_cast<std::size_t>(i)].push_back({c, l, w});
      }
    }
  }

  // Posteriors start at the fractional majority vote.
  std::vector<std::vector<double>> T(static_cast<std::size_t>(N),
                                     std::vector<double>(static_cast<std::size_t>(M), 0.0));
  for (int i = 0; i < N; ++i) {
    auto& row = T[static_cast<std::size_t>(i)];
    double total = 0.0;
    for (const EmEntry& e : entries[static_cast<std::size_t>(i)]) {
      row[static_cast<std::size_t>(e.l)] += e.w;
      total += e.w;
    }
    for (double& v : row) v /= total;
  }

  const double neg_inf = -std::numeric_limits<double>::infinity();
  std::vector<double> priors(static_cast<std::size_t>(M), 0.0);
  std::vector<std::vector<std::vector<double>>> conf(
      static_cast<std::size_t>(C),
      std::vector<std::vector<double>>(static_cast<std::size_t>(M),
                                       std::vector<double>(static_cast<std::size_t>(M), 0.0)));
  auto logp = priors;
  auto logpi = conf;

  EmResult out{frame, {}, {}, {}, {}, {}, {}, false};
  for (const Question* q : qs) out.question_ids.push_back(q->id);

  double prev = neg_inf;
  std::vector<double> s(static_cast<std::size_t>(M));
  for (int it = 0; it < max_iter; ++it) {
    // M-step: priors and per-contributor confusion rows from the posteriors.
    std::fill(priors.begin(), priors.end(), 0.0);
    for (auto& m : conf)
      for (auto& row : m) std::fill(row.begin(), row.end(), 0.0);
    for (int i = 0; i < N; ++i) {
      const auto& t = T[static_cast<std::size_t>(i)];
      for (int j = 0; j < M; ++j) priors[static_cast<std::size_t>(j)] += t[static_cast<std::size_t>(j)];
      for (const EmEntry& e : entries[static_cast<std::size_t>(i)]) {
        auto& m = conf[static_cast<std::size_t>(e.c)];
        for (int j = 0; j < M; ++j)
          m[static_cast<std::size_t>(j)][static_cast<std::size_t>(e.l)] +=
              t[static_cast<std::size_t>(j)] * e.w;
      }
    }
    for (double& v : priors) v /= static_cast<double>(N);
    for (auto& m : conf) {
      for (auto& row : m) {
        double total = std::accumulate(row.begin(), row.end(), 0.0);
        if (total > 0.0)
          for (double& v : row) v /= total;
        else  // contributor never reached by this true label: neutral row
          std::fill(row.begin(), row.end(), 1.0 / static_cast<double>(M));
      }
    }

    for (int j = 0; j < M; ++j) {
      double p = priors[static_cast<std::size_t>(j)];
      logp[static_cast<std::size_t>(j)] = p > 0.0 ? std::log(p) : neg_inf;
    }
    for (int c = 0; c < C; ++c)
      for (int j = 0; j < M; ++j)
        for (int l = 0; l < M; ++l) {
          double p = conf[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)]
                         [static_cast<std::size_t>(l)];
          logpi[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)]
                [static_cast<std::size_t>(l)] = p > 0.0 ? std::log(p) : neg_inf;
        }

    // E-step in log space, with the observed-data log-likelihood on the side.
    double ll = 0.0;
    for (int i = 0; i < N; ++i) {
      for (int j = 0; j < M; ++j) {
        double acc = logp[static_cast<std::size_t>(j)];
        for (const EmEntry& e : entries[static_cast<std::size_t>(i)])
          acc += e.w * logpi[static_cast<std::size_t>(e.c)][static_cast<std::size_t>(j)]
                            [static_cast<std::size_t>(e.l)];
        s[static_cast<std::size_t>(j)] = acc;
      }
      double mx = *std::max_element(s.begin(), s.end());
      auto& t = T[static_cast<std::size_t>(i)];
      if (!std::isfinite(mx)) {  // unreachable with these updates; keep EM well-defined
        std::fill(t.begin(), t.end(), 1.0 / static_cast<double>(M));
        ll = neg_inf;
        continue;
      }
      double z = 0.0;
      for (int j = 0; j < M; ++j) z += std::exp(s[static_cast<std::size_t>(j)] - mx);
      for (int j = 0; j < M; ++j)
        t[static_cast<std::size_t>(j)] = std::exp(s[static_cast<std::size_t>(j)] - mx) / z;
      ll += mx + std::log(z);
    }
    out.loglik.push_back(ll);
    if (it > 0 && ll - prev < tol) {
      out.converged = true;
      break;
    }
    prev = ll;
  }

  out.posteriors = std::move(T);
  out.decided.resize(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) {
    const auto& t = out.posteriors[static_cast<std::size_t>(i)];
    out.decided[static_cast<std::size_t>(i)] =
        static_cast<int>(std::max_element(t.begin(), t.end()) - t.begin());
  }
  out.priors = std::move(priors);
  out.confusions.reserve(static_cast<std::size_t>(C));
  for (int c = 0; c < C; ++c)
    out.confusions.push_back({contributors[static_cast<std::size_t>(c)],
                              std::move(conf[static_cast<std::size_t>(c)])});
  return out;
}

double em_ppv(const ConfusionMatrix& cm) {
  const std::size_t m = cm.rows.size();
  double acc = 0.0;
  int used = 0;
  for (std::size_t l = 0; l < m; ++l) {
    double col = 0.0;
    for (std::size_t j = 0; j < m; ++j) col += cm.rows[j][l];
    if (col <= 0.0) continue;
    acc += cm.rows[l][l] / col;
    ++used;
  }
  if (used == 0) throw DegenerateMatrix("all confusion-matrix columns are zero");
  return acc / used;
}

double rjab_de(const Campaign& campaign, const std::string& contributor, const LikertScale& scale) {
  const std::vector<int>& mine = campaign.responses_by(contributor);
  if (mine.empty()) throw NoResponses("contributor '" + contributor + "' has no responses");
  double acc = 0.0;
  int n = 0;
  for (int rix : mine) {
    const Response& r = campaign.responses()[static_cast<std::size_t>(rix)];
    const Question& q = campaign.question(r.question);
    std::vector<MassFunction> others;
    for (int oix : campaign.responses_to(q.id)) {
      const Response& o = campaign.responses()[static_cast<std::size_t>(oix)];
      if (o.contributor == contributor) continue;
      others.push_back(response_to_mass(o, q, scale));
    }
    if (others.empty()) continue;  // nobody to compare against on this question
    acc += jousselme_distance(response_to_mass(r, q, scale), combine_mean(others));
    ++n;
  }
  if (n == 0)
    throw LoneContributor("contributor '" + contributor +
                          "' shares no questions with the rest of the crowd");
  return 1.0 - acc / n;
}

double rjab_dp(const Campaign& campaign, const std::string& contributor, const LikertScale& scale) {
  const std::vector<int>& mine = campaign.responses_by(contributor);
  if (mine.empty()) throw NoResponses("contributor '" + contributor + "' has no responses");
  double acc = 0.0;
  for (int rix : mine) {
    const Response& r = campaign.responses()[static_cast<std::size_t>(rix)];
    const Question& q = campaign.question(r.question);
    double omega = scale.omega(r.likert);
    if (r.selected == q.frame.full_set())
      acc += 1.0 - omega;
    else
      acc += omega * (1.0 - std::log2(static_cast<double>(set_size(r.selected))) /
                                std::log2(static_cast<double>(q.frame.size())));
  }
  return acc / static_cast<double>(mine.size());
}

double rjab_dg(double de, double dp, double beta) {
  if (de < 0.0 || de > 1.0) throw ArgOutOfRange("de must be in [0,1]");
  if (dp < 0.0 || dp > 1.0) throw ArgOutOfRange("dp must be in [0,1]");
  if (beta < 0.0 || beta > 1.0) throw ArgOutOfRange("beta must be in [0,1]");
  return beta * de + (1.0 - beta) * dp;
}

KmeansResult kmeans(const std::vector<std::vector<double>>& points, int k, std::uint64_t seed) {
  const auto n = static_cast<int>(points.size());
  if (k < 1) throw ArgOutOfRange("k must be >= 1");
  if (n < k)
    throw TooFewContributors("need at least " + std::to_string(k) + " points, got " +
                             std::to_string(n));
  const std::size_t dim = points[0].size();
  for (const auto& p : points)
    if (p.size() != dim) throw ConfigError("feature vectors must share one dimension");

  auto dist2 = [](const std::vector<double>& a, const std::vector<double>& b) {
    double total = 0.0;
    for (std::size_t d = 0; d < a.size(); ++d) {
      double t = a[d] - b[d];
      total += t * t;
    }
    return total;
  };

  std::mt19937_64 rng(seed);
  KmeansResult out;
  out.centers.push_back(points[rng() % static_cast<std::uint64_t>(n)]);
  while (static_cast<int>(out.centers.size()) < k) {
    int far = 0;
    double best = -1.0;
    for (int i = 0; i < n; ++i) {
      double nearest = std::numeric_limits<double>::infinity();
      for (const auto& c : out.centers)
        nearest = std::min(nearest, dist2(points[static_cast<std::size_t>(i)], c));
      if (nearest > best) {  // strict: ties keep the lowest index
        best = nearest;
        far = i;
      }
    }
    out.centers.push_back(points[static_cast<std::size_t>(far)]);
  }

  out.assignment.assign(static_cast<std::size_t>(n), 0);
  for (int it = 0; it < 100; ++it) {
    out.iterations = it + 1;
    double sse = 0.0;
    for (int i = 0; i < n; ++i) {
      const auto& p = points[static_cast<std::size_t>(i)];
      int bestc = 0;
      double bd = dist2(p, out.centers[0]);
      for (int c = 1; c < k; ++c) {
        double d = dist2(p, out.centers[static_cast<std::size_t>(c)]);
        if (d < bd) {  // strict: ties keep the lowest center index
          bd = d;
          bestc = c;
        }
      }
      out.assignment[static_cast<std::size_t>(i)] = bestc;
      sse += bd;
    }
    out.sse_trace.push_back(sse);

    std::vector<std::vector<double>> next(static_cast<std::size_t>(k),
                                          std::vector<double>(dim, 0.0));
    std::vector<int> cnt(static_cast<std::size_t>(k), 0);
    for (int i = 0; i < n; ++i) {
      auto c = static_cast<std::size_t>(out.assignment[static_cast<std::size_t>(i)]);
      for (std::size_t d = 0; d < dim; ++d) next[c][d] += points[static_cast<std::size_t>(i)][d];
      ++cnt[c];
    }
    double moved = 0.0;
    for (std::size_t c = 0; c < static_cast<std::size_t>(k); ++c) {
      if (cnt[c] == 0) {
        next[c] = out.centers[c];  // empty cluster keeps its center
        continue;
      }
      for (std::size_t d = 0; d < dim; ++d) next[c][d] /= cnt[c];
      moved = std::max(moved, dist2(next[c], out.centers[c]));
    }
    out.centers = std::move(next);
    if (moved < 1e-18) break;  // no center moved by more than 1e-9
  }
  return out;
}

std::map<std::string, ProfileLabel> kmeans_profiles(
    const std::map<std::string, std::vector<double>>& features, std::uint64_t seed) {
  constexpr int k = 4;
  if (static_cast<int>(features.size()) < k)
    throw TooFewContributors("profiling needs at least 4 contributors, got " +
                             std::to_string(features.size()));
  std::vector<std::string> names;
  std::vector<std::vector<double>> pts;
  names.reserve(features.size());
  pts.reserve(features.size());
  for (const auto& [name, f] : features) {
    if (f.empty()) throw ConfigError("feature vectors must be non-empty");
    names.push_back(name);
    pts.push_back(f);
  }

  KmeansResult km = kmeans(pts, k, seed);

  // Rank clusters by ascending mean first feature; an empty cluster ranks by
  // its (inherited) center coordinate. Ties keep cluster-index order.
  std::array<double, k> sum{};
  std::array<int, k> cnt{};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    auto c = static_cast<std::size_t>(km.assignment[i]);
    sum[c] += pts[i][0];
    ++cnt[c];
  }
  std::array<double, k> key{};
  for (std::size_t c = 0; c < k; ++c)
    key[c] = cnt[c] > 0 ? sum[c] / cnt[c] : km.centers[c][0];
  std::array<int, k> order{0, 1, 2, 3};
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return key[static_cast<std::size_t>(a)] < key[static_cast<std::size_t>(b)];
  });
  constexpr std::array<ProfileLabel, k> by_rank{ProfileLabel::Bad, ProfileLabel::Average,
                                                ProfileLabel::Good, ProfileLabel::Expert};
  std::array<ProfileLabel, k> cluster_label{};
  for (std::size_t r = 0; r < k; ++r)
    cluster_label[static_cast<std::size_t>(order[r])] = by_rank[r];

  std::map<std::string, ProfileLabel> out;
  for (std::size_t i = 0; i < names.size(); ++i)
    out[names[i]] = cluster_label[static_cast<std::size_t>(km.assignment[i])];
  return out;
}

double komarov_validity(const Campaign& campaign, const std::string& contributor) {
  const std::vector<int>& mine = campaign.responses_by(contributor);
  if (mine.empty()) throw NoResponses("contributor '" + contributor + "' has no responses");
  int inside = 0;
  for (int rix : mine) {
    const Response& r = campaign.responses()[static_cast<std::size_t>(rix)];
    std::vector<double> times;
    for (int oix : campaign.responses_to(r.question))
      times.push_back(campaign.responses()[static_cast<std::size_t>(oix)].time_s);
    double q1 = quantile_type7(times, 0.25);
    double q3 = quantile_type7(times, 0.75);
    double iqr = q3 - q1;
    if (r.time_s >= q1 - 3.0 * iqr && r.time_s <= q3 + 3.0 * iqr) ++inside;
  }
  return static_cast<double>(inside) / static_cast<double>(mine.size());
}

std::vector<BaselineRow> baseline_report(const Campaign& campaign, double beta, std::uint64_t seed,
                                         const LikertScale& scale, Execution exec) {
  if (beta < 0.0 || beta > 1.0) throw ArgOutOfRange("beta must be in [0,1]");
  const std::vector<std::string>& names = campaign.contributors();
  if (names.empty()) throw EmptyInput("campaign has no contributors");

  EmResult em = em_dawid_skene(campaign);
  std::vector<BaselineRow> rows(names.size());
  parallel_for(names.size(), exec, [&](std::size_t i) {
    BaselineRow& row = rows[i];
    row.contributor = names[i];
    row.de = rjab_de(campaign, names[i], scale);
    row.dp = rjab_dp(campaign, names[i], scale);
    row.dg = rjab_dg(std::clamp(row.de, 0.0, 1.0), std::clamp(row.dp, 0.0, 1.0), beta);
    row.ppv = em_ppv(em.confusions[i]);
    row.komarov = komarov_validity(campaign, names[i]);
  });

  std::map<std::string, std::vector<double>> f_dedp, f_dg, f_ppv;
  for (const BaselineRow& row : rows) {
    f_dedp[row.contributor] = {row.de, row.dp};
    f_dg[row.contributor] = {row.dg};
    f_ppv[row.contributor] = {row.ppv};
  }
  auto p_dedp = kmeans_profiles(f_dedp, seed);
  auto p_dg = kmeans_profiles(f_dg, seed);
  auto p_ppv = kmeans_profiles(f_ppv, seed);
  for (BaselineRow& row : rows) {
    row.k_de_dp = p_dedp.at(row.contributor);
    row.k_dg = p_dg.at(row.contributor);
    row.k_ppv = p_ppv.at(row.contributor);
  }
  return rows;
}

void write_baseline_report_csv(const std::vector<BaselineRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw SchemaError("cannot write '" + path + "'");
  out << "contributor_id,de,dp,dg,ppv,komarov_validity,"
         "kmeans_profile_de_dp,kmeans_profile_dg,kmeans_profile_ppv\n";
  for (const BaselineRow& r : rows) {
    out << r.contributor << ',' << format_double(r.de) << ',' << format_double(r.dp) << ','
        << format_double(r.dg) << ',' << format_double(r.ppv) << ',' << format_double(r.komarov)
        << ',' << to_string(r.k_de_dp) << ',' << to_string(r.k_dg) << ',' << to_string(r.k_ppv)
        << '\n';
  }
}

}  // namespace crowdbelief
