#include "crowdbelief/generator.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

#include "crowdbelief/csv.hpp"

namespace crowdbelief {

namespace {

double uniform_real(std::mt19937_64& rng, double lo, double hi) {
  // 53-bit mantissa draw; written out so results do not depend on library
  // internals of std::uniform_real_distribution.
  double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + u * (hi - lo);
}

std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

int draw_discrete(std::mt19937_64& rng, const std::vector<std::pair<int, double>>& dist) {
  double u = uniform_real(rng, 0.0, 1.0);
  double acc = 0.0;
  for (const auto& [value, p] : dist) {
    acc += p;
    if (u < acc) return value;
  }
  return dist.back().first;
}

void check_dist(const std::vector<std::pair<int, double>>& dist, const char* what) {
  if (dist.empty()) throw ConfigError(std::string(what) + " distribution is empty");
  double total = 0.0;
  for (const auto& [v, p] : dist) {
    if (p < 0.0 || p > 1.0) throw ConfigError(std::string(what) + " probability outside [0,1]");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw ConfigError(std::string(what) + " distribution sums to " + format_double(total));
}

// size labels drawn uniformly without replacement from `pool` (partial
// Fisher-Yates, own code for cross-platform determinism).
FocalSet sample_labels(std::mt19937_64& rng, std::vector<int>& pool, int size) {
  FocalSet x = 0;
  for (int i = 0; i < size; ++i) {
    std::size_t j = i + static_cast<std::size_t>(uniform_index(rng, pool.size() - i));
    std::swap(pool[i], pool[j]);
    x |= FocalSet{1} << pool[i];
  }
  return x;
}

struct Draw {
  FocalSet selected;
  int likert;
};

Draw draw_answer(std::mt19937_64& rng, const ProfileSpec& spec, const Question& q) {
  int m = q.frame.size();
  int size = std::clamp(draw_discrete(rng, spec.imprecision_dist), 1, q.imp_max);
  bool correct = uniform_real(rng, 0.0, 1.0) < spec.correct_rate;
  int gold_ix = q.gold_index();
  std::vector<int> pool;
  pool.reserve(m);
  for (int i = 0; i < m; ++i)
    if (i != gold_ix) pool.push_back(i);
  FocalSet x;
  if (correct) {
    x = (FocalSet{1} << gold_ix) | sample_labels(rng, pool, size - 1);
  } else {
    x = sample_labels(rng, pool, size);
  }
  return {x, draw_discrete(rng, spec.certainty_dist)};
}

}  // namespace

std::vector<ProfileSpec> default_profile_specs(int frame_size) {
  if (frame_size < 2) throw ConfigError("default profiles need a frame of at least 2 labels");
  double third = 1.0 / 3.0;
  ProfileSpec expert{ProfileLabel::Expert, 0.9, {{1, 1.0}}, {{5, 0.5}, {6, 0.5}}, 1.5, 4.5, 0.95};
  ProfileSpec good{ProfileLabel::Good, 0.65, {{1, 0.5}, {2, 0.5}},
                   {{4, 0.4}, {5, 0.4}, {6, 0.2}}, 6.0, 15.0, 0.9};
  ProfileSpec average{ProfileLabel::Average, 0.35, {{1, third}, {2, third}, {3, third}},
                      {{1, third}, {2, third}, {3, third}}, 6.0, 15.0, 0.85};
  ProfileSpec bad{ProfileLabel::Bad, 1.0 / frame_size, {{1, 1.0}}, {{5, 0.5}, {6, 0.5}},
                  1.5, 4.5, 0.3};
  return {expert, good, average, bad};
}

GeneratedCampaign generate_synthetic_campaign(const std::vector<std::pair<ProfileSpec, int>>& specs,
                                              int n_questions, const Frame& frame, int imp_max,
                                              int n_attention, std::uint64_t seed) {
  if (specs.empty()) throw ConfigError("no contributor profiles given");
  for (const auto& [spec, count] : specs) {
    if (count <= 0) throw ConfigError("profile count must be positive");
    if (spec.correct_rate < 0.0 || spec.correct_rate > 1.0)
      throw ConfigError("correct_rate outside [0,1]");
    if (spec.attention_fidelity < 0.0 || spec.attention_fidelity > 1.0)
      throw ConfigError("attention_fidelity outside [0,1]");
    if (spec.time_min_s < 0.0 || spec.time_max_s < spec.time_min_s)
      throw ConfigError("bad response-time range");
    check_dist(spec.imprecision_dist, "imprecision");
    check_dist(spec.certainty_dist, "certainty");
    for (const auto& [v, p] : spec.certainty_dist)
      if (v < 0 || v > 6) throw ConfigError("certainty distribution over non-Likert value");
    for (const auto& [v, p] : spec.imprecision_dist)
      if (v < 1) throw ConfigError("imprecision distribution over |X| < 1");
  }
  if (n_questions < 1) throw ConfigError("need at least one question");
  if (n_attention < 0 || n_attention > n_questions)
    throw ConfigError("attention count outside [0, n_questions]");
  if (imp_max < 1 || imp_max > frame.size()) throw ConfigError("imp_max outside [1, frame size]");

  std::mt19937_64 rng(seed);

  // Base questions with random golds; attention question k repeats the base
  // question at an evenly spaced position and lands right after it.
  std::vector<int> attention_after(n_questions, -1);
  for (int k = 0; k < n_attention; ++k) {
    int ref = static_cast<int>((k + 0.5) * n_questions / n_attention);
    attention_after[std::min(ref, n_questions - 1)] = k;
  }
  int qwidth = static_cast<int>(std::to_string(n_questions).size());
  auto pad = [](int v, int w) {
    std::string s = std::to_string(v);
    return std::string(w > static_cast<int>(s.size()) ? w - s.size() : 0, '0') + s;
  };
  std::vector<Question> questions;
  questions.reserve(n_questions + n_attention);
  for (int i = 0; i < n_questions; ++i) {
    Question q{"q" + pad(i + 1, qwidth), frame,
               frame.label(static_cast<int>(uniform_index(rng, frame.size()))), imp_max, false, ""};
    questions.push_back(q);
    if (attention_after[i] >= 0) {
      Question a = questions.back();
      a.id = "a" + pad(attention_after[i] + 1, 2);
      a.is_attention = true;
      a.ref_question = q.id;
      questions.push_back(a);
    }
  }

  std::vector<std::pair<std::string, ProfileLabel>> planted;
  std::vector<Response> responses;
  for (const auto& [spec, count] : specs) {
    int cwidth = static_cast<int>(std::to_string(count).size());
    for (int c = 0; c < count; ++c) {
      std::string id = to_string(spec.label) + pad(c + 1, std::max(2, cwidth));
      planted.emplace_back(id, spec.label);
      std::unordered_map<std::string, Draw> given;
      for (const Question& q : questions) {
        Draw d;
        if (q.is_attention) {
          bool repeat = uniform_real(rng, 0.0, 1.0) < spec.attention_fidelity;
          d = repeat ? given.at(q.ref_question) : draw_answer(rng, spec, q);
        } else {
          d = draw_answer(rng, spec, q);
          given.emplace(q.id, d);
        }
        Response r;
        r.contributor = id;
        r.question = q.id;
        r.selected = d.selected;
        r.likert = d.likert;
        r.time_s = uniform_real(rng, spec.time_min_s, spec.time_max_s);
        responses.push_back(std::move(r));
      }
    }
  }
  std::sort(planted.begin(), planted.end());
  return {Campaign(std::move(questions), std::move(responses)), std::move(planted)};
}

void write_truth_csv(const GeneratedCampaign& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw SchemaError("cannot write '" + path + "'");
  out << "contributor_id,planted_profile\n";
  for (const auto& [c, p] : g.planted) out << c << ',' << to_string(p) << '\n';
}

std::vector<std::pair<std::string, ProfileLabel>> parse_truth_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw SchemaError("'" + path + "' is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "contributor_id,planted_profile")
    throw SchemaError("line 1: expected header 'contributor_id,planted_profile'");
  std::vector<std::pair<std::string, ProfileLabel>> out;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != 2)
      throw SchemaError("line " + std::to_string(lineno) + ": expected 2 fields");
    out.emplace_back(fields[0], profile_from_string(fields[1]));
  }
  return out;
}

}  // namespace crowdbelief
