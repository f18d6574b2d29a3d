#include <fstream>
#include <optional>

#include "crowdbelief/campaign.hpp"
#include "crowdbelief/csv.hpp"

namespace crowdbelief {

namespace {

const char* kHeader =
    "contributor_id,question_id,selected,likert,response_time_s,is_attention,ref_question_id,gold,"
    "frame,imp_max";

}  // namespace

Campaign parse_campaign_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw SchemaError("'" + path + "' is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader)
    throw SchemaError("line 1: expected header '" + std::string(kHeader) + "'");

  std::vector<Question> questions;
  std::unordered_map<std::string, std::size_t> question_ix;
  std::vector<Response> responses;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != 10)
      throw SchemaError("line " + std::to_string(lineno) + ": expected 10 fields, got " +
                        std::to_string(fields.size()));
    const std::string& contributor = fields[0];
    const std::string& qid = fields[1];
    if (contributor.empty())
      throw SchemaError("line " + std::to_string(lineno) + ": field 'contributor_id': empty");
    if (qid.empty())
      throw SchemaError("line " + std::to_string(lineno) + ": field 'question_id': empty");

    long likert = parse_long(fields[3], lineno, "likert");
    if (likert < 0 || likert > 6)
      throw SchemaError("line " + std::to_string(lineno) + ": field 'likert': " + fields[3] +
                        " outside 0..6");
    double time_s = parse_double(fields[4], lineno, "response_time_s");
    if (time_s < 0.0)
      throw SchemaError("line " + std::to_string(lineno) + ": field 'response_time_s': negative");
    long attention = parse_long(fields[5], lineno, "is_attention");
    if (attention != 0 && attention != 1)
      throw SchemaError("line " + std::to_string(lineno) + ": field 'is_attention': must be 0 or 1");
    long imp_max = parse_long(fields[9], lineno, "imp_max");

    std::optional<Frame> frame;
    try {
      frame.emplace(split_on(fields[8], '|'));
    } catch (const Error& e) {
      throw SchemaError("line " + std::to_string(lineno) + ": field 'frame': " + e.what());
    }
    Question q{qid, *frame, fields[7], static_cast<int>(imp_max), attention == 1, fields[6]};
    if (q.imp_max < 1 || q.imp_max > q.frame.size())
      throw SchemaError("line " + std::to_string(lineno) + ": field 'imp_max': " + fields[9] +
                        " outside [1, frame size]");
    if (!q.gold.empty() && q.frame.index_of(q.gold) < 0)
      throw SchemaError("line " + std::to_string(lineno) + ": field 'gold': '" + q.gold +
                        "' not in frame");
    if (q.is_attention == q.ref_question.empty())
      throw SchemaError("line " + std::to_string(lineno) +
                        ": ref_question_id must be set exactly for attention rows");

    auto it = question_ix.find(qid);
    if (it == question_ix.end()) {
      question_ix.emplace(qid, questions.size());
      questions.push_back(q);
    } else {
      const Question& prev = questions[it->second];
      if (prev.frame != q.frame || prev.gold != q.gold || prev.imp_max != q.imp_max ||
          prev.is_attention != q.is_attention || prev.ref_question != q.ref_question)
        throw SchemaError("line " + std::to_string(lineno) + ": question '" + qid +
                          "' metadata differs from an earlier row");
    }

    Response r;
    r.contributor = contributor;
    r.question = qid;
    try {
      r.selected = q.frame.set_from_string(fields[2]);
    } catch (const SchemaError& e) {
      throw SchemaError("line " + std::to_string(lineno) + ": field 'selected': " + e.what());
    }
    if (set_size(r.selected) > q.imp_max)
      throw SchemaError("line " + std::to_string(lineno) + ": field 'selected': " +
                        std::to_string(set_size(r.selected)) + " options exceed imp_max " +
                        std::to_string(q.imp_max));
    r.likert = static_cast<int>(likert);
    r.time_s = time_s;
    responses.push_back(std::move(r));
  }
  return Campaign(std::move(questions), std::move(responses));
}

void write_campaign_csv(const Campaign& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw SchemaError("cannot write '" + path + "'");
  out << kHeader << '\n';
  for (const Response& r : c.responses()) {
    const Question& q = c.question(r.question);
    std::string frame_s;
    for (int i = 0; i < q.frame.size(); ++i) {
      if (i) frame_s += '|';
      frame_s += q.frame.label(i);
    }
    out << r.contributor << ',' << q.id << ',' << q.frame.set_to_string(r.selected) << ','
        << r.likert << ',' << format_double(r.time_s) << ',' << (q.is_attention ? 1 : 0) << ','
        << q.ref_question << ',' << q.gold << ',' << frame_s << ',' << q.imp_max << '\n';
  }
}

}  // namespace crowdbelief
