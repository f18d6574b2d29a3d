#include "crowdbelief/csv.hpp"

#include <charconv>
#include <cstdlib>

#include "crowdbelief/errors.hpp"

namespace crowdbelief {

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s, int line, const std::string& field) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw SchemaError("line " + std::to_string(line) + ": field '" + field + "': bad number '" + s + "'");
  return v;
}

long parse_long(const std::string& s, int line, const std::string& field) {
  long v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw SchemaError("line " + std::to_string(line) + ": field '" + field + "': bad integer '" + s + "'");
  return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  return split_on(line, ',');
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      break;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

}  // namespace crowdbelief
