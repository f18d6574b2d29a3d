#pragma once

#include <string>
#include <vector>

namespace crowdbelief {

// Shortest decimal string that round-trips the double (to_chars).
std::string format_double(double x);
double parse_double(const std::string& s, int line, const std::string& field);
long parse_long(const std::string& s, int line, const std::string& field);

// Strict comma splitter; the interchange format never quotes fields, so
// embedded commas are a schema error upstream (labels are validated).
std::vector<std::string> split_csv_line(const std::string& line);
std::vector<std::string> split_on(const std::string& s, char sep);

}  // namespace crowdbelief
