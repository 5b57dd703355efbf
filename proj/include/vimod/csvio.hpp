#pragma once

#include <string>
#include <vector>

namespace vimod {

// Shortest decimal form that parses back to the identical double.
std::string format_double(double v);

double parse_double(const std::string& s);
long parse_long(const std::string& s);

// Splits on the separator without trimming; empty fields preserved.
std::vector<std::string> split_fields(const std::string& line, char sep);

}  // namespace vimod
