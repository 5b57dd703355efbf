#include "vimod/csvio.hpp"

#include <charconv>
#include <cstdlib>
#include <system_error>

#include "vimod/errors.hpp"

namespace vimod {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n';
}

// [begin, end) of the field with surrounding whitespace stripped.
std::pair<const char*, const char*> trimmed(const std::string& s) {
  const char* begin = s.data();
  const char* end = begin + s.size();
  while (begin < end && is_space(*begin)) {
    ++begin;
  }
  while (end > begin && is_space(end[-1])) {
    --end;
  }
  return {begin, end};
}

}  // namespace

double parse_double(const std::string& s) {
  double v = 0.0;
  const auto [begin, end] = trimmed(s);
  const auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc() || res.ptr != end) {
    throw IoError("bad numeric field: '" + s + "'");
  }
  return v;
}

long parse_long(const std::string& s) {
  long v = 0;
  const auto [begin, end] = trimmed(s);
  const auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc() || res.ptr != end) {
    throw IoError("bad integer field: '" + s + "'");
  }
  return v;
}

std::vector<std::string> split_fields(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace vimod
