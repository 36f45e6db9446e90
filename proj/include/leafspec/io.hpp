#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "leafspec/tree.hpp"

namespace leafspec {

/// One integer per line; '#' comment lines and blank lines are skipped.
inline std::vector<std::int64_t> parse_sequence(std::istream& in) {
  std::vector<std::int64_t> out;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto values = detail::parse_integers(line);
    if (!values || values->size() != 1) {
      throw ParseError(ParseError::Kind::malformed, line_no, "expected one integer per line");
    }
    out.push_back((*values)[0]);
  }
  return out;
}

inline std::vector<std::int64_t> parse_sequence(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_sequence(in);
}

inline void write_sequence(std::ostream& out, const std::vector<std::int64_t>& a) {
  for (auto x : a) out << x << '\n';
}

}  // namespace leafspec
