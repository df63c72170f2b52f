#pragma once

// Shared helpers for the line-oriented file formats.

#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "cycdec/error.hpp"
#include "cycdec/rational.hpp"

namespace cycdec::text {

/// A non-empty, comment-stripped input line split on whitespace.
struct Line {
  std::size_t number = 0;
  std::vector<std::string> tokens;
};

/// Reads all non-blank lines; everything after '#' is dropped.
std::vector<Line> read_lines(std::istream& in);

[[noreturn]] void fail(std::string_view source, std::size_t line, const std::string& message);

Rational parse_rational(std::string_view source, const Line& line, const std::string& token);
std::int64_t parse_int(std::string_view source, const Line& line, const std::string& token);

/// Exact "num/den" rendering. When `decimals` >= 0 a rounded decimal is
/// appended after '~' ("1/3~0.333"); parse_rational ignores that suffix.
std::string number(const Rational& q, int decimals = -1);

}  // namespace cycdec::text
