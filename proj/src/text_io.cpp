#include "cycdec/text_io.hpp"

#include <charconv>
#include <sstream>

namespace cycdec::text {

std::vector<Line> read_lines(std::istream& in) {
  std::vector<Line> out;
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream split(raw);
    Line line{number, {}};
    for (std::string tok; split >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) out.push_back(std::move(line));
  }
  return out;
}

void fail(std::string_view source, std::size_t line, const std::string& message) {
  throw Error(ErrorCode::Parse, std::string(source) + ":" + std::to_string(line) + ": " + message);
}

Rational parse_rational(std::string_view source, const Line& line, const std::string& token) {
  try {
    // "num/den~decimal" carries a human-readable approximation after '~'
    const auto tilde = token.find('~');
    return Rational::parse(tilde == std::string::npos ? std::string_view(token)
                                                      : std::string_view(token).substr(0, tilde));
  } catch (const Error&) {
    fail(source, line.number, "bad number '" + token + "'");
  }
}

std::int64_t parse_int(std::string_view source, const Line& line, const std::string& token) {
  std::int64_t value = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) {
    fail(source, line.number, "bad integer '" + token + "'");
  }
  return value;
}

std::string number(const Rational& q, int decimals) {
  if (decimals < 0) return q.fraction();
  return q.fraction() + "~" + q.decimal(decimals);
}

}  // namespace cycdec::text
