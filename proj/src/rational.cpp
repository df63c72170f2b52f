#include "cycdec/rational.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "cycdec/error.hpp"

namespace cycdec {

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s) {
  if (!is_integer_literal(s)) {
    throw Error(ErrorCode::Parse, "not an integer: '" + std::string(s) + "'");
  }
  if (s.front() == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

}  // namespace

Rational::Rational(long long num, long long den) : value_(static_cast<long>(num), 1) {
  if (den == 0) throw Error(ErrorCode::Contract, "zero denominator");
  value_ /= mpq_class(static_cast<long>(den));
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  if (text.empty()) throw Error(ErrorCode::Parse, "empty number");
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const mpz_class num = parse_integer(text.substr(0, slash));
    const std::string_view den_text = text.substr(slash + 1);
    if (!den_text.empty() && (den_text.front() == '-' || den_text.front() == '+')) {
      throw Error(ErrorCode::Parse, "signed denominator: '" + std::string(text) + "'");
    }
    const mpz_class den = parse_integer(den_text);
    if (den == 0) throw Error(ErrorCode::Parse, "zero denominator: '" + std::string(text) + "'");
    mpq_class q(num, den);
    return Rational(std::move(q));
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    const std::string_view frac = text.substr(dot + 1);
    bool negative = false;
    if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) {
      negative = whole.front() == '-';
      whole.remove_prefix(1);
    }
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !is_integer_literal(whole)) ||
        (!frac.empty() && !is_integer_literal(frac)) ||
        (!frac.empty() && (frac.front() == '-' || frac.front() == '+'))) {
      throw Error(ErrorCode::Parse, "malformed decimal: '" + std::string(text) + "'");
    }
    mpz_class digits(std::string(whole) + std::string(frac), 10);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpq_class q(digits, scale);
    if (negative) q = -q;
    return Rational(std::move(q));
  }
  return Rational(parse_integer(text));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error(ErrorCode::Contract, "division by zero");
  value_ /= o.value_;
  return *this;
}

std::string Rational::fraction() const {
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string Rational::str() const {
  if (is_integer()) return value_.get_num().get_str();
  return fraction();
}

std::string Rational::decimal(int digits) const {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  // round half away from zero
  mpz_class scaled_num = abs(value_.get_num()) * scale * 2 + value_.get_den();
  mpz_class denom = value_.get_den() * 2;
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), scaled_num.get_mpz_t(), denom.get_mpz_t());
  std::string s = q.get_str();
  if (digits > 0) {
    if (s.size() <= static_cast<std::size_t>(digits)) {
      s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    }
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  }
  if (sign() < 0 && q != 0) s.insert(0, "-");
  return s;
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

Rational snap(double value, long denominator) {
  if (!std::isfinite(value)) throw Error(ErrorCode::Contract, "cannot snap a non-finite value");
  if (denominator <= 0) throw Error(ErrorCode::Contract, "snap denominator must be positive");
  const double scaled = std::round(value * static_cast<double>(denominator));
  return Rational(static_cast<long long>(scaled), denominator);
}

mpz_class lcm(const mpz_class& a, const mpz_class& b) {
  mpz_class r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

}  // namespace cycdec
