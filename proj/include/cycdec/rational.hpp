#pragma once

// Exact rational scalar used throughout the library, usable as an Eigen scalar.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include <Eigen/Core>

namespace cycdec {

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(int value) : value_(static_cast<long>(value)) {}
  Rational(long value) : value_(value) {}
  Rational(long long value) : value_(static_cast<long>(value)) {}
  Rational(long long num, long long den);
  explicit Rational(const mpz_class& integer) : value_(integer) {}
  explicit Rational(mpq_class value) : value_(std::move(value)) {
    value_.canonicalize();
  }

  /// Parses "a", "a/b" or a finite decimal such as "-0.125".
  static Rational parse(std::string_view text);

  const mpq_class& raw() const { return value_; }
  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }

  double to_double() const { return value_.get_d(); }

  /// Always "num/den", also for integers.
  std::string fraction() const;
  /// "num" for integers, "num/den" otherwise.
  std::string str() const;
  /// Rounded decimal with `digits` fractional digits, for human output only.
  std::string decimal(int digits) const;

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) {
    return Rational(mpq_class(-a.value_));
  }
  friend Rational operator+(const Rational& a) { return a; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return cmp(a.value_, b.value_) == 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_;
};

std::ostream& operator<<(std::ostream& os, const Rational& q);

inline Rational abs(const Rational& q) { return q.sign() < 0 ? -q : q; }
inline Rational positive_part(const Rational& q) { return q.sign() > 0 ? q : Rational(0); }
inline const Rational& conj(const Rational& q) { return q; }
inline const Rational& real(const Rational& q) { return q; }
inline Rational imag(const Rational&) { return Rational(0); }
inline Rational abs2(const Rational& q) { return q * q; }
inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

/// Nearest rational with the given denominator (ties away from zero).
Rational snap(double value, long denominator);

mpz_class lcm(const mpz_class& a, const mpz_class& b);

}  // namespace cycdec

namespace Eigen {

template <>
struct NumTraits<cycdec::Rational> : GenericNumTraits<cycdec::Rational> {
  using Real = cycdec::Rational;
  using NonInteger = cycdec::Rational;
  using Nested = cycdec::Rational;
  using Literal = cycdec::Rational;

  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 4,
    MulCost = 8
  };

  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static int digits10() { return 0; }
};

}  // namespace Eigen

namespace cycdec {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using RVector = Vector<Rational>;
using RMatrix = Matrix<Rational>;

}  // namespace cycdec
