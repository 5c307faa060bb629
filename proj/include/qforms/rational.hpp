#ifndef QFORMS_RATIONAL_HPP
#define QFORMS_RATIONAL_HPP

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

namespace qforms {

using Integer = mpz_class;

// Exact rational number. Invariants: always reduced, denominator > 0.
// Arithmetic on canonical values stays canonical, so reduction only happens
// at construction and parse time.
class Rational {
public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {} // intentionally implicit, mirrors integer literals
  Rational(const Integer& n) : v_(n) {}
  Rational(long num, long den);
  Rational(const Integer& num, const Integer& den);

  // Parses "p", "-p" or "p/q" (reduced or not); throws std::invalid_argument
  // on malformed text or zero denominator.
  static Rational from_string(std::string_view s);

  Integer num() const { return v_.get_num(); }
  Integer den() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  // "p/q" for non-integers, plain integer string otherwise.
  std::string str() const;

  Rational operator-() const { return Rational(mpq_class(-v_)); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return mpq_equal(a.v_.get_mpq_t(), b.v_.get_mpq_t()) != 0; }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) < 0; }
  friend bool operator<=(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) <= 0; }
  friend bool operator>(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) > 0; }
  friend bool operator>=(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) >= 0; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

  const mpq_class& raw() const { return v_; }

private:
  explicit Rational(mpq_class v) : v_(std::move(v)) {}
  mpq_class v_;
};

} // namespace qforms

#endif
