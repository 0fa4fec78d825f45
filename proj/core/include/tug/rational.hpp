#ifndef TUG_RATIONAL_HPP
#define TUG_RATIONAL_HPP

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tug {

/// Arbitrary-precision exact fraction. Always canonical: lowest terms,
/// positive denominator. Every scalar in the library (utilities, payoffs,
/// weights, prices, transfers) is a Rational; there is no floating point
/// anywhere on a result path.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}  // NOLINT: implicit so integer literals read naturally
  Rational(long num, long den);

  /// Parses "p", "-p" or "p/q" (q > 0 after canonicalization). Returns
  /// nullopt on anything else, including "p/0".
  static std::optional<Rational> parse(std::string_view text);

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);  // throws std::domain_error on /0

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return mpq_equal(a.v_.get_mpq_t(), b.v_.get_mpq_t()) != 0;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) < 0; }
  friend bool operator<=(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) <= 0; }
  friend bool operator>(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) > 0; }
  friend bool operator>=(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) >= 0; }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  Rational abs() const;

  /// "p" when the denominator is 1, "p/q" otherwise. Lossless.
  std::string str() const;
  /// Decimal approximation for display only; never used in computation.
  double approx() const { return v_.get_d(); }

 private:
  explicit Rational(mpq_class v) : v_(std::move(v)) {}
  mpq_class v_;
};

using RationalVector = std::vector<Rational>;

Rational dot(const RationalVector& a, const RationalVector& b);
RationalVector scale(const RationalVector& v, const Rational& s);
RationalVector add(const RationalVector& a, const RationalVector& b);
Rational sum(const RationalVector& v);

}  // namespace tug

#endif  // TUG_RATIONAL_HPP
