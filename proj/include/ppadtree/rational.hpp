#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace ppad {

// Exact arbitrary-precision fraction, always canonical (lowest terms,
// positive denominator). Thin value wrapper over GMP's mpq_class.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : v_(value) {}  // NOLINT: implicit by design of literals
  Rational(long num, long den);
  explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }
  explicit Rational(mpq_class&& v) : v_(std::move(v)) { v_.canonicalize(); }

  // Accepts "p/q", "p", and finite decimals such as "0.125" or "-3.5".
  static Rational parse(std::string_view text);
  // 2^e for e >= 0, 2^-e otherwise.
  static Rational pow2(long e);

  std::string str() const;  // always "p/q"
  double to_double() const { return v_.get_d(); }

  const mpq_class& raw() const { return v_; }
  mpq_class& raw() { return v_; }

  bool is_integer() const;
  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }
  // Floor as a signed 64-bit value; throws if it does not fit.
  std::int64_t floor_int() const;
  std::int64_t ceil_int() const;
  std::string numerator_str() const { return v_.get_num().get_str(); }
  std::string denominator_str() const { return v_.get_den().get_str(); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class v_;
};

Rational abs(const Rational& x);
Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);
// 10^e for e >= 0.
Rational power_of_ten(int e);

// Bounded gate semantics with clip bound `hi` (1 for ordinary circuits,
// 1/10 after rescaling). Results are written into `out`, which may alias
// an argument.
void bounded_add(mpq_class& out, const mpq_class& a, const mpq_class& b, const mpq_class& hi);
void bounded_sub(mpq_class& out, const mpq_class& a, const mpq_class& b);
void bounded_mul(mpq_class& out, const mpq_class& a, const mpq_class& c, const mpq_class& hi);

}  // namespace ppad
