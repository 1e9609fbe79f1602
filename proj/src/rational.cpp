#include "ppadtree/rational.hpp"

#include <limits>

#include "ppadtree/error.hpp"

namespace ppad {

Rational::Rational(long num, long den) {
  if (den == 0) throw ValidationError("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw ValidationError("division by zero");
  v_ /= o.v_;
  return *this;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  mpq_class value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw ValidationError("malformed rational '" + std::string(text) + "'");
    mpz_class d{std::string(den)};
    if (d == 0) throw ValidationError("zero denominator in '" + std::string(text) + "'");
    value = mpq_class(mpz_class(std::string(num)), d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac)))
      throw ValidationError("malformed decimal '" + std::string(text) + "'");
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    std::string digits = std::string(whole.empty() ? "0" : whole) + std::string(frac);
    value = mpq_class(mpz_class(digits), scale);
  } else {
    if (!all_digits(s)) throw ValidationError("malformed number '" + std::string(text) + "'");
    value = mpq_class(mpz_class(std::string(s)));
  }
  value.canonicalize();
  if (negative) value = -value;
  return Rational(std::move(value));
}

Rational Rational::pow2(long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
  return e >= 0 ? Rational(mpq_class(p)) : Rational(mpq_class(mpz_class(1), p));
}

std::string Rational::str() const {
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

bool Rational::is_integer() const { return v_.get_den() == 1; }

std::int64_t Rational::floor_int() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
  if (!q.fits_slong_p()) throw ValidationError("integer part out of range");
  return q.get_si();
}

std::int64_t Rational::ceil_int() const {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
  if (!q.fits_slong_p()) throw ValidationError("integer part out of range");
  return q.get_si();
}

Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }
Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

Rational power_of_ten(int e) {
  if (e < 0) throw ValidationError("negative exponent");
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e));
  return Rational(mpq_class(p));
}

void bounded_add(mpq_class& out, const mpq_class& a, const mpq_class& b, const mpq_class& hi) {
  mpq_add(out.get_mpq_t(), a.get_mpq_t(), b.get_mpq_t());
  if (cmp(out, hi) > 0) out = hi;
}

void bounded_sub(mpq_class& out, const mpq_class& a, const mpq_class& b) {
  mpq_sub(out.get_mpq_t(), a.get_mpq_t(), b.get_mpq_t());
  if (sgn(out) < 0) out = 0;
}

void bounded_mul(mpq_class& out, const mpq_class& a, const mpq_class& c, const mpq_class& hi) {
  if (c == 1) {
    if (&out != &a) out = a;
  } else {
    mpq_mul(out.get_mpq_t(), a.get_mpq_t(), c.get_mpq_t());
  }
  if (cmp(out, hi) > 0) out = hi;
}

}  // namespace ppad
