#include "ppadtree/brouwer2d.hpp"
#include "ppadtree/error.hpp"

namespace ppad::b2d {

// FirstBit takes its decode threshold T and gain G as parameters. On raw
// coordinates the reduction uses T = 1/2 and G = L. Packed values are exact
// dyadics whose first bit sits exactly at 1/2, so they use
// T = 1/2 - 2^-(K+1) and G = 2^(K+1), which decode every packing of at most K
// bits without error.
const std::string& macro_library_source() {
  static const std::string src = R"SLP(
macro FirstBit(x, b; T, G) {
  # extract the first bit of x into b
  b <- T
  b <- x -b b
  b <- b *b G
  # remove the first bit of x
  b <- b *b 0.5
  x <- x -b b
  x <- x *b 2
  b <- b *b 2
}

macro Clear(x; I, K) {
  x' <- x *b 1
  for i in 1..max(I) {
    b <- 0
    FirstBit(x', b; 1/2 - 1/2^(K+1), 2^(K+1))
    if i in I {
      b <- b *b 1/2^i
      x <- x -b b
    }
  }
}

macro Pack(x, y; S, T, G, K) {
  Clear(x; S, K)
  y' <- y *b 1
  for i in 1..len(S) {
    b <- 0
    FirstBit(y', b; T, G)
    b <- b *b 1/2^S[i]
    x <- x +b b
  }
}

macro Unpack(x, y; S, K) {
  x' <- x *b 1
  for i in 1..max(S) {
    b <- 0
    FirstBit(x', b; 1/2 - 1/2^(K+1), 2^(K+1))
    if i in S {
      b <- b *b 1/2^indexof(S, i)
      y <- y +b b
    }
  }
}

# bit i3 of x becomes (bit i1) or (bit i2)
macro Or(x; i1, i2, i3, K) {
  a <- 0
  Unpack(x, a; [i1], K)
  Unpack(x, a; [i2], K)
  Pack(x, a; [i3], 1/2 - 1/2^(K+1), 2^(K+1), K)
}

# bit i2 of x becomes not (bit i1)
macro Not(x; i1, i2, K) {
  a <- 0
  Unpack(x, a; [i1], K)
  b <- 0.5
  a <- b -b a
  Pack(x, a; [i2], 1/2 - 1/2^(K+1), 2^(K+1), K)
}

# Gate i writes bit N0 + i. kind[i] is 1 for OR and 0 for NOT; in1 and in2
# hold the bit positions of its arguments.
macro Simulate(x; N0, kind, in1, in2, K) {
  for i in 1..len(kind) {
    if kind[i] == 1 { Or(x; in1[i], in2[i], N0 + i, K) }
    if kind[i] == 0 { Not(x; in1[i], N0 + i, K) }
  }
}

# Unpack leaves b_i / 2 in a, hence the factor 2 in the multipliers.
macro AddVector(x, ox, oy; i, k, dx, dy, K) {
  a <- 0
  Unpack(x, a; [i], K)
  a <- 2 * abs(dx) / k *b a
  if dx >= 0 { ox <- ox +b a }
  if dx < 0 { ox <- ox -b a }
  a <- 0
  Unpack(x, a; [i], K)
  a <- 2 * abs(dy) / k *b a
  if dy >= 0 { oy <- oy +b a }
  if dy < 0 { oy <- oy -b a }
}
)SLP";
  return src;
}

const slp::MacroLib& macro_library() {
  static const slp::MacroLib lib = slp::parse_slp(macro_library_source()).macros;
  return lib;
}

Rational packed_threshold(int K) { return Rational(1, 2) - Rational::pow2(-(K + 1)); }
Rational packed_gain(int K) { return Rational::pow2(K + 1); }

Rational packed(const std::vector<int>& bits) {
  Rational x(0);
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) x += Rational::pow2(-static_cast<long>(i + 1));
  return x;
}

std::vector<int> unpack_bits(const Rational& x, int K) {
  Rational scaled = x * Rational::pow2(K);
  if (!scaled.is_integer() || x.sign() < 0 || x >= Rational(1))
    throw ValidationError(x.str() + " is not a packing of " + std::to_string(K) + " bits");
  mpz_class v = scaled.raw().get_num();
  std::vector<int> bits(static_cast<std::size_t>(K));
  for (int i = 0; i < K; ++i) bits[static_cast<std::size_t>(i)] = mpz_tstbit(v.get_mpz_t(), static_cast<mp_bitcnt_t>(K - 1 - i));
  return bits;
}

Rational sqrt2_convergent(int digits) {
  if (digits < 0 || digits > 200) throw ValidationError("sqrt2 precision must be between 0 and 200 digits");
  Rational bound = Rational(1) / power_of_ten(digits);
  mpz_class p = 1, q = 1;
  for (;;) {
    Rational r(mpq_class(p, q));
    if (within_sqrt2(r, bound)) return r;
    mpz_class np = p + 2 * q, nq = p + q;
    p = np;
    q = nq;
  }
}

bool within_sqrt2(const Rational& r, const Rational& bound) {
  Rational lo = r - bound, hi = r + bound;
  bool lo_ok = lo.sign() <= 0 || lo * lo <= Rational(2);
  bool hi_ok = hi.sign() > 0 && hi * hi >= Rational(2);
  return lo_ok && hi_ok;
}

ReductionParams ReductionParams::make(int n, int k, const Rational& eps, int sqrt2_digits,
                                      std::optional<Rational> eps_prime) {
  ReductionParams p;
  p.n = n;
  p.k = k;
  p.eps = eps;
  p.sqrt2_digits = sqrt2_digits;
  if (n < 1 || n > 30) throw ValidationError("n must be between 1 and 30");
  if (k < 1) throw ValidationError("k must be positive");
  p.L = Rational(k + 2) * Rational::pow2(n + 1);
  p.R = sqrt2_convergent(sqrt2_digits);
  p.eps_prime = eps_prime ? *eps_prime : Rational(9, 10) * (p.R - Rational(1)) * eps;
  p.validate();
  return p;
}

void ReductionParams::validate() const {
  if (n < 1) throw ValidationError("n must be positive");
  if (k < 1) throw ValidationError("k must be positive");
  if (eps.sign() <= 0 || eps >= Rational(1, 2))
    throw ValidationError("eps must satisfy 0 < eps < 1/2, got " + eps.str());
  if (L != Rational(k + 2) * Rational::pow2(n + 1)) throw ValidationError("L must equal (k+2) 2^(n+1)");
  if (R <= Rational(1)) throw ValidationError("R must exceed 1");
  if (!within_sqrt2(R, Rational(1) / power_of_ten(sqrt2_digits)))
    throw ValidationError("R = " + R.str() + " is not within 10^-" + std::to_string(sqrt2_digits) +
                          " of sqrt(2)");
  if (eps_prime.sign() <= 0 || eps_prime >= (R - Rational(1)) * eps)
    throw ValidationError("eps' must satisfy 0 < eps' < (R-1) eps");
}

Rational ReductionParams::delta() const {
  return Rational(1) / (Rational(k + 1) * Rational::pow2(n + 1));
}

}  // namespace ppad::b2d
