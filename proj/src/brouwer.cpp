#include <algorithm>

#include "ppadtree/brouwer.hpp"
#include "ppadtree/error.hpp"

namespace ppad::brouwer {

std::vector<std::uint8_t> encode_point(int n, std::int64_t gx, std::int64_t gy) {
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(2 * n));
  for (int i = 0; i < n; ++i) {
    bits[static_cast<std::size_t>(i)] = (gx >> (n - 1 - i)) & 1;
    bits[static_cast<std::size_t>(n + i)] = (gy >> (n - 1 - i)) & 1;
  }
  return bits;
}

int eval_color(const DiscreteBrouwerInstance& inst, std::int64_t gx, std::int64_t gy) {
  if (gx < 0 || gy < 0 || gx >= inst.side() || gy >= inst.side())
    throw ValidationError("grid point (" + std::to_string(gx) + ", " + std::to_string(gy) +
                          ") outside the 2^n grid");
  auto out = inst.circuit.eval_outputs(encode_point(inst.n, gx, gy));
  if (out[0] + out[1] + out[2] != 1)
    throw ValidationError("colour output at (" + std::to_string(gx) + ", " + std::to_string(gy) +
                          ") is not one-hot");
  return out[0] ? 1 : (out[1] ? 2 : 3);
}

namespace {

// Grid thresholds for the thick rule: lo = floor(eps 2^n), hi = ceil((1-eps) 2^n).
std::pair<std::int64_t, std::int64_t> thick_limits(int n, const Rational& eps) {
  Rational side = Rational::pow2(n);
  return {(eps * side).floor_int(), ((Rational(1) - eps) * side).ceil_int()};
}

void check_eps(const Rational& eps) {
  if (eps.sign() <= 0 || eps >= Rational(1, 2))
    throw ValidationError("eps must satisfy 0 < eps < 1/2, got " + eps.str());
}

}  // namespace

std::optional<int> boundary_color(int n, const Boundary& b, std::int64_t gx, std::int64_t gy) {
  const std::int64_t top = (std::int64_t{1} << n) - 1;
  if (b.kind == Boundary::Kind::Original) {
    if (gx == 0) return 1;
    if (gy == 0) return 2;
    if (gx == top || gy == top) return 3;
    return std::nullopt;
  }
  auto [lo, hi] = thick_limits(n, b.eps);
  if (gy <= lo) return 1;
  if (gx <= lo) return 2;
  if (gx >= hi || gy >= hi) return 3;
  return std::nullopt;
}

BoolCircuit enforce_boundary(const BoolCircuit& circ, int n, const Boundary& kind) {
  if (circ.num_inputs != 2 * n) throw ValidationError("netlist must have 2n inputs");
  circ.check_well_formed();
  if (kind.kind == Boundary::Kind::Thick) check_eps(kind.eps);
  NetlistBuilder nb(2 * n);
  std::vector<int> xs, ys, all_in;
  for (int i = 0; i < n; ++i) xs.push_back(nb.input(i));
  for (int i = 0; i < n; ++i) ys.push_back(nb.input(n + i));
  for (int i = 0; i < 2 * n; ++i) all_in.push_back(nb.input(i));
  auto inner = nb.instantiate(circ, all_in);

  const std::int64_t top = (std::int64_t{1} << n) - 1;
  int c1, c2, c3;
  if (kind.kind == Boundary::Kind::Original) {
    c1 = nb.le_const(xs, 0);
    c2 = nb.le_const(ys, 0);
    c3 = nb.lit_or(nb.ge_const(xs, top), nb.ge_const(ys, top));
  } else {
    auto [lo, hi] = thick_limits(n, kind.eps);
    c1 = nb.le_const(ys, lo);
    c2 = nb.le_const(xs, lo);
    c3 = nb.lit_or(nb.ge_const(xs, hi), nb.ge_const(ys, hi));
  }
  // Priority c1 > c2 > c3 > inner colour; keeps the output one-hot.
  int n1 = nb.lit_not(c1), n2 = nb.lit_not(c2), n3 = nb.lit_not(c3);
  int f2 = nb.lit_and(n1, c2);
  int f3 = nb.all({n1, n2, c3});
  int free = nb.all({n1, n2, n3});
  return nb.finish({nb.lit_or(c1, nb.lit_and(free, inner[0])),
                    nb.lit_or(f2, nb.lit_and(free, inner[1])),
                    nb.lit_or(f3, nb.lit_and(free, inner[2]))});
}

int thick_bits(int n, const Rational& eps) {
  check_eps(eps);
  const Rational limit = Rational(1) - Rational(2) * eps;
  for (int m = n;; ++m) {
    if (Rational::pow2(n - m) < limit) return m;
    if (m > n + 62) throw ValidationError("eps too close to 1/2");
  }
}

// The embedded copy is transposed: thick point (X, Y) shows the original
// colour at (x, y) = (Y - y0, X - x0). The original instance is coloured 1 on
// its left edge and 2 on its bottom edge, whereas the thick border is 1 along
// the bottom and 2 along the left; transposing lines the two up.
ThickEmbedding thicken(const DiscreteBrouwerInstance& inst, const Rational& eps) {
  if (inst.boundary.kind != Boundary::Kind::Original)
    throw ValidationError("thicken expects an instance with the original boundary");
  const int n = inst.n;
  const int m = thick_bits(n, eps);
  const std::int64_t off = (std::int64_t{1} << (m - 1)) - (std::int64_t{1} << (n - 1));
  const std::int64_t span = (std::int64_t{1} << n) - 1;

  NetlistBuilder nb(2 * m);
  std::vector<int> X, Y;
  for (int i = 0; i < m; ++i) X.push_back(nb.input(i));
  for (int i = 0; i < m; ++i) Y.push_back(nb.input(m + i));

  int in_region = nb.all({nb.ge_const(X, off), nb.le_const(X, off + span), nb.ge_const(Y, off),
                          nb.le_const(Y, off + span)});
  auto dx = nb.sub_const(X, off);
  auto dy = nb.sub_const(Y, off);
  std::vector<int> orig_in;
  orig_in.insert(orig_in.end(), dy.end() - n, dy.end());  // original x
  orig_in.insert(orig_in.end(), dx.end() - n, dx.end());  // original y
  auto orig = nb.instantiate(inst.circuit, orig_in);

  int below = nb.lit_not(nb.ge_const(Y, off));
  int left = nb.lit_and(nb.lit_not(below), nb.lit_not(nb.ge_const(X, off)));
  int rest = nb.lit_and(nb.lit_not(below), nb.lit_not(left));
  BoolCircuit merged = nb.finish({nb.mux(in_region, orig[0], below), nb.mux(in_region, orig[1], left),
                                  nb.mux(in_region, orig[2], rest)});

  ThickEmbedding out;
  out.instance.n = m;
  out.instance.boundary = Boundary::thick(eps);
  out.instance.circuit = enforce_boundary(merged, m, out.instance.boundary);
  out.x0 = off;
  out.y0 = off;
  return out;
}

std::optional<std::pair<std::int64_t, std::int64_t>> map_square_back(const ThickEmbedding& emb,
                                                                      int original_n,
                                                                      std::int64_t gx,
                                                                      std::int64_t gy) {
  const std::int64_t last = (std::int64_t{1} << original_n) - 2;  // last square index
  std::int64_t ox = gy - emb.y0, oy = gx - emb.x0;
  if (ox < 0 || oy < 0 || ox > last || oy > last) return std::nullopt;
  return std::make_pair(ox, oy);
}

std::vector<int> color_table(const DiscreteBrouwerInstance& inst) {
  const std::int64_t s = inst.side();
  std::vector<int> t(static_cast<std::size_t>(s * s));
  for (std::int64_t x = 0; x < s; ++x)
    for (std::int64_t y = 0; y < s; ++y) t[static_cast<std::size_t>(x * s + y)] = eval_color(inst, x, y);
  return t;
}

std::vector<std::pair<std::int64_t, std::int64_t>> find_trichromatic(int n, const std::vector<int>& table) {
  const std::int64_t s = std::int64_t{1} << n;
  if (table.size() != static_cast<std::size_t>(s * s)) throw ValidationError("colour table has wrong size");
  auto at = [&](std::int64_t x, std::int64_t y) { return table[static_cast<std::size_t>(x * s + y)]; };
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (std::int64_t x = 0; x + 1 < s; ++x) {
    for (std::int64_t y = 0; y + 1 < s; ++y) {
      unsigned seen = 0;
      seen |= 1u << at(x, y);
      seen |= 1u << at(x + 1, y);
      seen |= 1u << at(x, y + 1);
      seen |= 1u << at(x + 1, y + 1);
      if (seen == 0b1110u) out.emplace_back(x, y);
    }
  }
  return out;
}

std::vector<std::pair<std::int64_t, std::int64_t>> find_trichromatic(const DiscreteBrouwerInstance& inst) {
  return find_trichromatic(inst.n, color_table(inst));
}

BoolCircuit circuit_from_table(int n, const std::vector<int>& table) {
  const std::int64_t s = std::int64_t{1} << n;
  if (table.size() != static_cast<std::size_t>(s * s)) throw ValidationError("colour table has wrong size");
  NetlistBuilder nb(2 * n);
  std::vector<int> terms[3];
  for (std::int64_t x = 0; x < s; ++x) {
    for (std::int64_t y = 0; y < s; ++y) {
      int c = table[static_cast<std::size_t>(x * s + y)];
      if (c < 1 || c > 3) throw ValidationError("colour table entries must be 1, 2 or 3");
      auto bits = encode_point(n, x, y);
      std::vector<int> lits;
      for (int i = 0; i < 2 * n; ++i) {
        int in = nb.input(i);
        lits.push_back(bits[static_cast<std::size_t>(i)] ? in : nb.lit_not(in));
      }
      terms[c - 1].push_back(nb.all(lits));
    }
  }
  return nb.finish({nb.any(terms[0]), nb.any(terms[1]), nb.any(terms[2])});
}

std::optional<std::pair<std::int64_t, std::int64_t>> boundary_violation(const DiscreteBrouwerInstance& inst) {
  const std::int64_t s = inst.side();
  for (std::int64_t x = 0; x < s; ++x)
    for (std::int64_t y = 0; y < s; ++y)
      if (auto want = boundary_color(inst.n, inst.boundary, x, y); want && *want != eval_color(inst, x, y))
        return std::make_pair(x, y);
  return std::nullopt;
}

}  // namespace ppad::brouwer
