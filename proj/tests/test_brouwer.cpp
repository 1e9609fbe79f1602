#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "ppadtree/brouwer.hpp"
#include "ppadtree/error.hpp"
#include "support.hpp"

using namespace ppad;
using namespace ppad::brouwer;
using testsupport::Rng;

namespace {

using Square = std::pair<std::int64_t, std::int64_t>;

// Netlist whose output is a fixed color everywhere.
BoolCircuit constant_color(int n, int color) {
  NetlistBuilder nb(2 * n);
  std::array<int, 3> out{NetlistBuilder::kFalse, NetlistBuilder::kFalse, NetlistBuilder::kFalse};
  out[static_cast<std::size_t>(color - 1)] = NetlistBuilder::kTrue;
  return nb.finish(out);
}

bool one_hot(const std::array<std::uint8_t, 3>& o) { return o[0] + o[1] + o[2] == 1; }

// Straight reading of the corner rule, independent of find_trichromatic.
std::vector<Square> manual_squares(int n, const std::vector<int>& t) {
  const std::int64_t s = std::int64_t{1} << n;
  std::vector<Square> out;
  for (std::int64_t x = 0; x + 1 < s; ++x)
    for (std::int64_t y = 0; y + 1 < s; ++y) {
      std::set<int> cs;
      for (int dx = 0; dx < 2; ++dx)
        for (int dy = 0; dy < 2; ++dy) cs.insert(t[static_cast<std::size_t>((x + dx) * s + y + dy)]);
      if (cs.size() == 3) out.emplace_back(x, y);
    }
  return out;
}

}  // namespace

TEST_CASE("bnet round trip and errors") {
  auto c = parse_bnet(testsupport::read_data("toy_n1.bnet"));
  CHECK(c.num_inputs == 2);
  CHECK(c.gates.size() == 6);
  CHECK(parse_bnet(to_bnet(c)) == c);
  CHECK_THROWS_AS(parse_bnet("inputs 2\ng2 = NOT g5\noutputs g2 g2 g2\n"), ValidationError);
  CHECK_THROWS_AS(parse_bnet("inputs 2\ng2 = AND g0 g1\noutputs g2 g2 g2\n"), ValidationError);
  CHECK_THROWS_AS(parse_bnet("inputs 2\ng2 = NOT g0\noutputs g2 g2\n"), ValidationError);
}

TEST_CASE("toy instance colors") {
  DiscreteBrouwerInstance inst{1, parse_bnet(testsupport::read_data("toy_n1.bnet")), Boundary::original()};
  CHECK(eval_color(inst, 0, 0) == 1);
  CHECK(eval_color(inst, 0, 1) == 1);
  CHECK(eval_color(inst, 1, 0) == 2);
  CHECK(eval_color(inst, 1, 1) == 3);
  CHECK(find_trichromatic(inst) == std::vector<Square>{{0, 0}});
  CHECK_FALSE(boundary_violation(inst));
}

TEST_CASE("boundary colors") {
  for (int y = 0; y < 8; ++y) CHECK(boundary_color(3, Boundary::original(), 0, y) == 1);
  CHECK(boundary_color(3, Boundary::original(), 4, 0) == 2);
  CHECK(boundary_color(3, Boundary::original(), 7, 3) == 3);
  CHECK(boundary_color(3, Boundary::original(), 3, 7) == 3);
  CHECK_FALSE(boundary_color(3, Boundary::original(), 3, 3));
  auto thick = Boundary::thick(Rational(1, 5));
  CHECK(boundary_color(4, thick, 9, 3) == 1);   // 3/16 <= 1/5
  CHECK(boundary_color(4, thick, 3, 4) == 2);   // 4/16 > 1/5
  CHECK(boundary_color(4, thick, 13, 8) == 3);  // 13/16 >= 4/5
  CHECK_FALSE(boundary_color(4, thick, 12, 8));
}

TEST_CASE("enforce_boundary examples") {
  DiscreteBrouwerInstance three{2, enforce_boundary(constant_color(2, 3), 2, Boundary::original()),
                                Boundary::original()};
  CHECK(eval_color(three, 0, 3) == 1);

  DiscreteBrouwerInstance one{1, enforce_boundary(constant_color(1, 1), 1, Boundary::original()),
                              Boundary::original()};
  CHECK(eval_color(one, 1, 1) == 3);

  auto thick = Boundary::thick(Rational(1, 5));
  DiscreteBrouwerInstance t{4, enforce_boundary(constant_color(4, 1), 4, thick), thick};
  CHECK(eval_color(t, 1, 5) == 2);
  CHECK(eval_color(t, 8, 2) == 1);
  CHECK(eval_color(t, 8, 8) == 1);  // interior passes through

  CHECK_THROWS_AS(enforce_boundary(constant_color(2, 1), 3, Boundary::original()), ValidationError);
  CHECK_THROWS_AS(enforce_boundary(constant_color(2, 1), 2, Boundary::thick(Rational(1, 2))), ValidationError);
}

TEST_CASE("boundary law and one-hot soundness, exhaustive") {
  Rng rng(5);
  for (int n = 1; n <= 4; ++n) {
    for (const Boundary& b : {Boundary::original(), Boundary::thick(Rational(1, 5)), Boundary::thick(Rational(2, 5))}) {
      if (b.kind == Boundary::Kind::Thick && n == 1) continue;
      auto raw = testsupport::random_netlist(rng, 2 * n, 30);
      // Force the raw netlist one-hot before wrapping.
      NetlistBuilder nb(2 * n);
      std::vector<int> ins;
      for (int i = 0; i < 2 * n; ++i) ins.push_back(i);
      auto o = nb.instantiate(raw, ins);
      int c2 = nb.lit_and(nb.lit_not(o[0]), o[1]);
      int c3 = nb.lit_and(nb.lit_not(o[0]), nb.lit_not(o[1]));
      auto wrapped = enforce_boundary(nb.finish({o[0], c2, c3}), n, b);
      DiscreteBrouwerInstance inst{n, wrapped, b};
      const std::int64_t s = inst.side();
      for (std::int64_t x = 0; x < s; ++x)
        for (std::int64_t y = 0; y < s; ++y) {
          CHECK(one_hot(wrapped.eval_outputs(encode_point(n, x, y))));
          if (auto want = boundary_color(n, b, x, y)) CHECK(eval_color(inst, x, y) == *want);
        }
      CHECK_FALSE(boundary_violation(inst));
    }
  }
}

TEST_CASE("thick_bits") {
  CHECK(thick_bits(2, Rational(1, 5)) == 3);
  CHECK(thick_bits(2, Rational(2, 5)) == 5);
  CHECK(thick_bits(3, Rational(1, 10)) == 4);
  CHECK_THROWS_AS(thick_bits(2, Rational(1, 2)), ValidationError);
}

TEST_CASE("find_trichromatic agrees with manual enumeration") {
  // Colored 1 below the diagonal, 2 on the left, 3 elsewhere.
  const int n = 2;
  std::vector<int> table(16);
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) table[static_cast<std::size_t>(x * 4 + y)] = y < x ? 1 : (x == 0 ? 2 : 3);
  CHECK(find_trichromatic(n, table) == manual_squares(n, table));
  DiscreteBrouwerInstance inst{n, circuit_from_table(n, table), Boundary::original()};
  CHECK(color_table(inst) == table);

  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    int m = static_cast<int>(testsupport::uniform(rng, 1, 4));
    auto t = testsupport::random_table(rng, m);
    auto got = find_trichromatic(m, t);
    CHECK(got == manual_squares(m, t));
    CHECK_FALSE(got.empty());
  }
}

TEST_CASE("monochromatic interior: solutions sit where boundary colors meet") {
  const int n = 3;
  DiscreteBrouwerInstance inst{n, enforce_boundary(constant_color(n, 3), n, Boundary::original()),
                               Boundary::original()};
  auto sq = find_trichromatic(inst);
  REQUIRE_FALSE(sq.empty());
  for (auto [x, y] : sq) CHECK((x == 0 && y == 0));
}

TEST_CASE("thicken maps solutions back") {
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    int n = static_cast<int>(testsupport::uniform(rng, 1, 3));
    Rational eps = trial % 2 ? Rational(1, 5) : Rational(1, 3);
    auto inst = testsupport::random_instance(rng, n);
    auto emb = thicken(inst, eps);
    CHECK(emb.instance.n == thick_bits(n, eps));
    CHECK_FALSE(boundary_violation(emb.instance));
    auto orig = find_trichromatic(inst);
    auto sols = find_trichromatic(emb.instance);
    REQUIRE_FALSE(sols.empty());
    for (auto [x, y] : sols) {
      auto back = map_square_back(emb, n, x, y);
      REQUIRE(back);
      CHECK(std::find(orig.begin(), orig.end(), *back) != orig.end());
      // strictly inside the [eps, 1 - eps] region
      Rational side = Rational::pow2(emb.instance.n);
      CHECK(Rational(x) / side > eps);
      CHECK(Rational(y + 1) / side < Rational(1) - eps);
    }
  }
}

TEST_CASE("thicken layout") {
  Rng rng(3);
  auto inst = testsupport::random_instance(rng, 2);
  auto emb = thicken(inst, Rational(1, 5));
  CHECK(emb.instance.n == 3);
  CHECK(emb.x0 == 2);
  CHECK(emb.y0 == 2);
  // Embedded copy is transposed: thick (X, Y) shows original (Y - y0, X - x0).
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) {
      if (boundary_color(3, emb.instance.boundary, emb.x0 + y, emb.y0 + x)) continue;
      CHECK(eval_color(emb.instance, emb.x0 + y, emb.y0 + x) == eval_color(inst, x, y));
    }
  // Left of the copy (and above the bottom band) the thick rule gives 2.
  CHECK(eval_color(emb.instance, 1, 4) == 2);
  CHECK(eval_color(emb.instance, 4, 1) == 1);
  CHECK_THROWS_AS(thicken(testsupport::thick_n2_instance(), Rational(1, 5)), ValidationError);
}

TEST_CASE("thick_n2 fixture") {
  auto inst = testsupport::thick_n2_instance();
  CHECK_FALSE(boundary_violation(inst));
  CHECK(find_trichromatic(inst) == std::vector<Square>{{1, 1}});
}
