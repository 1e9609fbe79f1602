#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ppadtree/brouwer2d.hpp"
#include "ppadtree/error.hpp"
#include "support.hpp"

using namespace ppad;
using namespace ppad::b2d;
using testsupport::Rng;

namespace {

using Point = std::pair<Rational, Rational>;

slp::FlatSlp with_library(const std::string& src, const slp::ConstEnv& env = {}) {
  return slp::expand(slp::parse_slp(src), macro_library(), env);
}

// Extra live variables a call adds on top of x and y.
int extra_live(const std::string& call) {
  auto flat = with_library("input x, y\noutput x, y\n" + call);
  return slp::liveness(flat).max_live - 2;
}

Rational run1(const std::string& src, const Rational& x) { return slp::interpret(with_library(src), {x})[0]; }

std::vector<Rational> run2(const std::string& src, const Rational& x, const Rational& y) {
  return slp::interpret(with_library(src), {x, y});
}

const char* kSimulate =
    "input x\noutput x\nparam N0, kind, in1, in2, K\nSimulate(x; N0, kind, in1, in2, K)\n";

slp::ConstEnv simulate_env(const brouwer::BoolCircuit& c) {
  std::vector<Rational> kind, in1, in2;
  for (const auto& g : c.gates) {
    bool is_or = g.kind == brouwer::BoolGate::Kind::Or;
    kind.emplace_back(is_or ? 1 : 0);
    in1.emplace_back(g.a + 1);
    in2.emplace_back(is_or ? g.b + 1 : 0);
  }
  slp::ConstEnv env;
  env["N0"] = slp::CValue::of(Rational(c.num_inputs));
  env["kind"] = slp::CValue::of_list(kind);
  env["in1"] = slp::CValue::of_list(in1);
  env["in2"] = slp::CValue::of_list(in2);
  env["K"] = slp::CValue::of(Rational(c.num_refs()));
  return env;
}

// Packed simulation of `c` on every Boolean input, compared with direct evaluation.
void check_simulate(const brouwer::BoolCircuit& c) {
  auto flat = slp::expand(slp::parse_slp(kSimulate), macro_library(), simulate_env(c));
  const int K = c.num_refs();
  for (int v = 0; v < (1 << c.num_inputs); ++v) {
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(c.num_inputs));
    std::vector<int> ibits(static_cast<std::size_t>(c.num_inputs));
    for (int i = 0; i < c.num_inputs; ++i) bits[static_cast<std::size_t>(i)] = ibits[static_cast<std::size_t>(i)] = (v >> i) & 1;
    auto out = slp::interpret(flat, {packed(ibits)})[0];
    auto got = unpack_bits(out, K);
    auto want = c.run(bits);
    for (int r = 0; r < K; ++r) CHECK(got[static_cast<std::size_t>(r)] == want[static_cast<std::size_t>(r)]);
  }
}

}  // namespace

TEST_CASE("packing helpers") {
  CHECK(packed({1, 0, 1}) == Rational(5, 8));
  CHECK(unpack_bits(Rational(5, 8), 3) == std::vector<int>{1, 0, 1});
  CHECK_THROWS_AS(unpack_bits(Rational(1, 3), 3), ValidationError);
  CHECK(packed_threshold(3) == Rational(7, 16));
  CHECK(packed_gain(3) == Rational(16));
}

TEST_CASE("macro variable budgets") {
  CHECK(extra_live("b <- 0\nFirstBit(x, b; 1/2, 224)\ny <- y +b b") == 1);  // b is the argument; FirstBit adds nothing
  CHECK(extra_live("Clear(x; [2], 3)") == 2);
  CHECK(extra_live("Pack(x, y; [1, 2], 1/2, 224, 3)") == 2);
  CHECK(extra_live("Unpack(x, y; [1, 3], 3)") == 2);
  CHECK(extra_live("Or(x; 1, 2, 3, 3)") == 3);
  CHECK(extra_live("Not(x; 1, 2, 3)") == 3);
  CHECK(extra_live("Simulate(x; 2, [1, 0], [1, 3], [2, 0], 4)") == 3);
  CHECK(extra_live("AddVector(x, y, y; 1, 3, 1/5, -1/5, 3)") == 3);
}

TEST_CASE("FirstBit on 5/8 with L = 224") {
  auto out = run2("input x, b\noutput x, b\nFirstBit(x, b; 1/2, 224)", Rational(5, 8), Rational(0));
  CHECK(out[1] == Rational(1));
  CHECK(out[0] == Rational(1, 4));
  out = run2("input x, b\noutput x, b\nFirstBit(x, b; 1/2, 224)", Rational(1, 4), Rational(0));
  CHECK(out[1] == Rational(0));
  CHECK(out[0] == Rational(1, 2));
}

TEST_CASE("Clear, Pack and Unpack examples") {
  CHECK(run1("input x\noutput x\nClear(x; [2], 2)", packed({1, 1})) == packed({1, 0}));
  CHECK(run1("input x\noutput x\nClear(x; [1, 3], 3)", packed({1, 1, 1})) == packed({0, 1, 0}));
  CHECK(run2("input x, y\noutput x, y\nUnpack(x, y; [1, 3], 3)", packed({1, 0, 1}), Rational(0))[1] ==
        Rational(3, 4));
  // Packed-threshold decoding reads 1/2 as bit 1.
  CHECK(run2("input x, y\noutput x, y\nPack(x, y; [1], 1/2 - 1/4, 4, 1)", Rational(0), Rational(1, 2))[0] ==
        Rational(1, 2));
  // Pack overwrites bits already set.
  CHECK(run2("input x, y\noutput x, y\nPack(x, y; [2], 1/2 - 1/8, 8, 2)", packed({1, 1}), Rational(0))[0] ==
        packed({1, 0}));
  // Coordinate decoding: bits of 3/4 + 1/64 are 1, 1.
  CHECK(run2("input x, y\noutput x, y\nPack(x, y; [1, 2], 1/2, 64, 2)", Rational(0), Rational(49, 64))[0] ==
        Rational(3, 4));
}

TEST_CASE("Or and Not") {
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      auto x = run1("input x\noutput x\nOr(x; 1, 2, 3, 3)", packed({a, b, 0}));
      CHECK(unpack_bits(x, 3) == std::vector<int>{a, b, a | b});
      x = run1("input x\noutput x\nNot(x; 1, 3, 3)", packed({a, b, 1}));
      CHECK(unpack_bits(x, 3) == std::vector<int>{a, b, 1 - a});
    }
}

TEST_CASE("Simulate matches netlist evaluation") {
  using K = brouwer::BoolGate::Kind;
  brouwer::BoolCircuit one_not{1, {{K::Not, 0, 0}}, {1, 1, 1}};
  auto flat = slp::expand(slp::parse_slp(kSimulate), macro_library(), simulate_env(one_not));
  CHECK(unpack_bits(slp::interpret(flat, {packed({1})})[0], 2) == std::vector<int>{1, 0});

  brouwer::BoolCircuit one_or{2, {{K::Or, 0, 1}}, {2, 2, 2}};
  flat = slp::expand(slp::parse_slp(kSimulate), macro_library(), simulate_env(one_or));
  CHECK(unpack_bits(slp::interpret(flat, {packed({0, 1})})[0], 3) == std::vector<int>{0, 1, 1});

  Rng rng(31);
  for (int trial = 0; trial < 5; ++trial)
    check_simulate(testsupport::random_netlist(rng, static_cast<int>(testsupport::uniform(rng, 1, 4)), 10));
}

TEST_CASE("reduction width is eight") {
  auto inst = testsupport::thick_n2_instance();
  auto p = ReductionParams::make(2, 3, Rational(2, 5));
  auto flat = reduction_slp(inst, p);
  CHECK(slp::liveness(flat).max_live == 8);

  brouwer::DiscreteBrouwerInstance big{4, testsupport::top_bit_netlist(4), brouwer::Boundary::thick(Rational(2, 5))};
  auto c = build_reduction(big, ReductionParams::make(4, 5, Rational(2, 5)));
  CHECK(c.width() == 8);
  CHECK(circuit::validate(c).is_synchronous);
}

TEST_CASE("reduction deep inside the color-1 border moves up by eps") {
  auto inst = testsupport::thick_n2_instance();
  auto p = ReductionParams::make(2, 5, Rational(2, 5));
  auto c = build_reduction(inst, p);
  for (const Point& pt : {Point{Rational(3, 5), Rational(1, 8)}, Point{Rational(3, 10), Rational(1, 10)}}) {
    REQUIRE(count_poorly_positioned(pt, p) == 0);
    auto out = circuit::evaluate(c, {pt.first, pt.second});
    CHECK(out[0] == pt.first);
    CHECK(out[1] == pt.second + p.eps);
  }
}

TEST_CASE("reduction argument checks") {
  auto inst = testsupport::thick_n2_instance();
  CHECK_THROWS_AS(reduction_slp(inst, ReductionParams::make(2, 3, Rational(1, 5))), ValidationError);
  CHECK_THROWS_AS(reduction_slp(inst, ReductionParams::make(3, 3, Rational(2, 5))), ValidationError);
  brouwer::DiscreteBrouwerInstance orig{2, inst.circuit, brouwer::Boundary::original()};
  CHECK_THROWS_AS(reduction_slp(orig, ReductionParams::make(2, 3, Rational(2, 5))), ValidationError);
}

TEST_CASE("normalize_outputs puts the colors in the last three gates") {
  auto c = testsupport::top_bit_netlist(3);
  auto nc = normalize_outputs(c);
  CHECK(nc.outputs == std::array<int, 3>{nc.num_refs() - 3, nc.num_refs() - 2, nc.num_refs() - 1});
  for (int v = 0; v < 64; ++v) {
    std::vector<std::uint8_t> bits(6);
    for (int i = 0; i < 6; ++i) bits[static_cast<std::size_t>(i)] = (v >> i) & 1;
    CHECK(nc.eval_outputs(bits) == c.eval_outputs(bits));
  }
  CHECK(normalize_outputs(nc) == nc);
}

TEST_CASE("parameters") {
  auto p = ReductionParams::make(2, 3, Rational(2, 5));
  CHECK(p.L == Rational(40));
  CHECK(p.R == Rational(577, 408));
  CHECK(p.delta() == Rational(1, 32));
  CHECK(ReductionParams::make(4, 5, Rational(2, 5)).L == Rational(224));
  CHECK(ReductionParams::make(2, 3, Rational(2, 5), 6).R == Rational(1393, 985));
  CHECK_THROWS_AS(ReductionParams::make(2, 3, Rational(1, 2)), ValidationError);
  CHECK_THROWS_AS(ReductionParams::make(0, 3, Rational(1, 5)), ValidationError);
  CHECK_THROWS_AS(ReductionParams::make(2, 3, Rational(1, 5), 5, Rational(1, 10)), ValidationError);
  p.R = Rational(3, 2);
  CHECK_THROWS_AS(p.validate(), ValidationError);
}

TEST_CASE("sample points and poorly positioned counts") {
  auto p = ReductionParams::make(2, 3, Rational(2, 5));
  auto s = sample_points({Rational(0), Rational(0)}, p);
  REQUIRE(s.size() == 3);
  CHECK(s[2] == Point{Rational(1, 16), Rational(1, 16)});
  CHECK(sample_points({Rational(1), Rational(1)}, p)[1] == Point{Rational(1), Rational(1)});
  CHECK(poorly_positioned(Rational(0), 2, p.L));
  CHECK(poorly_positioned(Rational(1, 4) + Rational(1, 41), 2, p.L));
  CHECK_FALSE(poorly_positioned(Rational(1, 4) + Rational(1, 40), 2, p.L));
  CHECK(count_poorly_positioned({Rational(0), Rational(0)}, p) == 1);
  Rational h = Rational(1, 2) + Rational(1, 80);
  CHECK(count_poorly_positioned({h, h}, p) == 1);
  CHECK_THROWS_AS(count_poorly_positioned({Rational(2), Rational(0)}, p), ValidationError);

  Rng rng(41);
  auto p4 = ReductionParams::make(4, 5, Rational(2, 5));
  for (int t = 0; t < 2000; ++t)
    CHECK(count_poorly_positioned({testsupport::unit_rational(rng), testsupport::unit_rational(rng)}, p4) <= 2);
}

TEST_CASE("displacement geometry") {
  auto p = ReductionParams::make(2, 3, Rational(2, 5));
  auto v = displacement_vectors(p);
  CHECK(v[0] == Point{Rational(0), p.eps});
  CHECK(v[1] == Point{p.eps, (Rational(1) - p.R) * p.eps});
  CHECK(v[2] == Point{-p.eps, (Rational(1) - p.R) * p.eps});
  auto g = displacement_geometry_check(p);
  for (const Rational& s : g.single) CHECK(s == p.eps);
  CHECK(g.pair_min[0] == p.eps / (Rational(1) + p.R));
  CHECK(g.pair_min[1] == g.pair_min[0]);
  CHECK(g.pair_min[2] == (p.R - Rational(1)) * p.eps);
  CHECK(g.minimum >= (p.R - Rational(1)) * p.eps - Rational(1, 1000));
}

TEST_CASE("grid search") {
  circuit::SyncCircuit id;
  id.num_inputs = 2;
  id.levels = {{circuit::Gate::copy(circuit::Ref::wire(0, 0)), circuit::Gate::copy(circuit::Ref::wire(0, 1))}};
  id.outputs = {circuit::Ref::wire(1, 0), circuit::Ref::wire(1, 1)};
  auto all = grid_search(id, 8, 2);
  CHECK(all.size() == 81);
  for (const auto& gp : all) CHECK(gp.residual == Rational(0));

  auto half = testsupport::compile_text("input x, y\noutput a, b\na <- 1/2\nb <- 1/2");
  auto res = grid_search(half, 4);
  CHECK(res.front().x == Rational(1, 2));
  CHECK(res.front().y == Rational(1, 2));
  CHECK(res.front().residual == Rational(0));
  CHECK(res.back().residual == Rational(1, 2));
  CHECK(grid_search(half, 4, 1).size() == grid_search(half, 4, 3).size());
  CHECK_THROWS_AS(grid_search(half, 6), ValidationError);
}
