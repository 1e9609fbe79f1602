#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ppadtree/circuit.hpp"
#include "ppadtree/error.hpp"
#include "support.hpp"

using namespace ppad;
using namespace ppad::circuit;
using testsupport::compile_text;
using testsupport::Rng;

namespace {

const char* kExample = "input in1\noutput out1\nx <- 0.5\nz <- x +b in1\nx <- x *b 0.5\nout1 <- z +b x\n";
const char* kIfFor =
    "input in1\noutput out1\nx <- in1 *b 1\nfor i in 1..10 { if i % 2 == 0 { x <- x +b 0.1 } }\nout1 <- x *b 1\n";

SyncCircuit constant_circuit() {
  SyncCircuit c;
  c.num_inputs = 2;
  c.levels = {{Gate::constant(Rational(1, 2)), Gate::constant(Rational(1, 2))}};
  c.outputs = {Ref::wire(1, 0), Ref::wire(1, 1)};
  return c;
}

SyncCircuit identity_circuit() {
  SyncCircuit c;
  c.num_inputs = 2;
  c.levels = {{Gate::copy(Ref::wire(0, 0)), Gate::copy(Ref::wire(0, 1))}};
  c.outputs = {Ref::wire(1, 0), Ref::wire(1, 1)};
  return c;
}

}  // namespace

TEST_CASE("one-line program gives one level of width 1") {
  auto c = compile_text("input x\noutput y\ny <- 0.5");
  CHECK(c.depth() == 1);
  CHECK(c.width() == 1);
  // the input stays live while the output is written
  CHECK(compile_text("input x\noutput y\ny <- x *b 1/2").width() == 2);
}

TEST_CASE("Example compiles to four levels and agrees with interpret") {
  auto flat = slp::expand(slp::parse_slp(kExample));
  auto c = compile(flat);
  CHECK(c.depth() == 4);
  CHECK(evaluate(c, {Rational(0)})[0] == Rational(3, 4));
  for (int i = 0; i < 16; ++i) {
    Rational in(i, 15);
    CHECK(evaluate(c, {in}) == slp::interpret(flat, {in}));
  }
}

TEST_CASE("if and for example evaluates to 0.5 +b in1") {
  auto c = compile_text(kIfFor);
  CHECK(evaluate(c, {Rational(0)})[0] == Rational(1, 2));
  CHECK(evaluate(c, {Rational(3, 4)})[0] == Rational(1));
}

TEST_CASE("constant circuit") {
  auto c = constant_circuit();
  for (int i = 0; i <= 4; ++i) CHECK(evaluate(c, {Rational(i, 4), Rational(1, 3)})[0] == Rational(1, 2));
  CHECK(residual(c, {Rational(1, 2), Rational(1, 2)}) == Rational(0));
}

TEST_CASE("residual") {
  CHECK(residual(identity_circuit(), {Rational(1, 7), Rational(5, 9)}) == Rational(0));
  auto shift = compile_text("input x, y\noutput a, b\na <- x +b 1/4\nb <- y +b 1/4");
  CHECK(residual(shift, {Rational(0), Rational(0)}) == Rational(1, 4));
  CHECK(residual(shift, {Rational(1), Rational(1)}) == Rational(0));
  CHECK_THROWS_AS(residual(compile_text(kExample), {Rational(0), Rational(0)}), ValidationError);
}

TEST_CASE("evaluate rejects bad points") {
  auto c = identity_circuit();
  CHECK_THROWS_AS(evaluate(c, {Rational(2), Rational(0)}), ValidationError);
  CHECK_THROWS_AS(evaluate(c, {Rational(0)}), ValidationError);
}

TEST_CASE("validate") {
  auto c = compile_text(kIfFor);
  auto rep = validate(c);
  CHECK(rep.is_synchronous);
  CHECK(rep.width == c.width());
  CHECK(rep.depth == 7);

  SyncCircuit bad;
  bad.num_inputs = 1;
  bad.levels = {{Gate::copy(Ref::wire(0, 0))}, {Gate::copy(Ref::wire(1, 0))},
                {Gate{OpKind::AddB, Ref::wire(1, 0), Ref::wire(2, 0), Rational(0)}}};
  bad.outputs = {Ref::wire(3, 0)};
  auto r2 = validate(bad);
  CHECK_FALSE(r2.is_synchronous);
  REQUIRE(r2.violations.size() == 1);
  CHECK(r2.violations[0].find("reads level 1, expected 2") != std::string::npos);

  // MulB may reach back further.
  bad.levels[2][0] = Gate::copy(Ref::wire(1, 0));
  CHECK(validate(bad).is_synchronous);

  bad.levels[2][0] = Gate::copy(Ref::wire(7, 0));
  CHECK_FALSE(validate(bad).is_synchronous);
}

TEST_CASE("compiler correctness, width law and synchronicity on random programs") {
  Rng rng(4242);
  for (int trial = 0; trial < 100; ++trial) {
    int inputs = static_cast<int>(testsupport::uniform(rng, 1, 3));
    std::string src = testsupport::random_slp(rng, inputs, static_cast<int>(testsupport::uniform(rng, 1, 50)), 2);
    auto flat = slp::expand(slp::parse_slp(src));
    auto live = slp::liveness(flat);
    auto c = compile(flat, live);
    CHECK(c.width() == live.max_live);
    CHECK(validate(c).is_synchronous);
    Evaluator ev(c);
    for (int p = 0; p < 5; ++p) {
      std::vector<Rational> in;
      for (int i = 0; i < inputs; ++i) in.push_back(testsupport::unit_rational(rng));
      auto expect = slp::interpret(flat, in);
      CHECK(ev(in) == expect);
      CHECK(evaluate(c, in) == expect);
      for (const auto& level : evaluate_trace(c, in))
        for (const Rational& v : level) CHECK((v.sign() >= 0 && v <= Rational(1)));
    }
  }
}

TEST_CASE("Evaluator does not alias copies of out-of-range constants") {
  // Const 3 is clipped by the copy; aliasing would leak the raw value.
  SyncCircuit c;
  c.num_inputs = 1;
  c.levels = {{Gate::constant(Rational(3))}, {Gate::copy(Ref::wire(1, 0))}};
  c.outputs = {Ref::wire(2, 0)};
  CHECK(evaluate(c, {Rational(0)})[0] == Rational(1));
  CHECK(evaluate_trace(c, {Rational(0)})[1][0] == Rational(1));
}

TEST_CASE("rescale_tenth") {
  auto c = constant_circuit();
  auto r = rescale_tenth(c);
  CHECK(r.levels[0][0].c == Rational(1, 20));
  CHECK(r.bound == Rational(1, 10));
  CHECK_THROWS_AS(rescale_tenth(r), ValidationError);

  Rng rng(9);
  auto rc = compile_text(testsupport::random_slp(rng, 2, 30, 2));
  auto rr = rescale_tenth(rc);
  for (int p = 0; p < 50; ++p) {
    Rational x = testsupport::unit_rational(rng), y = testsupport::unit_rational(rng);
    auto t = evaluate_trace(rc, {x, y});
    auto t10 = evaluate_trace(rr, {x / Rational(10), y / Rational(10)});
    for (std::size_t i = 0; i < t.size(); ++i)
      for (std::size_t j = 0; j < t[i].size(); ++j) CHECK(t10[i][j] == t[i][j] / Rational(10));
  }
}

TEST_CASE("fixed points correspond under rescaling") {
  auto c = constant_circuit();
  auto r = rescale_tenth(c);
  CHECK(residual(r, {Rational(1, 20), Rational(1, 20)}) == Rational(0));
  CHECK(residual(r, {Rational(1, 10), Rational(1, 20)}) != Rational(0));
  CHECK(residual(c, {Rational(1), Rational(1, 2)}) != Rational(0));
}

TEST_CASE("JSON round trip") {
  Rng rng(11);
  auto c = compile_text(testsupport::random_slp(rng, 2, 20, 2));
  auto text = to_json(c, {{"source", "test"}});
  CHECK(text.find("\"provenance\"") != std::string::npos);
  auto back = from_json(text);
  CHECK(back == c);
  CHECK(to_json(back, {{"source", "test"}}) == text);
  auto r = rescale_tenth(c);
  CHECK(from_json(to_json(r)) == r);
  CHECK_THROWS_AS(from_json("{\"num_inputs\": 2"), ValidationError);
  CHECK_THROWS_AS(from_json("{\"num_inputs\": 2, \"levels\": [[{\"op\": \"?\"}]], \"outputs\": []}"),
                  ValidationError);
}

TEST_CASE("empty program compiles to a width-0 circuit") {
  auto c = compile_text("input x, y\noutput x, y\n");
  CHECK(c.width() == 0);
  CHECK(c.depth() == 0);
  CHECK(residual(c, {Rational(1, 3), Rational(2, 3)}) == Rational(0));
}
