#pragma once

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ppadtree/brouwer.hpp"
#include "ppadtree/brouwer2d.hpp"
#include "ppadtree/circuit.hpp"
#include "ppadtree/rational.hpp"
#include "ppadtree/slp.hpp"

namespace testsupport {

using ppad::Rational;

inline std::string data_path(const std::string& name) { return std::string(PPAD_TEST_DATA) + "/" + name; }

inline std::string read_data(const std::string& name) {
  std::ifstream in(data_path(name));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

// Random rational in [0, 1] with denominator at most max_den.
inline Rational unit_rational(Rng& rng, long max_den = 1000) {
  long d = uniform(rng, 1, max_den);
  return Rational(uniform(rng, 0, d), d);
}

// Random flat program in DSL form: `inputs` inputs, `lines` assignments,
// `outputs` outputs. Every operand is defined before use.
inline std::string random_slp(Rng& rng, int inputs, int lines, int outputs) {
  std::vector<std::string> defined;
  std::ostringstream os;
  os << "input ";
  for (int i = 0; i < inputs; ++i) {
    defined.push_back("x" + std::to_string(i + 1));
    os << (i ? ", " : "") << defined.back();
  }
  std::vector<std::string> names = defined;
  for (int i = 0; i < 6; ++i) names.push_back("v" + std::to_string(i + 1));
  std::ostringstream body;
  auto pick = [&] { return defined[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(defined.size()) - 1))]; };
  auto small = [&] {
    long d = uniform(rng, 1, 12);
    return Rational(uniform(rng, 0, d), d);
  };
  for (int l = 0; l < lines; ++l) {
    std::string target = names[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(names.size()) - 1))];
    body << target << " <- ";
    switch (uniform(rng, 0, 5)) {
      case 0: body << small().str(); break;
      case 1: body << pick() << " +b " << pick(); break;
      case 2: body << pick() << " -b " << pick(); break;
      case 3: body << pick() << " *b " << Rational(uniform(rng, 0, 40), uniform(rng, 1, 10)).str(); break;
      case 4: body << pick() << " +b " << small().str(); break;
      default: body << pick() << " -b " << pick(); break;
    }
    body << "\n";
    if (std::find(defined.begin(), defined.end(), target) == defined.end()) defined.push_back(target);
  }
  os << "\noutput ";
  for (int o = 0; o < outputs; ++o) os << (o ? ", " : "") << "o" << o + 1;
  os << "\n" << body.str();
  for (int o = 0; o < outputs; ++o) os << "o" << o + 1 << " <- " << pick() << "\n";
  return os.str();
}

inline ppad::circuit::SyncCircuit compile_text(const std::string& src) {
  return ppad::circuit::compile(ppad::slp::expand(ppad::slp::parse_slp(src)));
}

// Random NOT/OR netlist over `inputs` inputs; outputs are three arbitrary refs.
inline ppad::brouwer::BoolCircuit random_netlist(Rng& rng, int inputs, int gates) {
  using ppad::brouwer::BoolGate;
  ppad::brouwer::BoolCircuit c;
  c.num_inputs = inputs;
  for (int g = 0; g < gates; ++g) {
    int refs = c.num_refs();
    int a = static_cast<int>(uniform(rng, 0, refs - 1));
    if (uniform(rng, 0, 1) == 0) c.gates.push_back({BoolGate::Kind::Not, a, 0});
    else c.gates.push_back({BoolGate::Kind::Or, a, static_cast<int>(uniform(rng, 0, refs - 1))});
  }
  for (auto& o : c.outputs) o = static_cast<int>(uniform(rng, 0, c.num_refs() - 1));
  return c;
}

// Random color table respecting the original boundary.
inline std::vector<int> random_table(Rng& rng, int n) {
  const long side = 1L << n;
  std::vector<int> t(static_cast<std::size_t>(side * side));
  for (long x = 0; x < side; ++x)
    for (long y = 0; y < side; ++y) {
      auto forced = ppad::brouwer::boundary_color(n, ppad::brouwer::Boundary::original(), x, y);
      t[static_cast<std::size_t>(x * side + y)] = forced ? *forced : static_cast<int>(uniform(rng, 1, 3));
    }
  return t;
}

inline ppad::brouwer::DiscreteBrouwerInstance random_instance(Rng& rng, int n) {
  auto table = random_table(rng, n);
  return {n, ppad::brouwer::circuit_from_table(n, table), ppad::brouwer::Boundary::original()};
}

// Thick 2/5 instance on n = 2 whose only trichromatic square is (1, 1).
inline ppad::brouwer::DiscreteBrouwerInstance thick_n2_instance() {
  return {2, ppad::brouwer::parse_bnet(read_data("thick_n2.bnet")),
          ppad::brouwer::Boundary::thick(Rational(2, 5))};
}

// Colors from the top bits only: x's top bit clear -> 2 unless y's top bit
// is clear (-> 1); both set -> 3. Seven gates for every n.
inline ppad::brouwer::BoolCircuit top_bit_netlist(int n) {
  using ppad::brouwer::BoolGate;
  using K = BoolGate::Kind;
  ppad::brouwer::BoolCircuit c;
  c.num_inputs = 2 * n;
  const int x1 = 0, y1 = n, base = 2 * n;
  c.gates = {{K::Not, x1, 0},           {K::Not, y1, 0},           {K::Or, base + 1, x1},
             {K::Or, base + 1, base},   {K::Not, y1, 0},           {K::Not, base + 2, 0},
             {K::Not, base + 3, 0}};
  c.outputs = {base + 4, base + 5, base + 6};
  return c;
}

// Small two-input circuits with a known exact fixed point.
struct ToyCircuit {
  std::string name;
  std::string source;
  std::pair<Rational, Rational> fixed_point;
};

inline std::vector<ToyCircuit> toy_circuits() {
  return {
      {"constant", "input x, y\noutput a, b\na <- 1/2\nb <- 1/2", {Rational(1, 2), Rational(1, 2)}},
      {"identity", "input x, y\noutput x, y\nx <- x *b 1\ny <- y *b 1", {Rational(3, 10), Rational(7, 10)}},
      {"clipped", "input x, y\noutput x, y\nx <- x -b 1/2\ny <- y *b 3", {Rational(0), Rational(1)}},
      {"mixed", "input x, y\noutput a, b\nt <- 1/4\na <- t +b 1/4\nb <- x *b 2/5", {Rational(1, 2), Rational(1, 5)}},
      {"halving", "input x, y\noutput x, y\nx <- x *b 1/2\nx <- x +b 1/4\ny <- y -b 1/5",
       {Rational(1, 2), Rational(0)}},
      {"sum", "input x, y\noutput a, y\na <- x +b y\na <- a *b 1/2\ny <- y *b 1", {Rational(2, 5), Rational(2, 5)}},
  };
}

}  // namespace testsupport
