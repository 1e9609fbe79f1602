#include "ppadtree/brouwer2d.hpp"
#include "ppadtree/error.hpp"

namespace ppad::b2d {

using brouwer::BoolCircuit;
using brouwer::BoolGate;

BoolCircuit normalize_outputs(const BoolCircuit& c) {
  c.check_well_formed();
  const int last = c.num_refs() - 1;
  bool in_place = c.outputs[0] == last - 2 && c.outputs[1] == last - 1 && c.outputs[2] == last &&
                  c.outputs[0] >= c.num_inputs;
  if (in_place) return c;
  BoolCircuit out = c;
  for (int i = 0; i < 3; ++i) {
    int src = c.outputs[static_cast<std::size_t>(i)];
    out.gates.push_back({BoolGate::Kind::Or, src, src});
    out.outputs[static_cast<std::size_t>(i)] = out.num_refs() - 1;
  }
  return out;
}

// Sample i (1-based) sits at p + (i-1) delta, so the offset is added from
// the second sample on.
const std::string& reduction_source() {
  static const std::string src = R"SLP(
input in_x, in_y
output out_x, out_y
param n, k, L, eps, R, kind, in1, in2
const K = 2*n + len(kind)
const delta = 1/((k+1) * 2^(n+1))

out_x <- in_x
out_y <- in_y
for i in 1..k {
  if i > 1 {
    in_x <- in_x +b delta
    in_y <- in_y +b delta
  }
  x <- 0
  Pack(x, in_x; [1..n], 1/2, L, K)
  Pack(x, in_y; [n+1..2*n], 1/2, L, K)
  Simulate(x; 2*n, kind, in1, in2, K)
  AddVector(x, out_x, out_y; K-2, k, 0, eps, K)
  AddVector(x, out_x, out_y; K-1, k, eps, (1-R)*eps, K)
  AddVector(x, out_x, out_y; K, k, -eps, (1-R)*eps, K)
}
)SLP";
  return src;
}

slp::ConstEnv reduction_env(const BoolCircuit& c, const ReductionParams& p) {
  if (c.num_inputs != 2 * p.n)
    throw ValidationError("netlist has " + std::to_string(c.num_inputs) + " inputs, expected 2n = " +
                          std::to_string(2 * p.n));
  std::vector<Rational> kind, in1, in2;
  for (const BoolGate& g : c.gates) {
    kind.emplace_back(g.kind == BoolGate::Kind::Or ? 1 : 0);
    in1.emplace_back(g.a + 1);
    in2.emplace_back(g.kind == BoolGate::Kind::Or ? g.b + 1 : 0);
  }
  slp::ConstEnv env;
  env["n"] = slp::CValue::of(Rational(p.n));
  env["k"] = slp::CValue::of(Rational(p.k));
  env["L"] = slp::CValue::of(p.L);
  env["eps"] = slp::CValue::of(p.eps);
  env["R"] = slp::CValue::of(p.R);
  env["kind"] = slp::CValue::of_list(std::move(kind));
  env["in1"] = slp::CValue::of_list(std::move(in1));
  env["in2"] = slp::CValue::of_list(std::move(in2));
  return env;
}

slp::FlatSlp reduction_slp(const brouwer::DiscreteBrouwerInstance& inst, const ReductionParams& p) {
  p.validate();
  if (inst.boundary.kind != brouwer::Boundary::Kind::Thick)
    throw ValidationError("the reduction needs an instance with the thick boundary");
  if (inst.boundary.eps != p.eps)
    throw ValidationError("instance eps " + inst.boundary.eps.str() + " differs from parameter eps " +
                          p.eps.str());
  if (inst.n != p.n) throw ValidationError("instance n differs from parameter n");
  static const slp::SlpProgram prog = slp::parse_slp(reduction_source());
  return slp::expand(prog, macro_library(), reduction_env(normalize_outputs(inst.circuit), p));
}

circuit::SyncCircuit build_reduction(const brouwer::DiscreteBrouwerInstance& inst, const ReductionParams& p) {
  slp::FlatSlp flat = reduction_slp(inst, p);
  auto live = slp::liveness(flat);
  if (live.max_live > 8)
    throw InvariantError("reduction program keeps " + std::to_string(live.max_live) +
                         " variables live, expected at most 8");
  return circuit::compile(flat, live);
}

}  // namespace ppad::b2d
