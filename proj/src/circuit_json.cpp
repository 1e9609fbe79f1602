#include "ppadtree/circuit.hpp"
#include "ppadtree/json_io.hpp"

namespace ppad::circuit {
namespace {

json ref_json(const Ref& r) {
  if (r.imm) return json{{"imm", rational_json(r.value)}};
  return json::array({r.level, r.slot});
}

Ref ref_from(const json& j) {
  if (j.is_object()) return Ref::constant(rational_from_json(j.at("imm")));
  if (!j.is_array() || j.size() != 2) throw ValidationError("malformed reference " + j.dump());
  return Ref::wire(j[0].get<int>(), j[1].get<int>());
}

OpKind op_from(const std::string& s) {
  if (s == "c") return OpKind::Const;
  if (s == "+b") return OpKind::AddB;
  if (s == "-b") return OpKind::SubB;
  if (s == "*b") return OpKind::MulB;
  throw ValidationError("unknown gate op '" + s + "'");
}

}  // namespace

std::string to_json(const SyncCircuit& circ, const std::map<std::string, std::string>& provenance) {
  json j;
  if (!provenance.empty()) j["provenance"] = provenance;
  j["num_inputs"] = circ.num_inputs;
  j["bound"] = rational_json(circ.bound);
  json levels = json::array();
  for (const auto& level : circ.levels) {
    json lj = json::array();
    for (const Gate& g : level) {
      json gj{{"op", slp::op_symbol(g.op)}};
      json args = json::array();
      if (g.op != OpKind::Const) args.push_back(ref_json(g.a));
      if (g.op == OpKind::AddB || g.op == OpKind::SubB) args.push_back(ref_json(g.b));
      gj["args"] = args;
      if (g.op == OpKind::Const || g.op == OpKind::MulB) gj["const"] = rational_json(g.c);
      lj.push_back(std::move(gj));
    }
    levels.push_back(std::move(lj));
  }
  j["levels"] = std::move(levels);
  json outs = json::array();
  for (const Ref& r : circ.outputs) outs.push_back(ref_json(r));
  j["outputs"] = std::move(outs);
  return j.dump() + "\n";
}

SyncCircuit from_json(const std::string& text) {
  json j = parse_json_text(text);
  try {
    SyncCircuit c;
    c.num_inputs = j.at("num_inputs").get<int>();
    if (j.contains("bound")) c.bound = rational_from_json(j["bound"]);
    for (const auto& lj : j.at("levels")) {
      std::vector<Gate> level;
      for (const auto& gj : lj) {
        Gate g;
        g.op = op_from(gj.at("op").get<std::string>());
        const auto& args = gj.value("args", json::array());
        std::size_t want = g.op == OpKind::Const ? 0 : (g.op == OpKind::MulB ? 1 : 2);
        if (args.size() != want) throw ValidationError("gate has wrong number of args: " + gj.dump());
        if (want >= 1) g.a = ref_from(args[0]);
        if (want == 2) g.b = ref_from(args[1]);
        if (g.op == OpKind::Const || g.op == OpKind::MulB) g.c = rational_from_json(gj.at("const"));
        level.push_back(std::move(g));
      }
      c.levels.push_back(std::move(level));
    }
    for (const auto& oj : j.at("outputs")) c.outputs.push_back(ref_from(oj));
    return c;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed circuit JSON: ") + e.what());
  }
}

}  // namespace ppad::circuit
