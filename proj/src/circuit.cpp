#include "ppadtree/circuit.hpp"

#include <algorithm>
#include <unordered_map>

#include "ppadtree/error.hpp"

namespace ppad::circuit {

int SyncCircuit::width() const {
  std::size_t w = 0;
  for (const auto& l : levels) w = std::max(w, l.size());
  return static_cast<int>(w);
}

SyncCircuit compile(const slp::FlatSlp& flat) { return compile(flat, slp::liveness(flat)); }

SyncCircuit compile(const slp::FlatSlp& flat, const slp::LivenessReport& live) {
  SyncCircuit c;
  c.num_inputs = static_cast<int>(flat.inputs.size());
  const std::size_t w = static_cast<std::size_t>(live.max_live);
  const std::size_t k = flat.lines.size();

  std::unordered_map<int, int> input_slot;
  for (std::size_t i = 0; i < flat.inputs.size(); ++i) input_slot[flat.inputs[i]] = static_cast<int>(i);

  // Slot of each live variable on the previous line.
  std::unordered_map<int, int> prev, cur;
  auto ref_to = [&](int var, std::size_t line) -> Ref {
    if (line == 1) {
      auto it = input_slot.find(var);
      if (it == input_slot.end()) throw InvariantError("line 1 reads a non-input variable");
      return Ref::wire(0, it->second);
    }
    auto it = prev.find(var);
    if (it == prev.end())
      throw InvariantError("variable '" + flat.var_names[static_cast<std::size_t>(var)] +
                           "' is not live on line " + std::to_string(line - 1));
    return Ref::wire(static_cast<int>(line - 1), it->second);
  };
  auto operand = [&](const slp::FlatOperand& o, std::size_t line) {
    return o.is_var ? ref_to(o.var, line) : Ref::constant(o.imm);
  };

  c.levels.resize(k);
  for (std::size_t i = 1; i <= k; ++i) {
    const auto& vars = live.live_at_line[i - 1];
    const slp::FlatLine& line = flat.lines[i - 1];
    auto& level = c.levels[i - 1];
    level.assign(w, Gate::constant(Rational(0)));
    cur.clear();
    for (std::size_t j = 0; j < vars.size(); ++j) {
      int v = vars[j];
      cur[v] = static_cast<int>(j);
      if (v == line.target) {
        Gate g;
        g.op = line.op;
        g.c = line.c;
        if (line.op != OpKind::Const) g.a = operand(line.a, i);
        if (line.op == OpKind::AddB || line.op == OpKind::SubB) g.b = operand(line.b, i);
        level[j] = std::move(g);
      } else {
        level[j] = Gate::copy(ref_to(v, i));
      }
    }
    std::swap(prev, cur);
  }
  for (int o : flat.outputs) {
    if (k == 0) {
      c.outputs.push_back(Ref::wire(0, input_slot.at(o)));
    } else {
      auto it = prev.find(o);
      if (it == prev.end()) throw InvariantError("output not live on the last line");
      c.outputs.push_back(Ref::wire(static_cast<int>(k), it->second));
    }
  }
  return c;
}

Evaluator::Evaluator(const SyncCircuit& circ) : circ_(circ) {
  vals_.resize(circ.levels.size());
  for (std::size_t i = 0; i < circ.levels.size(); ++i) vals_[i].resize(circ.levels[i].size());
  inputs_.resize(static_cast<std::size_t>(circ.num_inputs));
  // Where each gate's value actually lives once copies are skipped.
  std::vector<std::vector<const mpq_class*>> home(circ.levels.size());
  auto locate = [&](const Ref& r) -> const mpq_class* {
    if (r.imm) return &r.value.raw();
    if (r.level == 0) return &inputs_.at(static_cast<std::size_t>(r.slot));
    return home.at(static_cast<std::size_t>(r.level - 1)).at(static_cast<std::size_t>(r.slot));
  };
  // A copy may alias its source only if that source already lies in [0, bound].
  std::vector<std::vector<bool>> tame(circ.levels.size());
  auto is_tame = [&](const Ref& r) {
    if (r.imm) return false;
    if (r.level == 0) return true;
    return static_cast<bool>(tame[static_cast<std::size_t>(r.level - 1)][static_cast<std::size_t>(r.slot)]);
  };
  for (std::size_t i = 0; i < circ.levels.size(); ++i) {
    const auto& level = circ.levels[i];
    home[i].resize(level.size());
    tame[i].resize(level.size());
    for (std::size_t j = 0; j < level.size(); ++j) {
      const Gate& g = level[j];
      bool valid_refs = g.op == OpKind::Const ||
                        (g.a.imm || (g.a.level >= 0 && g.a.level <= static_cast<int>(i)));
      if (!valid_refs) throw ValidationError("gate reads a later level");
      if (g.op == OpKind::MulB && g.c == 1 && is_tame(g.a)) {
        home[i][j] = locate(g.a);
        tame[i][j] = true;
        continue;
      }
      Step s{g.op, nullptr, nullptr, &g.c.raw(), &vals_[i][j]};
      if (g.op != OpKind::Const) s.a = locate(g.a);
      if (g.op == OpKind::AddB || g.op == OpKind::SubB) s.b = locate(g.b);
      steps_.push_back(s);
      home[i][j] = &vals_[i][j];
      tame[i][j] = g.op != OpKind::Const || (g.c.sign() >= 0 && g.c <= circ.bound);
    }
  }
  for (const Ref& r : circ.outputs) outputs_.push_back(locate(r));
}

std::vector<Rational> Evaluator::operator()(const std::vector<Rational>& point) {
  if (point.size() != static_cast<std::size_t>(circ_.num_inputs))
    throw ValidationError("expected " + std::to_string(circ_.num_inputs) + " coordinate(s), got " +
                          std::to_string(point.size()));
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (point[i].sign() < 0 || point[i] > circ_.bound)
      throw ValidationError("coordinate " + std::to_string(i + 1) + " = " + point[i].str() +
                            " lies outside [0, " + circ_.bound.str() + "]");
    inputs_[i] = point[i].raw();
  }
  const mpq_class& hi = circ_.bound.raw();
  for (const Step& s : steps_) {
    switch (s.op) {
      case OpKind::Const: *s.out = *s.c; break;
      case OpKind::AddB: bounded_add(*s.out, *s.a, *s.b, hi); break;
      case OpKind::SubB: bounded_sub(*s.out, *s.a, *s.b); break;
      case OpKind::MulB: bounded_mul(*s.out, *s.a, *s.c, hi); break;
    }
  }
  std::vector<Rational> result;
  result.reserve(outputs_.size());
  for (const mpq_class* v : outputs_) result.emplace_back(*v);
  return result;
}

std::vector<Rational> evaluate(const SyncCircuit& circ, const std::vector<Rational>& point) {
  Evaluator ev(circ);
  return ev(point);
}

Trace evaluate_trace(const SyncCircuit& circ, const std::vector<Rational>& point) {
  if (point.size() != static_cast<std::size_t>(circ.num_inputs))
    throw ValidationError("arity mismatch");
  // Deliberately naive: Rational arithmetic gate by gate.
  Trace t(circ.levels.size());
  const Rational zero(0);
  auto get = [&](const Ref& r) -> Rational {
    if (r.imm) return r.value;
    if (r.level == 0) return point.at(static_cast<std::size_t>(r.slot));
    return t.at(static_cast<std::size_t>(r.level - 1)).at(static_cast<std::size_t>(r.slot));
  };
  for (std::size_t i = 0; i < circ.levels.size(); ++i) {
    for (const Gate& g : circ.levels[i]) {
      Rational v;
      switch (g.op) {
        case OpKind::Const: v = g.c; break;
        case OpKind::AddB: v = min(get(g.a) + get(g.b), circ.bound); break;
        case OpKind::SubB: v = max(get(g.a) - get(g.b), zero); break;
        case OpKind::MulB: v = min(get(g.a) * g.c, circ.bound); break;
      }
      t[i].push_back(std::move(v));
    }
  }
  return t;
}

ValidationReport validate(const SyncCircuit& circ) {
  ValidationReport rep;
  rep.depth = circ.depth();
  rep.width = circ.width();
  auto where = [](std::size_t level, std::size_t slot) {
    return "gate (" + std::to_string(level) + ", " + std::to_string(slot) + ")";
  };
  auto in_range = [&](const Ref& r) {
    if (r.imm) return true;
    if (r.level < 0 || r.level > circ.depth() || r.slot < 0) return false;
    if (r.level == 0) return r.slot < circ.num_inputs;
    return r.slot < static_cast<int>(circ.levels[static_cast<std::size_t>(r.level - 1)].size());
  };
  auto bad = [&](std::string msg) {
    rep.is_synchronous = false;
    rep.violations.push_back(std::move(msg));
  };
  for (std::size_t i = 0; i < circ.levels.size(); ++i) {
    const int level = static_cast<int>(i) + 1;
    for (std::size_t j = 0; j < circ.levels[i].size(); ++j) {
      const Gate& g = circ.levels[i][j];
      std::vector<const Ref*> refs;
      if (g.op != OpKind::Const) refs.push_back(&g.a);
      if (g.op == OpKind::AddB || g.op == OpKind::SubB) refs.push_back(&g.b);
      for (const Ref* r : refs) {
        if (!in_range(*r)) {
          bad(where(i + 1, j + 1) + " has a dangling reference");
          continue;
        }
        if (r->imm) continue;
        if (g.op == OpKind::MulB) {
          if (r->level >= level) bad(where(i + 1, j + 1) + " reads a level that is not earlier");
        } else if (r->level != level - 1) {
          bad(where(i + 1, j + 1) + " (" + slp::op_symbol(g.op) + ") reads level " +
              std::to_string(r->level) + ", expected " + std::to_string(level - 1));
        }
      }
      if (g.op == OpKind::MulB && g.c.sign() < 0)
        bad(where(i + 1, j + 1) + " has a negative multiplier");
      if (g.op == OpKind::Const && (g.c.sign() < 0 || g.c > circ.bound))
        bad(where(i + 1, j + 1) + " has a constant outside [0, bound]");
    }
  }
  for (std::size_t o = 0; o < circ.outputs.size(); ++o)
    if (!in_range(circ.outputs[o]) || circ.outputs[o].imm)
      bad("output " + std::to_string(o + 1) + " has a dangling reference");
  return rep;
}

Rational residual(const SyncCircuit& circ, const std::vector<Rational>& point) {
  if (circ.num_inputs != 2 || circ.outputs.size() != 2 || point.size() != 2)
    throw ValidationError("residual needs a circuit with 2 inputs, 2 outputs and a 2D point");
  auto img = evaluate(circ, point);
  return max(abs(point[0] - img[0]), abs(point[1] - img[1]));
}

SyncCircuit rescale_tenth(const SyncCircuit& circ) {
  if (circ.bound != Rational(1)) throw ValidationError("circuit is already rescaled");
  const Rational tenth(1, 10);
  SyncCircuit out = circ;
  out.bound = tenth;
  auto fix = [&](Ref& r) {
    if (r.imm) r.value *= tenth;
  };
  for (auto& level : out.levels) {
    for (auto& g : level) {
      if (g.op == OpKind::Const) g.c *= tenth;
      fix(g.a);
      fix(g.b);
    }
  }
  return out;
}

}  // namespace ppad::circuit
