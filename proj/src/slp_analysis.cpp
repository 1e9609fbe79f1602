#include <algorithm>
#include <limits>

#include "ppadtree/error.hpp"
#include "ppadtree/slp.hpp"

namespace ppad::slp {

void check_unit_inputs(const std::vector<Rational>& inputs, std::size_t expected) {
  if (inputs.size() != expected)
    throw ValidationError("expected " + std::to_string(expected) + " input(s), got " +
                          std::to_string(inputs.size()));
  for (std::size_t i = 0; i < inputs.size(); ++i)
    if (inputs[i].sign() < 0 || inputs[i] > Rational(1))
      throw ValidationError("input " + std::to_string(i + 1) + " = " + inputs[i].str() +
                            " lies outside [0, 1]");
}

LivenessReport liveness(const FlatSlp& flat) {
  const int k = static_cast<int>(flat.lines.size());
  const std::size_t nv = flat.var_names.size();

  // One record per definition: [start, end] in line numbers (inputs start at 0).
  struct Def {
    int var, start, end;
  };
  std::vector<Def> defs;
  std::vector<int> current(nv, -1);
  std::vector<int> order(nv, std::numeric_limits<int>::max());
  int next_order = 0;
  for (int v : flat.inputs) {
    current[static_cast<std::size_t>(v)] = static_cast<int>(defs.size());
    defs.push_back({v, 0, 0});
    order[static_cast<std::size_t>(v)] = next_order++;
  }
  auto use = [&](const FlatOperand& o, int line) {
    if (!o.is_var) return;
    int d = current[static_cast<std::size_t>(o.var)];
    if (d < 0) throw ValidationError("variable '" + flat.var_names[static_cast<std::size_t>(o.var)] +
                                     "' read before assignment");
    defs[static_cast<std::size_t>(d)].end = std::max(defs[static_cast<std::size_t>(d)].end, line);
  };
  for (int i = 1; i <= k; ++i) {
    const FlatLine& l = flat.lines[static_cast<std::size_t>(i - 1)];
    if (l.op != OpKind::Const) use(l.a, i);
    if (l.op == OpKind::AddB || l.op == OpKind::SubB) use(l.b, i);
    auto t = static_cast<std::size_t>(l.target);
    current[t] = static_cast<int>(defs.size());
    defs.push_back({l.target, i, i});
    if (order[t] == std::numeric_limits<int>::max()) order[t] = next_order++;
  }
  for (int o : flat.outputs) {
    int d = current[static_cast<std::size_t>(o)];
    if (d < 0) throw ValidationError("output never assigned");
    defs[static_cast<std::size_t>(d)].end = k + 1;
  }

  LivenessReport rep;
  rep.live_at_line.assign(static_cast<std::size_t>(k), {});
  for (const Def& d : defs) {
    int lo = std::max(d.start, 1), hi = std::min(d.end, k);
    for (int i = lo; i <= hi; ++i) rep.live_at_line[static_cast<std::size_t>(i - 1)].push_back(d.var);
  }
  for (auto& live : rep.live_at_line) {
    std::sort(live.begin(), live.end(), [&](int a, int b) {
      return order[static_cast<std::size_t>(a)] < order[static_cast<std::size_t>(b)];
    });
    live.erase(std::unique(live.begin(), live.end()), live.end());
    rep.max_live = std::max(rep.max_live, static_cast<int>(live.size()));
  }
  return rep;
}

namespace {

template <class OnLine>
std::vector<Rational> run(const FlatSlp& flat, const std::vector<Rational>& inputs,
                          OnLine&& on_line) {
  check_unit_inputs(inputs, flat.inputs.size());
  std::vector<mpq_class> val(flat.var_names.size());
  std::vector<bool> set(flat.var_names.size(), false);
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    auto v = static_cast<std::size_t>(flat.inputs[i]);
    val[v] = inputs[i].raw();
    set[v] = true;
  }
  const mpq_class one(1);
  mpq_class imm_a, imm_b;
  auto get = [&](const FlatOperand& o, mpq_class& scratch) -> const mpq_class& {
    if (!o.is_var) {
      scratch = o.imm.raw();
      return scratch;
    }
    auto v = static_cast<std::size_t>(o.var);
    if (!set[v]) throw ValidationError("variable '" + flat.var_names[v] + "' read before assignment");
    return val[v];
  };
  mpq_class tmp;
  for (const FlatLine& l : flat.lines) {
    switch (l.op) {
      case OpKind::Const:
        tmp = l.c.raw();
        break;
      case OpKind::AddB:
        bounded_add(tmp, get(l.a, imm_a), get(l.b, imm_b), one);
        break;
      case OpKind::SubB:
        bounded_sub(tmp, get(l.a, imm_a), get(l.b, imm_b));
        break;
      case OpKind::MulB:
        bounded_mul(tmp, get(l.a, imm_a), l.c.raw(), one);
        break;
    }
    auto t = static_cast<std::size_t>(l.target);
    val[t] = tmp;
    set[t] = true;
    on_line(val[t]);
  }
  std::vector<Rational> out;
  for (int o : flat.outputs) {
    if (!set[static_cast<std::size_t>(o)]) throw ValidationError("output never assigned");
    out.emplace_back(val[static_cast<std::size_t>(o)]);
  }
  return out;
}

}  // namespace

std::vector<Rational> interpret(const FlatSlp& flat, const std::vector<Rational>& inputs) {
  return run(flat, inputs, [](const mpq_class&) {});
}

std::vector<Rational> interpret_trace(const FlatSlp& flat, const std::vector<Rational>& inputs) {
  std::vector<Rational> trace;
  trace.reserve(flat.lines.size());
  run(flat, inputs, [&](const mpq_class& v) { trace.emplace_back(v); });
  return trace;
}

}  // namespace ppad::slp
