#include <sstream>

#include "ppadtree/brouwer.hpp"
#include "ppadtree/error.hpp"

namespace ppad::brouwer {

void BoolCircuit::check_well_formed() const {
  if (num_inputs < 0) throw ValidationError("negative input count");
  for (std::size_t g = 0; g < gates.size(); ++g) {
    const int self = num_inputs + static_cast<int>(g);
    const BoolGate& G = gates[g];
    if (G.a < 0 || G.a >= self || (G.kind == BoolGate::Kind::Or && (G.b < 0 || G.b >= self)))
      throw ValidationError("gate g" + std::to_string(self) + " is not topologically ordered");
  }
  for (int o : outputs)
    if (o < 0 || o >= num_refs()) throw ValidationError("output ref g" + std::to_string(o) + " out of range");
}

std::vector<std::uint8_t> BoolCircuit::run(const std::vector<std::uint8_t>& inputs) const {
  if (inputs.size() != static_cast<std::size_t>(num_inputs))
    throw ValidationError("netlist expects " + std::to_string(num_inputs) + " input bits");
  std::vector<std::uint8_t> v(inputs);
  v.reserve(static_cast<std::size_t>(num_refs()));
  for (const BoolGate& g : gates) {
    std::uint8_t a = v[static_cast<std::size_t>(g.a)];
    v.push_back(g.kind == BoolGate::Kind::Not ? !a : (a | v[static_cast<std::size_t>(g.b)]));
  }
  return v;
}

std::array<std::uint8_t, 3> BoolCircuit::eval_outputs(const std::vector<std::uint8_t>& inputs) const {
  auto v = run(inputs);
  return {v[static_cast<std::size_t>(outputs[0])], v[static_cast<std::size_t>(outputs[1])],
          v[static_cast<std::size_t>(outputs[2])]};
}

namespace {

int gate_ref(const std::string& tok, int line) {
  if (tok.size() < 2 || tok[0] != 'g')
    throw ParseError("expected a gate name like g3, found '" + tok + "'", line, 1);
  for (std::size_t i = 1; i < tok.size(); ++i)
    if (tok[i] < '0' || tok[i] > '9') throw ParseError("malformed gate name '" + tok + "'", line, 1);
  return std::stoi(tok.substr(1));
}

}  // namespace

BoolCircuit parse_bnet(const std::string& text) {
  BoolCircuit c;
  bool have_inputs = false, have_outputs = false;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto h = raw.find('#'); h != std::string::npos) raw.resize(h);
    std::istringstream ls(raw);
    std::vector<std::string> w;
    for (std::string t; ls >> t;) w.push_back(t);
    if (w.empty()) continue;
    if (w[0] == "inputs") {
      if (have_inputs || w.size() != 2) throw ParseError("malformed 'inputs' line", line, 1);
      c.num_inputs = std::stoi(w[1]);
      if (c.num_inputs < 0 || c.num_inputs % 2) throw ParseError("input count must be even (2n)", line, 1);
      have_inputs = true;
    } else if (w[0] == "outputs") {
      if (w.size() != 4) throw ParseError("expected exactly three outputs", line, 1);
      for (int i = 0; i < 3; ++i) c.outputs[static_cast<std::size_t>(i)] = gate_ref(w[static_cast<std::size_t>(i) + 1], line);
      have_outputs = true;
    } else {
      if (!have_inputs) throw ParseError("'inputs' must come first", line, 1);
      if (w.size() < 4 || w[1] != "=") throw ParseError("expected 'gK = NOT gI' or 'gK = OR gI gJ'", line, 1);
      int self = gate_ref(w[0], line);
      if (self != c.num_refs())
        throw ParseError("gate " + w[0] + " out of sequence, expected g" + std::to_string(c.num_refs()), line, 1);
      BoolGate g{};
      if (w[2] == "NOT" && w.size() == 4) {
        g = {BoolGate::Kind::Not, gate_ref(w[3], line), 0};
      } else if (w[2] == "OR" && w.size() == 5) {
        g = {BoolGate::Kind::Or, gate_ref(w[3], line), gate_ref(w[4], line)};
      } else {
        throw ParseError("unknown gate form '" + w[2] + "'", line, 1);
      }
      if (g.a >= self || (g.kind == BoolGate::Kind::Or && g.b >= self))
        throw ParseError("gate " + w[0] + " reads a later gate", line, 1);
      c.gates.push_back(g);
    }
  }
  if (!have_inputs || !have_outputs) throw ValidationError("netlist needs 'inputs' and 'outputs' lines");
  c.check_well_formed();
  return c;
}

std::string to_bnet(const BoolCircuit& c) {
  std::ostringstream os;
  os << "inputs " << c.num_inputs << "\n";
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const BoolGate& g = c.gates[i];
    os << "g" << c.num_inputs + static_cast<int>(i) << " = ";
    if (g.kind == BoolGate::Kind::Not)
      os << "NOT g" << g.a << "\n";
    else
      os << "OR g" << g.a << " g" << g.b << "\n";
  }
  os << "outputs g" << c.outputs[0] << " g" << c.outputs[1] << " g" << c.outputs[2] << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------

NetlistBuilder::NetlistBuilder(int num_inputs) { c_.num_inputs = num_inputs; }

int NetlistBuilder::gate(BoolGate::Kind k, int a, int b) {
  if (k == BoolGate::Kind::Or && a > b) std::swap(a, b);
  std::int64_t key = (static_cast<std::int64_t>(k == BoolGate::Kind::Or) << 62) |
                     (static_cast<std::int64_t>(a) << 31) | static_cast<std::int64_t>(b);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  int ref = c_.num_refs();
  c_.gates.push_back({k, a, k == BoolGate::Kind::Or ? b : 0});
  cache_[key] = ref;
  return ref;
}

int NetlistBuilder::lit_not(int a) {
  if (a == kTrue) return kFalse;
  if (a == kFalse) return kTrue;
  if (a >= c_.num_inputs) {
    const BoolGate& g = c_.gates[static_cast<std::size_t>(a - c_.num_inputs)];
    if (g.kind == BoolGate::Kind::Not) return g.a;
  }
  return gate(BoolGate::Kind::Not, a, 0);
}

int NetlistBuilder::lit_or(int a, int b) {
  if (a == kTrue || b == kTrue) return kTrue;
  if (a == kFalse) return b;
  if (b == kFalse) return a;
  if (a == b) return a;
  return gate(BoolGate::Kind::Or, a, b);
}

int NetlistBuilder::lit_and(int a, int b) { return lit_not(lit_or(lit_not(a), lit_not(b))); }

int NetlistBuilder::lit_xor(int a, int b) {
  return lit_or(lit_and(a, lit_not(b)), lit_and(lit_not(a), b));
}

int NetlistBuilder::any(const std::vector<int>& xs) {
  int r = kFalse;
  for (int x : xs) r = lit_or(r, x);
  return r;
}

int NetlistBuilder::all(const std::vector<int>& xs) {
  int r = kTrue;
  for (int x : xs) r = lit_and(r, x);
  return r;
}

int NetlistBuilder::mux(int sel, int then_lit, int else_lit) {
  return lit_or(lit_and(sel, then_lit), lit_and(lit_not(sel), else_lit));
}

int NetlistBuilder::le_const(const std::vector<int>& bits, std::int64_t c) {
  const std::size_t m = bits.size();
  if (c < 0) return kFalse;
  if (m < 63 && c >= (std::int64_t{1} << m)) return kTrue;
  // Walk from the least significant bit: r = (low part <= low part of c).
  int r = kTrue;
  for (std::size_t i = m; i-- > 0;) {
    bool ci = (c >> (m - 1 - i)) & 1;
    int b = bits[i];
    r = ci ? lit_or(lit_not(b), r) : lit_and(lit_not(b), r);
  }
  return r;
}

int NetlistBuilder::ge_const(const std::vector<int>& bits, std::int64_t c) {
  return c <= 0 ? kTrue : lit_not(le_const(bits, c - 1));
}

std::vector<int> NetlistBuilder::sub_const(const std::vector<int>& bits, std::int64_t c) {
  const std::size_t m = bits.size();
  std::vector<int> out(m);
  int borrow = kFalse;
  for (std::size_t i = m; i-- > 0;) {
    int ci = ((c >> (m - 1 - i)) & 1) ? kTrue : kFalse;
    int b = bits[i];
    out[i] = lit_xor(lit_xor(b, ci), borrow);
    int nb = lit_not(b);
    borrow = lit_or(lit_or(lit_and(nb, ci), lit_and(nb, borrow)), lit_and(ci, borrow));
  }
  return out;
}

std::array<int, 3> NetlistBuilder::instantiate(const BoolCircuit& c, const std::vector<int>& inputs) {
  if (inputs.size() != static_cast<std::size_t>(c.num_inputs))
    throw ValidationError("instantiate: input count mismatch");
  std::vector<int> map(inputs);
  for (const BoolGate& g : c.gates) {
    int a = map[static_cast<std::size_t>(g.a)];
    map.push_back(g.kind == BoolGate::Kind::Not ? lit_not(a) : lit_or(a, map[static_cast<std::size_t>(g.b)]));
  }
  return {map[static_cast<std::size_t>(c.outputs[0])], map[static_cast<std::size_t>(c.outputs[1])],
          map[static_cast<std::size_t>(c.outputs[2])]};
}

int NetlistBuilder::materialize(int lit) {
  if (lit >= 0) return lit;
  if (c_.num_inputs == 0) throw ValidationError("cannot build a constant without inputs");
  if (true_ref_ < 0) true_ref_ = gate(BoolGate::Kind::Or, 0, gate(BoolGate::Kind::Not, 0, 0));
  return lit == kTrue ? true_ref_ : gate(BoolGate::Kind::Not, true_ref_, 0);
}

BoolCircuit NetlistBuilder::finish(const std::array<int, 3>& outputs) {
  for (int i = 0; i < 3; ++i) c_.outputs[static_cast<std::size_t>(i)] = materialize(outputs[static_cast<std::size_t>(i)]);
  return c_;
}

}  // namespace ppad::brouwer
