#include "ppadtree/game.hpp"

#include <algorithm>
#include <set>

#include "ppadtree/error.hpp"
#include "ppadtree/parallel.hpp"

namespace ppad::game {

using circuit::Gate;
using circuit::OpKind;
using circuit::Ref;
using circuit::SyncCircuit;

namespace {

std::string gate_name(int level, int slot) {
  return "g(" + std::to_string(slot) + "," + std::to_string(level) + ")";
}

int pair_of(int action) { return action % kSlots; }

}  // namespace

int GateConstraintSystem::host(int level, int slot) const {
  const SysGate& g = at(level, slot);
  return g.role == GateRole::Forward ? level - 1 : level;
}

int GateConstraintSystem::input_side(int level, int slot) const {
  const SysGate& g = at(level, slot);
  return g.role == GateRole::Forward ? level - 1 : level + 1;
}

void validate_system(const GateConstraintSystem& sys) {
  if (sys.n < 2) throw ValidationError("a constraint system needs at least 2 levels");
  if (static_cast<int>(sys.gates.size()) != sys.n) throw ValidationError("level count differs from n");
  for (const auto& l : sys.gates)
    if (static_cast<int>(l.size()) != kSlots) throw ValidationError("every level needs 10 slots");
  std::set<std::pair<int, int>> used;  // (host, slot)
  for (int j = 1; j <= sys.n; ++j) {
    for (int i = 1; i <= kSlots; ++i) {
      const SysGate& g = sys.at(j, i);
      if (g.kind == GateKind::Empty) continue;
      const std::string name = gate_name(j, i);
      if (g.role == GateRole::Forward && j < 2) throw ValidationError(name + " is forward on level 1");
      if (g.role == GateRole::Loopback && j >= sys.n)
        throw ValidationError(name + " is a loopback on the last level");
      const int src = sys.input_side(j, i);
      auto check_ref = [&](const SysRef& r) {
        if (r.imm) {
          if (r.value.sign() < 0 || r.value > sys.bound)
            throw ValidationError(name + " has an immediate outside [0, bound]");
          return;
        }
        if (r.level != src)
          throw ValidationError(name + " reads level " + std::to_string(r.level) + ", expected " +
                                std::to_string(src));
        if (r.slot < 1 || r.slot > kSlots) throw ValidationError(name + " reads a slot outside 1..10");
      };
      switch (g.kind) {
        case GateKind::Const:
          if (g.c.sign() < 0 || g.c > sys.bound) throw ValidationError(name + " has a constant outside [0, bound]");
          break;
        case GateKind::AddB:
        case GateKind::SubB:
          check_ref(g.a);
          check_ref(g.b);
          break;
        case GateKind::MulB:
          check_ref(g.a);
          if (g.c.sign() < 0) throw ValidationError(name + " has a negative multiplier");
          break;
        case GateKind::Empty: break;
      }
      if (!used.insert({sys.host(j, i), i}).second)
        throw ValidationError(name + " shares its constraint player's action pair with another gate");
    }
  }
}

GateConstraintSystem add_loopback(const SyncCircuit& circ, std::optional<SyncCircuit> original) {
  if (circ.bound != Rational(1, 10)) throw ValidationError("add_loopback expects a circuit rescaled to [0, 1/10]");
  if (circ.num_inputs != 2 || circ.outputs.size() != 2)
    throw ValidationError("add_loopback needs a circuit with 2 inputs and 2 outputs");
  if (circ.width() > 8) throw ValidationError("circuit width " + std::to_string(circ.width()) + " exceeds 8");
  const int D = circ.depth();
  if (D < 1) throw ValidationError("circuit depth must be at least 1 for the feedback chain");
  GateConstraintSystem sys;
  sys.n = D + 3;
  sys.original = std::move(original);
  sys.gates.assign(static_cast<std::size_t>(sys.n), std::vector<SysGate>(kSlots));
  const int n = sys.n;
  auto copy = [](GateRole role, int level, int slot) {
    SysGate g;
    g.kind = GateKind::MulB;
    g.role = role;
    g.a = SysRef::wire(level, slot);
    g.c = Rational(1);
    return g;
  };
  // Inputs at (7,1), (8,1), copied to (1,2), (2,2) where the circuit reads them.
  sys.at(1, 7) = copy(GateRole::Loopback, 2, 9);
  sys.at(1, 8) = copy(GateRole::Loopback, 2, 10);
  sys.at(2, 1) = copy(GateRole::Forward, 1, 7);
  sys.at(2, 2) = copy(GateRole::Forward, 1, 8);
  // Circuit level l sits at system level l + 2, slot s + 1.
  auto map_ref = [&](const Ref& r, int level) {
    if (r.imm) return SysRef::constant(r.value);
    if (r.level != level - 1)
      throw ValidationError("circuit gate on level " + std::to_string(level) + " reads level " +
                            std::to_string(r.level) + "; only synchronous circuits embed");
    if (r.level == 0) return SysRef::wire(2, r.slot + 1);
    return SysRef::wire(r.level + 2, r.slot + 1);
  };
  for (int l = 1; l <= D; ++l) {
    const auto& level = circ.levels[static_cast<std::size_t>(l - 1)];
    for (std::size_t s = 0; s < level.size(); ++s) {
      const Gate& cg = level[s];
      SysGate g;
      g.role = GateRole::Forward;
      g.c = cg.c;
      switch (cg.op) {
        case OpKind::Const: g.kind = GateKind::Const; break;
        case OpKind::AddB: g.kind = GateKind::AddB; break;
        case OpKind::SubB: g.kind = GateKind::SubB; break;
        case OpKind::MulB: g.kind = GateKind::MulB; break;
      }
      if (cg.op != OpKind::Const) g.a = map_ref(cg.a, l);
      if (cg.op == OpKind::AddB || cg.op == OpKind::SubB) g.b = map_ref(cg.b, l);
      sys.at(l + 2, static_cast<int>(s) + 1) = std::move(g);
    }
  }
  for (int o = 0; o < 2; ++o) {
    const Ref& r = circ.outputs[static_cast<std::size_t>(o)];
    if (r.imm || r.level != D) throw ValidationError("circuit outputs must sit on the last level");
    sys.at(n, 7 + o) = copy(GateRole::Forward, D + 2, r.slot + 1);
  }
  // Feedback chain.
  sys.at(n - 1, 9) = copy(GateRole::Loopback, n, 7);
  sys.at(n - 1, 10) = copy(GateRole::Loopback, n, 8);
  for (int j = 2; j < n - 1; ++j) {
    sys.at(j, 9) = copy(GateRole::Loopback, j + 1, 9);
    sys.at(j, 10) = copy(GateRole::Loopback, j + 1, 10);
  }
  validate_system(sys);
  return sys;
}

GateConstraintSystem system_from_circuit(const SyncCircuit& circ) {
  return add_loopback(circuit::rescale_tenth(circ), circ);
}

namespace {

Rational value_of(const GateValues& v, const SysRef& r) {
  if (r.imm) return r.value;
  return v.at(static_cast<std::size_t>(r.level - 1)).at(static_cast<std::size_t>(r.slot - 1));
}

// f(s) before clipping.
Rational raw_f(const SysGate& g, const GateValues& v) {
  switch (g.kind) {
    case GateKind::Const: return g.c;
    case GateKind::AddB: return value_of(v, g.a) + value_of(v, g.b);
    case GateKind::SubB: return value_of(v, g.a) - value_of(v, g.b);
    case GateKind::MulB: return value_of(v, g.a) * g.c;
    case GateKind::Empty: break;
  }
  return Rational(0);
}

}  // namespace

Rational gate_value(const GateConstraintSystem& sys, const GateValues& v, int level, int slot) {
  const SysGate& g = sys.at(level, slot);
  if (g.kind == GateKind::Empty) return value_of(v, SysRef::wire(level, slot));
  return max(Rational(0), min(raw_f(g, v), sys.bound));
}

std::vector<std::pair<int, int>> violated_gates(const GateConstraintSystem& sys, const GateValues& v) {
  if (static_cast<int>(v.size()) != sys.n) throw ValidationError("assignment has the wrong number of levels");
  for (const auto& l : v)
    if (static_cast<int>(l.size()) != kSlots) throw ValidationError("assignment levels need 10 values");
  std::vector<std::pair<int, int>> bad;
  for (int j = 1; j <= sys.n; ++j)
    for (int i = 1; i <= kSlots; ++i)
      if (sys.at(j, i).kind != GateKind::Empty &&
          gate_value(sys, v, j, i) != v[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i - 1)])
        bad.emplace_back(j, i);
  return bad;
}

GateValues assignment_from_point(const GateConstraintSystem& sys, const std::pair<Rational, Rational>& p01) {
  for (const Rational* c : {&p01.first, &p01.second})
    if (c->sign() < 0 || *c > sys.bound) throw ValidationError("point outside [0, bound]^2");
  GateValues v(static_cast<std::size_t>(sys.n), std::vector<Rational>(kSlots, Rational(0)));
  v[0][6] = p01.first;
  v[0][7] = p01.second;
  for (int j = 2; j <= sys.n; ++j)
    for (int i = 1; i <= kSlots; ++i)
      if (sys.at(j, i).kind != GateKind::Empty && sys.at(j, i).role == GateRole::Forward)
        v[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i - 1)] = gate_value(sys, v, j, i);
  for (int j = sys.n - 1; j >= 2; --j)
    for (int i = 1; i <= kSlots; ++i)
      if (sys.at(j, i).kind != GateKind::Empty && sys.at(j, i).role == GateRole::Loopback)
        v[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i - 1)] = gate_value(sys, v, j, i);
  return v;
}

Rational Matrix::get(int r, int c) const {
  auto it = e_.find({r, c});
  return it == e_.end() ? Rational(0) : it->second;
}

void Matrix::add(int r, int c, const Rational& v) {
  if (r < 0 || r >= kActions || c < 0 || c >= kActions) throw InvariantError("matrix index out of range");
  Rational& slot = e_[{r, c}];
  slot += v;
  if (slot.is_zero()) e_.erase({r, c});
}

int PolymatrixGame::find(const std::string& id) const {
  for (std::size_t i = 0; i < players.size(); ++i)
    if (players[i].id == id) return static_cast<int>(i);
  throw ValidationError("unknown player '" + id + "'");
}

const Matrix* PolymatrixGame::matrix(int from, int to) const {
  for (const Edge& e : edges) {
    if (e.a == from && e.b == to) return &e.A_ab;
    if (e.b == from && e.a == to) return &e.A_ba;
  }
  return nullptr;
}

namespace {

// The spine part of the game: players, edges and gadget entries, no mixing.
PolymatrixGame spine_game(const GateConstraintSystem& sys) {
  validate_system(sys);
  const int n = sys.n;
  PolymatrixGame g;
  for (int j = 1; j <= n; ++j) g.players.push_back({"v" + std::to_string(j), PlayerKind::Variable});
  for (int j = 1; j < n; ++j) g.players.push_back({"c" + std::to_string(j), PlayerKind::Constraint});
  for (int i = 1; i <= 2 * n - 1; ++i) g.players.push_back({"m" + std::to_string(i), PlayerKind::Mix});
  for (int j = 1; j < n; ++j) {
    g.edges.push_back({v_index(j), c_index(n, j), {}, {}});
    g.edges.push_back({c_index(n, j), v_index(j + 1), {}, {}});
  }
  auto mat = [&](int from, int to) -> Matrix& {
    for (Edge& e : g.edges) {
      if (e.a == from && e.b == to) return e.A_ab;
      if (e.b == from && e.a == to) return e.A_ba;
    }
    throw InvariantError("players are not adjacent");
  };
  for (int j = 1; j <= n; ++j) {
    for (int i = 1; i <= kSlots; ++i) {
      const SysGate& gate = sys.at(j, i);
      if (gate.kind == GateKind::Empty) continue;
      const int h = c_index(n, sys.host(j, i));
      const int out = v_index(j);
      const int in = v_index(sys.input_side(j, i));
      const int x = act_x(i), xb = act_xbar(i);
      Matrix& vo = mat(out, h);
      vo.add(x, xb, Rational(1));
      vo.add(xb, x, Rational(1));
      mat(h, out).add(x, x, Rational(1));
      // Row x̄_i against the input side pays f(s); constants become uniform rows.
      Matrix& f = mat(h, in);
      auto uniform = [&](const Rational& c) {
        if (c.is_zero()) return;
        for (int col = 0; col < kActions; ++col) f.add(xb, col, c);
      };
      auto term = [&](const SysRef& r, const Rational& sign) {
        if (r.imm) uniform(sign * r.value);
        else f.add(xb, act_x(r.slot), sign);
      };
      switch (gate.kind) {
        case GateKind::Const: uniform(gate.c); break;
        case GateKind::AddB:
          term(gate.a, Rational(1));
          term(gate.b, Rational(1));
          break;
        case GateKind::SubB:
          term(gate.a, Rational(1));
          term(gate.b, Rational(-1));
          break;
        case GateKind::MulB:
          if (gate.a.imm) uniform(gate.a.value * gate.c);
          else f.add(xb, act_x(gate.a.slot), gate.c);
          break;
        case GateKind::Empty: break;
      }
    }
  }
  return g;
}

Rational max_abs(const PolymatrixGame& g) {
  Rational p(0);
  for (const Edge& e : g.edges) {
    for (const auto& [k, v] : e.A_ab.entries()) p = max(p, abs(v));
    for (const auto& [k, v] : e.A_ba.entries()) p = max(p, abs(v));
  }
  return p;
}

}  // namespace

Rational max_gadget_payoff(const GateConstraintSystem& sys) { return max_abs(spine_game(sys)); }

Rational auto_M(const GateConstraintSystem& sys) { return Rational(40) * max_gadget_payoff(sys) + Rational(1); }

PolymatrixGame build_game(const GateConstraintSystem& sys, std::optional<Rational> M) {
  PolymatrixGame g = spine_game(sys);
  const int n = sys.n;
  g.M = M ? *M : Rational(40) * max_abs(g) + Rational(1);
  if (g.M.sign() <= 0) throw ValidationError("M must be positive");
  Matrix Z, negZ;
  for (int a = 0; a < kActions; ++a)
    for (int b = 0; b < kActions; ++b)
      if (pair_of(a) == pair_of(b)) {
        Z.add(a, b, g.M);
        negZ.add(a, b, -g.M);
      }
  for (int j = 1; j <= n; ++j) g.edges.push_back({m_index(n, 2 * j - 1), v_index(j), Z, negZ});
  for (int j = 1; j < n; ++j) g.edges.push_back({m_index(n, 2 * j), c_index(n, j), Z, negZ});
  return g;
}

bool is_caterpillar(const PolymatrixGame& g) {
  const std::size_t N = g.players.size();
  if (N == 0) return false;
  std::vector<std::vector<int>> adj(N);
  std::set<std::pair<int, int>> seen;
  for (const Edge& e : g.edges) {
    if (e.a == e.b || e.a < 0 || e.b < 0 || static_cast<std::size_t>(e.a) >= N ||
        static_cast<std::size_t>(e.b) >= N)
      return false;
    if (!seen.insert({std::min(e.a, e.b), std::max(e.a, e.b)}).second) return false;
    adj[static_cast<std::size_t>(e.a)].push_back(e.b);
    adj[static_cast<std::size_t>(e.b)].push_back(e.a);
  }
  if (g.edges.size() != N - 1) return false;
  // Connected with N - 1 edges means a tree.
  std::vector<bool> vis(N, false);
  std::vector<int> stack{0};
  vis[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int w : adj[static_cast<std::size_t>(u)])
      if (!vis[static_cast<std::size_t>(w)]) {
        vis[static_cast<std::size_t>(w)] = true;
        ++count;
        stack.push_back(w);
      }
  }
  if (count != N) return false;
  // Removing the leaves must leave a path (or nothing).
  std::vector<int> spine;
  for (std::size_t u = 0; u < N; ++u)
    if (adj[u].size() > 1) spine.push_back(static_cast<int>(u));
  for (int u : spine) {
    int deg = 0;
    for (int w : adj[static_cast<std::size_t>(u)])
      if (adj[static_cast<std::size_t>(w)].size() > 1) ++deg;
    if (deg > 2) return false;
  }
  return true;
}

void check_profile(const PolymatrixGame& g, const StrategyProfile& s) {
  if (s.size() != g.players.size())
    throw ValidationError("profile has " + std::to_string(s.size()) + " players, game has " +
                          std::to_string(g.players.size()));
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i].size() != kActions) throw ValidationError("player " + g.players[i].id + " needs 20 probabilities");
    Rational sum(0);
    for (const Rational& p : s[i]) {
      if (p.sign() < 0) throw ValidationError("player " + g.players[i].id + " has a negative probability");
      sum += p;
    }
    if (sum != Rational(1)) throw ValidationError("probabilities of " + g.players[i].id + " sum to " + sum.str());
  }
}

namespace {

void accumulate(std::vector<Rational>& p, const Matrix& A, const std::vector<Rational>& s) {
  for (const auto& [rc, v] : A.entries()) {
    const Rational& q = s[static_cast<std::size_t>(rc.second)];
    if (!q.is_zero()) p[static_cast<std::size_t>(rc.first)] += v * q;
  }
}

std::vector<Rational> payoffs(const PolymatrixGame& g, const StrategyProfile& s, int i, bool with_mix) {
  std::vector<Rational> p(kActions, Rational(0));
  for (const Edge& e : g.edges) {
    int other = -1;
    const Matrix* A = nullptr;
    if (e.a == i) {
      other = e.b;
      A = &e.A_ab;
    } else if (e.b == i) {
      other = e.a;
      A = &e.A_ba;
    } else {
      continue;
    }
    if (!with_mix && g.players[static_cast<std::size_t>(other)].kind == PlayerKind::Mix) continue;
    accumulate(p, *A, s[static_cast<std::size_t>(other)]);
  }
  return p;
}

}  // namespace

std::vector<Rational> payoff_vector(const PolymatrixGame& g, const StrategyProfile& s, int i) {
  return payoffs(g, s, i, true);
}

StrategyProfile construct_equilibrium(const GateConstraintSystem& sys, const PolymatrixGame& g,
                                      const GateValues& values) {
  if (sys.bound != Rational(1, 10)) throw ValidationError("equilibria need a system over [0, 1/10]");
  const int n = sys.n;
  if (g.players.size() != static_cast<std::size_t>(4 * n - 2)) throw ValidationError("game does not match system");
  auto bad = violated_gates(sys, values);
  if (!bad.empty())
    throw ValidationError("assignment violates " + gate_name(bad[0].first, bad[0].second) + " and " +
                          std::to_string(bad.size() - 1) + " other gate(s)");
  const Rational tenth(1, 10), twentieth(1, 20);
  StrategyProfile s(g.players.size(), std::vector<Rational>(kActions, Rational(0)));
  for (int j = 1; j <= n; ++j) {
    auto& sv = s[static_cast<std::size_t>(v_index(j))];
    for (int i = 1; i <= kSlots; ++i) {
      const Rational& x = values[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i - 1)];
      if (x.sign() < 0 || x > tenth) throw ValidationError(gate_name(j, i) + " lies outside [0, 1/10]");
      sv[static_cast<std::size_t>(act_x(i))] = x;
      sv[static_cast<std::size_t>(act_xbar(i))] = tenth - x;
    }
  }
  // Constraint players read f(s) straight off their payoff vectors.
  for (int j = 1; j < n; ++j) {
    const int ci = c_index(n, j);
    auto p = payoffs(g, s, ci, false);
    auto& sc = s[static_cast<std::size_t>(ci)];
    for (int i = 1; i <= kSlots; ++i) {
      const auto x = static_cast<std::size_t>(act_x(i)), xb = static_cast<std::size_t>(act_xbar(i));
      bool hosted = (j + 1 <= n && sys.at(j + 1, i).kind != GateKind::Empty && sys.host(j + 1, i) == j) ||
                    (sys.at(j, i).kind != GateKind::Empty && sys.host(j, i) == j);
      if (!hosted) {
        sc[x] = sc[xb] = twentieth;
        continue;
      }
      const Rational& f = p[xb];
      if (f.sign() <= 0) {
        sc[x] = tenth;
      } else if (f >= tenth) {
        sc[xb] = tenth;
      } else {
        sc[x] = sc[xb] = twentieth;
      }
    }
  }
  // Each mix player offsets its neighbour's per-pair payoff differences so
  // that every action the neighbour plays earns the same total.
  for (std::size_t m = 0; m < g.players.size(); ++m) {
    if (g.players[m].kind != PlayerKind::Mix) continue;
    int nb = -1;
    for (const Edge& e : g.edges) {
      if (e.a == static_cast<int>(m)) nb = e.b;
      if (e.b == static_cast<int>(m)) nb = e.a;
    }
    if (nb < 0) throw InvariantError("mix player without a neighbour");
    auto q = payoffs(g, s, nb, false);
    const auto& snb = s[static_cast<std::size_t>(nb)];
    std::vector<Rational> best(kSlots);
    Rational total(0);
    for (int r = 0; r < kSlots; ++r) {
      const auto x = static_cast<std::size_t>(r), xb = static_cast<std::size_t>(r + kSlots);
      best[x] = max(q[x], q[xb]);
      for (std::size_t a : {x, xb})
        if (!snb[a].is_zero() && q[a] != best[x])
          throw InvariantError(g.players[static_cast<std::size_t>(nb)].id + " plays a dominated action in pair " +
                               std::to_string(r + 1));
      total += best[x];
    }
    const Rational t = (total - g.M) / Rational(kSlots);
    for (int r = 0; r < kSlots; ++r) {
      Rational w = (best[static_cast<std::size_t>(r)] - t) / g.M;
      if (w.sign() < 0) throw ValidationError("M is too small to balance " + g.players[static_cast<std::size_t>(nb)].id);
      s[m][static_cast<std::size_t>(r)] = w / Rational(2);
      s[m][static_cast<std::size_t>(r + kSlots)] = w / Rational(2);
    }
  }
  return s;
}

RegretReport verify_regret(const PolymatrixGame& g, const StrategyProfile& s, int threads) {
  check_profile(g, s);
  RegretReport rep;
  rep.regret.assign(g.players.size(), Rational(0));
  parallel_for(
      g.players.size(), threads, [] { return 0; },
      [&](int&, std::size_t i) {
        auto p = payoffs(g, s, static_cast<int>(i), true);
        Rational best = p[0], cur(0);
        for (std::size_t a = 0; a < p.size(); ++a) {
          best = max(best, p[a]);
          cur += p[a] * s[i][a];
        }
        rep.regret[i] = best - cur;
      });
  for (std::size_t i = 0; i < rep.regret.size(); ++i)
    if (rep.regret[i].sign() != 0) {
      rep.is_nash = false;
      rep.violators.push_back(static_cast<int>(i));
    }
  return rep;
}

ExtractReport extract_gate_values(const GateConstraintSystem& sys, const PolymatrixGame& g,
                                  const StrategyProfile& s) {
  check_profile(g, s);
  const int n = sys.n;
  if (g.players.size() != static_cast<std::size_t>(4 * n - 2)) throw ValidationError("game does not match system");
  const Rational tenth(1, 10);
  for (std::size_t p = 0; p < g.players.size(); ++p) {
    if (g.players[p].kind == PlayerKind::Mix) continue;
    for (int i = 1; i <= kSlots; ++i) {
      Rational sum = s[p][static_cast<std::size_t>(act_x(i))] + s[p][static_cast<std::size_t>(act_xbar(i))];
      if (sum != tenth)
        throw ValidationError("player " + g.players[p].id + " puts " + sum.str() + " on pair " + std::to_string(i) +
                              ", expected 1/10");
    }
  }
  ExtractReport rep;
  rep.values.assign(static_cast<std::size_t>(n), std::vector<Rational>(kSlots));
  for (int j = 1; j <= n; ++j)
    for (int i = 1; i <= kSlots; ++i)
      rep.values[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i - 1)] =
          s[static_cast<std::size_t>(v_index(j))][static_cast<std::size_t>(act_x(i))];
  for (int j = 1; j <= n; ++j)
    for (int i = 1; i <= kSlots; ++i) {
      if (sys.at(j, i).kind == GateKind::Empty) continue;
      GateCheck c{j, i, rep.values[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i - 1)],
                  gate_value(sys, rep.values, j, i), false};
      c.holds = c.value == c.expected;
      rep.all_hold = rep.all_hold && c.holds;
      rep.gates.push_back(std::move(c));
    }
  rep.point = {Rational(10) * rep.values[0][6], Rational(10) * rep.values[0][7]};
  if (sys.original) rep.is_fixed_point = circuit::residual(*sys.original, {rep.point.first, rep.point.second}).is_zero();
  return rep;
}

}  // namespace ppad::game
