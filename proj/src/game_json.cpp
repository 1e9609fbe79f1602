#include "ppadtree/error.hpp"
#include "ppadtree/game.hpp"
#include "ppadtree/json_io.hpp"

namespace ppad::game {

namespace {

const char* kind_name(PlayerKind k) {
  switch (k) {
    case PlayerKind::Variable: return "variable";
    case PlayerKind::Constraint: return "constraint";
    case PlayerKind::Mix: return "mix";
  }
  return "?";
}

PlayerKind kind_from(const std::string& s) {
  if (s == "variable") return PlayerKind::Variable;
  if (s == "constraint") return PlayerKind::Constraint;
  if (s == "mix") return PlayerKind::Mix;
  throw ValidationError("unknown player kind '" + s + "'");
}

json dense(const Matrix& m) {
  json rows = json::array();
  for (int r = 0; r < kActions; ++r) {
    json row = json::array();
    for (int c = 0; c < kActions; ++c) row.push_back(rational_json(m.get(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix sparse(const json& j) {
  if (!j.is_array() || j.size() != kActions) throw ValidationError("payoff matrices must be 20x20");
  Matrix m;
  for (int r = 0; r < kActions; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || row.size() != kActions) throw ValidationError("payoff matrices must be 20x20");
    for (int c = 0; c < kActions; ++c) {
      Rational v = rational_from_json(row[static_cast<std::size_t>(c)]);
      if (!v.is_zero()) m.add(r, c, v);
    }
  }
  return m;
}

template <class F>
auto guarded(F f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed JSON document: ") + e.what());
  }
}

const char* gate_kind_name(GateKind k) {
  switch (k) {
    case GateKind::Empty: return "empty";
    case GateKind::Const: return "c";
    case GateKind::AddB: return "+b";
    case GateKind::SubB: return "-b";
    case GateKind::MulB: return "*b";
  }
  return "?";
}

GateKind gate_kind_from(const std::string& s) {
  for (GateKind k : {GateKind::Empty, GateKind::Const, GateKind::AddB, GateKind::SubB, GateKind::MulB})
    if (s == gate_kind_name(k)) return k;
  throw ValidationError("unknown gate kind '" + s + "'");
}

json ref_json(const SysRef& r) {
  if (r.imm) return json{{"imm", rational_json(r.value)}};
  return json::array({r.level, r.slot});
}

SysRef ref_from(const json& j) {
  if (j.is_object()) return SysRef::constant(rational_from_json(j.at("imm")));
  return SysRef::wire(j.at(0).get<int>(), j.at(1).get<int>());
}

}  // namespace

std::string game_to_json(const PolymatrixGame& g) {
  json j;
  j["M"] = rational_json(g.M);
  json players = json::array();
  for (const Player& p : g.players) players.push_back({{"id", p.id}, {"kind", kind_name(p.kind)}, {"actions", kActions}});
  j["players"] = std::move(players);
  json edges = json::array();
  for (const Edge& e : g.edges)
    edges.push_back({{"a", g.players[static_cast<std::size_t>(e.a)].id},
                     {"b", g.players[static_cast<std::size_t>(e.b)].id},
                     {"A_ab", dense(e.A_ab)},
                     {"A_ba", dense(e.A_ba)}});
  j["edges"] = std::move(edges);
  return j.dump();
}

PolymatrixGame game_from_json(const std::string& text) {
  json j = parse_json_text(text);
  return guarded([&] {
    PolymatrixGame g;
    if (j.contains("M")) g.M = rational_from_json(j.at("M"));
    for (const json& p : j.at("players")) {
      if (p.contains("actions") && p.at("actions").get<int>() != kActions)
        throw ValidationError("every player needs 20 actions");
      g.players.push_back({p.at("id").get<std::string>(), kind_from(p.at("kind").get<std::string>())});
    }
    for (const json& e : j.at("edges"))
      g.edges.push_back({g.find(e.at("a").get<std::string>()), g.find(e.at("b").get<std::string>()),
                         sparse(e.at("A_ab")), sparse(e.at("A_ba"))});
    return g;
  });
}

std::string profile_to_json(const PolymatrixGame& g, const StrategyProfile& s) {
  check_profile(g, s);
  json j = json::object();
  for (std::size_t i = 0; i < s.size(); ++i) {
    json row = json::array();
    for (const Rational& p : s[i]) row.push_back(rational_json(p));
    j[g.players[i].id] = std::move(row);
  }
  return j.dump();
}

StrategyProfile profile_from_json(const PolymatrixGame& g, const std::string& text) {
  json j = parse_json_text(text);
  return guarded([&] {
    if (!j.is_object()) throw ValidationError("a profile is an object keyed by player id");
    StrategyProfile s(g.players.size());
    for (std::size_t i = 0; i < g.players.size(); ++i) {
      if (!j.contains(g.players[i].id)) throw ValidationError("profile misses player " + g.players[i].id);
      for (const json& p : j.at(g.players[i].id)) s[i].push_back(rational_from_json(p));
    }
    if (j.size() != g.players.size()) throw ValidationError("profile names players absent from the game");
    check_profile(g, s);
    return s;
  });
}

std::string system_to_json(const GateConstraintSystem& sys) {
  json j;
  j["n"] = sys.n;
  j["bound"] = rational_json(sys.bound);
  json levels = json::array();
  for (int lv = 1; lv <= sys.n; ++lv) {
    json level = json::array();
    for (int i = 1; i <= kSlots; ++i) {
      const SysGate& g = sys.at(lv, i);
      if (g.kind == GateKind::Empty) continue;
      json e{{"slot", i}, {"op", gate_kind_name(g.kind)}, {"role", g.role == GateRole::Forward ? "forward" : "loopback"}};
      json args = json::array();
      if (g.kind != GateKind::Const) args.push_back(ref_json(g.a));
      if (g.kind == GateKind::AddB || g.kind == GateKind::SubB) args.push_back(ref_json(g.b));
      e["args"] = std::move(args);
      if (g.kind == GateKind::Const || g.kind == GateKind::MulB) e["const"] = rational_json(g.c);
      level.push_back(std::move(e));
    }
    levels.push_back(std::move(level));
  }
  j["gates"] = std::move(levels);
  if (sys.original) j["original"] = json::parse(circuit::to_json(*sys.original));
  return j.dump();
}

GateConstraintSystem system_from_json(const std::string& text) {
  json j = parse_json_text(text);
  GateConstraintSystem sys = guarded([&] {
    GateConstraintSystem s;
    s.n = j.at("n").get<int>();
    if (s.n < 2 || s.n > 1000000) throw ValidationError("system size out of range");
    s.bound = rational_from_json(j.at("bound"));
    s.gates.assign(static_cast<std::size_t>(s.n), std::vector<SysGate>(kSlots));
    const json& levels = j.at("gates");
    if (levels.size() != static_cast<std::size_t>(s.n)) throw ValidationError("system needs n levels of gates");
    for (int lv = 1; lv <= s.n; ++lv) {
      for (const json& e : levels[static_cast<std::size_t>(lv - 1)]) {
        int slot = e.at("slot").get<int>();
        if (slot < 1 || slot > kSlots) throw ValidationError("slot outside 1..10");
        SysGate g;
        g.kind = gate_kind_from(e.at("op").get<std::string>());
        std::string role = e.at("role").get<std::string>();
        if (role != "forward" && role != "loopback") throw ValidationError("unknown gate role '" + role + "'");
        g.role = role == "forward" ? GateRole::Forward : GateRole::Loopback;
        const json& args = e.at("args");
        std::size_t want = g.kind == GateKind::Const ? 0 : (g.kind == GateKind::MulB ? 1 : 2);
        if (args.size() != want) throw ValidationError("wrong number of gate arguments");
        if (want >= 1) g.a = ref_from(args[0]);
        if (want == 2) g.b = ref_from(args[1]);
        if (e.contains("const")) g.c = rational_from_json(e.at("const"));
        s.at(lv, slot) = std::move(g);
      }
    }
    if (j.contains("original")) s.original = circuit::from_json(j.at("original").dump());
    return s;
  });
  validate_system(sys);
  return sys;
}

std::string values_to_json(const GateValues& v) {
  json levels = json::array();
  for (const auto& l : v) {
    json row = json::array();
    for (const Rational& x : l) row.push_back(rational_json(x));
    levels.push_back(std::move(row));
  }
  return json{{"values", std::move(levels)}}.dump();
}

GateValues values_from_json(const std::string& text) {
  json j = parse_json_text(text);
  return guarded([&] {
    GateValues v;
    for (const json& l : j.at("values")) {
      std::vector<Rational> row;
      for (const json& x : l) row.push_back(rational_from_json(x));
      v.push_back(std::move(row));
    }
    return v;
  });
}

}  // namespace ppad::game
