#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ppadtree/circuit.hpp"
#include "ppadtree/rational.hpp"

namespace ppad::game {

constexpr int kSlots = 10;
constexpr int kActions = 20;
// Action index of x_i is i - 1, of x̄_i is i + 9 (slots are 1-based).
inline int act_x(int slot) { return slot - 1; }
inline int act_xbar(int slot) { return slot - 1 + kSlots; }

enum class GateKind { Empty, Const, AddB, SubB, MulB };
// Forward gates read level j-1; loopback gates read level j+1.
enum class GateRole { Forward, Loopback };

// Argument of a system gate: (level, slot), both 1-based, or an immediate.
struct SysRef {
  int level = 0;
  int slot = 0;
  bool imm = false;
  Rational value;
  static SysRef wire(int level, int slot) { return SysRef{level, slot, false, Rational(0)}; }
  static SysRef constant(Rational v) { return SysRef{0, 0, true, std::move(v)}; }
  bool operator==(const SysRef&) const = default;
};

struct SysGate {
  GateKind kind = GateKind::Empty;
  GateRole role = GateRole::Forward;
  SysRef a, b;
  Rational c;
  bool operator==(const SysGate&) const = default;
};

// gates[j-1][i-1] is g_{i,j}. Values live in [0, bound].
struct GateConstraintSystem {
  int n = 0;
  Rational bound{1, 10};
  std::vector<std::vector<SysGate>> gates;
  // The source circuit before rescaling, when known.
  std::optional<circuit::SyncCircuit> original;
  bool operator==(const GateConstraintSystem&) const = default;

  const SysGate& at(int level, int slot) const { return gates.at(level - 1).at(slot - 1); }
  SysGate& at(int level, int slot) { return gates.at(level - 1).at(slot - 1); }
  // Constraint player hosting g_{i,j}: index of c (1-based).
  int host(int level, int slot) const;
  // Variable player on the input side of g_{i,j}.
  int input_side(int level, int slot) const;
};

// values[j-1][i-1] is the value of g_{i,j}.
using GateValues = std::vector<std::vector<Rational>>;

// Structural checks: reference levels, host collisions, constants in range.
void validate_system(const GateConstraintSystem& sys);

// Relocates the inputs to (7,1), (8,1) and the outputs to (7,n), (8,n) and
// wires the feedback chain through slots 9 and 10. The circuit must already
// use clip bound 1/10.
GateConstraintSystem add_loopback(const circuit::SyncCircuit& circ01,
                                  std::optional<circuit::SyncCircuit> original = std::nullopt);
// rescale_tenth followed by add_loopback.
GateConstraintSystem system_from_circuit(const circuit::SyncCircuit& circ);

// Value of one gate given the values of every other gate.
Rational gate_value(const GateConstraintSystem& sys, const GateValues& v, int level, int slot);
// Gates whose value differs from gate_value, as (level, slot).
std::vector<std::pair<int, int>> violated_gates(const GateConstraintSystem& sys, const GateValues& v);

// Full assignment induced by a point of the rescaled circuit. Loopback
// slots copy the outputs, so the assignment satisfies every constraint iff
// the point is a fixed point.
GateValues assignment_from_point(const GateConstraintSystem& sys, const std::pair<Rational, Rational>& p01);

// Sparse 20x20 matrix; absent entries are zero.
class Matrix {
 public:
  Rational get(int r, int c) const;
  void add(int r, int c, const Rational& v);
  const std::map<std::pair<int, int>, Rational>& entries() const { return e_; }
  bool operator==(const Matrix&) const = default;

 private:
  std::map<std::pair<int, int>, Rational> e_;
};

enum class PlayerKind { Variable, Constraint, Mix };

struct Player {
  std::string id;  // v1.., c1.., m1..
  PlayerKind kind;
  bool operator==(const Player&) const = default;
};

struct Edge {
  int a = 0, b = 0;  // player indices
  Matrix A_ab;       // payoff to a
  Matrix A_ba;       // payoff to b
  bool operator==(const Edge&) const = default;
};

struct PolymatrixGame {
  std::vector<Player> players;
  std::vector<Edge> edges;
  Rational M;
  bool operator==(const PolymatrixGame&) const = default;

  int find(const std::string& id) const;
  // Payoff matrix to `from` against `to`, if they are adjacent.
  const Matrix* matrix(int from, int to) const;
};

// Player order: v1..vn, c1..c(n-1), m1..m(2n-1). v_j sits at index j-1,
// c_j at n+j-1, m_i at 2n-1+i-1. m(2j-1) faces v_j and m(2j) faces c_j.
inline int v_index(int j) { return j - 1; }
inline int c_index(int n, int j) { return n + j - 1; }
inline int m_index(int n, int i) { return 2 * n - 1 + i - 1; }

// Largest absolute entry over every variable and constraint matrix.
Rational max_gadget_payoff(const GateConstraintSystem& sys);
// M = 40 P + 1.
Rational auto_M(const GateConstraintSystem& sys);
PolymatrixGame build_game(const GateConstraintSystem& sys, std::optional<Rational> M = std::nullopt);

// True if the interaction graph is a tree whose non-leaf vertices form a path.
bool is_caterpillar(const PolymatrixGame& g);

using StrategyProfile = std::vector<std::vector<Rational>>;

void check_profile(const PolymatrixGame& g, const StrategyProfile& s);

StrategyProfile construct_equilibrium(const GateConstraintSystem& sys, const PolymatrixGame& g,
                                      const GateValues& values);

// Expected payoff of every action of player i.
std::vector<Rational> payoff_vector(const PolymatrixGame& g, const StrategyProfile& s, int i);

struct RegretReport {
  std::vector<Rational> regret;  // per player, in player order
  bool is_nash = true;
  std::vector<int> violators;
};
RegretReport verify_regret(const PolymatrixGame& g, const StrategyProfile& s, int threads = 0);

struct GateCheck {
  int level, slot;
  Rational value, expected;
  bool holds;
};
struct ExtractReport {
  GateValues values;
  std::vector<GateCheck> gates;  // non-empty gates only
  bool all_hold = true;
  std::pair<Rational, Rational> point;  // 10 (g_{7,1}, g_{8,1})
  std::optional<bool> is_fixed_point;   // of the original circuit, when known
};
// Throws ValidationError if a variable or constraint player's pair sums differ from 1/10.
ExtractReport extract_gate_values(const GateConstraintSystem& sys, const PolymatrixGame& g,
                                  const StrategyProfile& s);

std::string game_to_json(const PolymatrixGame& g);
PolymatrixGame game_from_json(const std::string& text);
std::string profile_to_json(const PolymatrixGame& g, const StrategyProfile& s);
StrategyProfile profile_from_json(const PolymatrixGame& g, const std::string& text);
std::string system_to_json(const GateConstraintSystem& sys);
GateConstraintSystem system_from_json(const std::string& text);
std::string values_to_json(const GateValues& v);
GateValues values_from_json(const std::string& text);

}  // namespace ppad::game
