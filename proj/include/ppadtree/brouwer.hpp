#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ppadtree/rational.hpp"

namespace ppad::brouwer {

// Refs 0..num_inputs-1 are inputs; gate g (0-based) has ref num_inputs + g.
struct BoolGate {
  enum class Kind { Not, Or };
  Kind kind;
  int a;
  int b;  // unused for Not
  bool operator==(const BoolGate& o) const = default;
};

struct BoolCircuit {
  int num_inputs = 0;
  std::vector<BoolGate> gates;
  std::array<int, 3> outputs{0, 0, 0};  // refs for colors 1, 2, 3
  bool operator==(const BoolCircuit& o) const = default;

  int num_refs() const { return num_inputs + static_cast<int>(gates.size()); }
  // Values of every ref on the given input bits.
  std::vector<std::uint8_t> run(const std::vector<std::uint8_t>& inputs) const;
  std::array<std::uint8_t, 3> eval_outputs(const std::vector<std::uint8_t>& inputs) const;
  // Throws ValidationError if not topologically ordered.
  void check_well_formed() const;
};

BoolCircuit parse_bnet(const std::string& text);
std::string to_bnet(const BoolCircuit& c);

struct Boundary {
  enum class Kind { Original, Thick };
  Kind kind = Kind::Original;
  Rational eps;  // Thick only
  static Boundary original() { return Boundary{}; }
  static Boundary thick(Rational e) { return Boundary{Kind::Thick, std::move(e)}; }
};

struct DiscreteBrouwerInstance {
  int n = 0;
  BoolCircuit circuit;
  Boundary boundary;
  std::int64_t side() const { return std::int64_t{1} << n; }
};

// Input bits for grid point (gx, gy): x bits MSB first, then y bits.
std::vector<std::uint8_t> encode_point(int n, std::int64_t gx, std::int64_t gy);

int eval_color(const DiscreteBrouwerInstance& inst, std::int64_t gx, std::int64_t gy);

// Color mandated by the boundary rule at (gx, gy), if any.
std::optional<int> boundary_color(int n, const Boundary& b, std::int64_t gx, std::int64_t gy);

BoolCircuit enforce_boundary(const BoolCircuit& circ, int n, const Boundary& kind);

// Smallest n' with 2^n / 2^n' < 1 - 2 eps.
int thick_bits(int n, const Rational& eps);

struct ThickEmbedding {
  DiscreteBrouwerInstance instance;
  std::int64_t x0 = 0, y0 = 0;  // grid offset of the embedded copy
};

ThickEmbedding thicken(const DiscreteBrouwerInstance& inst, const Rational& eps);

// Original square for a square of the thick instance, when it lies in the
// embedded copy. The copy is transposed; see the implementation.
std::optional<std::pair<std::int64_t, std::int64_t>> map_square_back(
    const ThickEmbedding& emb, int original_n, std::int64_t gx, std::int64_t gy);

// Table lookup: table[gx * 2^n + gy] in {1, 2, 3}.
std::vector<int> color_table(const DiscreteBrouwerInstance& inst);

std::vector<std::pair<std::int64_t, std::int64_t>> find_trichromatic(
    const DiscreteBrouwerInstance& inst);
std::vector<std::pair<std::int64_t, std::int64_t>> find_trichromatic(int n,
                                                                      const std::vector<int>& table);

// Sum-of-minterms netlist realizing the given color table (same indexing as
// color_table).
BoolCircuit circuit_from_table(int n, const std::vector<int>& table);

// Checks the boundary law exhaustively; returns the first offending point.
std::optional<std::pair<std::int64_t, std::int64_t>> boundary_violation(
    const DiscreteBrouwerInstance& inst);

// Builds NOT/OR netlists with constant folding and structural hashing.
class NetlistBuilder {
 public:
  // Literal: a ref >= 0, or one of the two constants.
  static constexpr int kFalse = -1;
  static constexpr int kTrue = -2;

  explicit NetlistBuilder(int num_inputs);

  int input(int i) const { return i; }
  int lit_not(int a);
  int lit_or(int a, int b);
  int lit_and(int a, int b);
  int lit_xor(int a, int b);
  int any(const std::vector<int>& xs);
  int all(const std::vector<int>& xs);
  int mux(int sel, int then_lit, int else_lit);

  // Comparisons of an unsigned bit vector (MSB first) with a constant.
  int le_const(const std::vector<int>& bits, std::int64_t c);
  int ge_const(const std::vector<int>& bits, std::int64_t c);
  // Low bits of (value - c) mod 2^m, MSB first.
  std::vector<int> sub_const(const std::vector<int>& bits, std::int64_t c);

  // Inlines `c` with its inputs bound to the given literals.
  std::array<int, 3> instantiate(const BoolCircuit& c, const std::vector<int>& inputs);

  BoolCircuit finish(const std::array<int, 3>& outputs);

 private:
  BoolCircuit c_;
  std::unordered_map<std::int64_t, int> cache_;
  int true_ref_ = -1;
  int materialize(int lit);
  int gate(BoolGate::Kind k, int a, int b);
};

}  // namespace ppad::brouwer
