#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ppadtree/brouwer.hpp"
#include "ppadtree/circuit.hpp"
#include "ppadtree/rational.hpp"
#include "ppadtree/slp.hpp"

namespace ppad::b2d {

struct ReductionParams {
  int n = 0;
  int k = 0;
  Rational eps;
  Rational L;          // (k+2) 2^(n+1)
  Rational R;          // rational stand-in for sqrt(2)
  Rational eps_prime;  // target gap used by the verification oracles
  int sqrt2_digits = 5;

  // Fills L, R and (unless given) eps_prime, then validates.
  static ReductionParams make(int n, int k, const Rational& eps, int sqrt2_digits = 5,
                              std::optional<Rational> eps_prime = std::nullopt);
  void validate() const;
  Rational delta() const;  // sample spacing 1/((k+1) 2^(n+1))
};

// Smallest continued-fraction convergent p/q of sqrt(2) with |p/q - sqrt(2)| <= 10^-digits.
Rational sqrt2_convergent(int digits);
// Exact test of |r - sqrt(2)| <= bound for rational r and bound > 0.
bool within_sqrt2(const Rational& r, const Rational& bound);

// Packed value sum_i bits[i] / 2^(i+1).
Rational packed(const std::vector<int>& bits);
// Bits of a valid packing (x 2^K integral), first K of them.
std::vector<int> unpack_bits(const Rational& x, int K);

// The macro SLPs as DSL source and as parsed definitions.
const std::string& macro_library_source();
const slp::MacroLib& macro_library();

// FirstBit thresholds for exactly packed values with at most K bits.
Rational packed_threshold(int K);
Rational packed_gain(int K);

// Color outputs moved to the last three gates (copies appended if needed).
brouwer::BoolCircuit normalize_outputs(const brouwer::BoolCircuit& c);

const std::string& reduction_source();
// Constants bound to the reduction program's parameters for this instance.
slp::ConstEnv reduction_env(const brouwer::BoolCircuit& normalized, const ReductionParams& p);
slp::FlatSlp reduction_slp(const brouwer::DiscreteBrouwerInstance& inst, const ReductionParams& p);
circuit::SyncCircuit build_reduction(const brouwer::DiscreteBrouwerInstance& inst,
                                     const ReductionParams& p);

// Straight arithmetic, independent of any SLP: samples p + (i-1) delta.
std::vector<std::pair<Rational, Rational>> sample_points(const std::pair<Rational, Rational>& p,
                                                         const ReductionParams& params);
// True when x lies in [a/2^n, a/2^n + 1/L) for some integer a.
bool poorly_positioned(const Rational& x, int n, const Rational& L);
int count_poorly_positioned(const std::pair<Rational, Rational>& p, const ReductionParams& params);

struct GeometryReport {
  Rational minimum;                 // over every pair of color vectors
  std::vector<Rational> pair_min;   // pairs (1,2), (1,3), (2,3)
  std::vector<Rational> single;     // norms of the three vectors
};
std::array<std::pair<Rational, Rational>, 3> displacement_vectors(const ReductionParams& p);
GeometryReport displacement_geometry_check(const ReductionParams& p);

struct GridPoint {
  Rational x, y, residual;
};
// Residual at every (i/res, j/res), 0 <= i, j <= res, sorted by residual then point.
std::vector<GridPoint> grid_search(const circuit::SyncCircuit& circ, int resolution, int threads = 0);

}  // namespace ppad::b2d
