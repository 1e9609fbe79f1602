#pragma once

#include <map>
#include <string>
#include <vector>

#include "ppadtree/rational.hpp"
#include "ppadtree/slp.hpp"

namespace ppad::circuit {

using slp::OpKind;

// A gate argument. Level 0 addresses the circuit inputs; levels are 1-based.
// An immediate carries a constant instead of a wire.
struct Ref {
  int level = 0;
  int slot = 0;
  bool imm = false;
  Rational value;

  static Ref wire(int level, int slot) { return Ref{level, slot, false, Rational(0)}; }
  static Ref constant(Rational v) { return Ref{0, 0, true, std::move(v)}; }
  bool operator==(const Ref& o) const = default;
};

struct Gate {
  OpKind op = OpKind::Const;
  Ref a, b;
  Rational c;  // Const value or MulB multiplier

  static Gate constant(Rational v) { return Gate{OpKind::Const, {}, {}, std::move(v)}; }
  static Gate copy(Ref r) { return Gate{OpKind::MulB, std::move(r), {}, Rational(1)}; }
  bool operator==(const Gate& o) const = default;
};

struct SyncCircuit {
  int num_inputs = 0;
  Rational bound{1};  // clip ceiling: 1, or 1/10 after rescaling
  std::vector<std::vector<Gate>> levels;
  std::vector<Ref> outputs;
  bool operator==(const SyncCircuit& o) const = default;

  int depth() const { return static_cast<int>(levels.size()); }
  int width() const;
};

SyncCircuit compile(const slp::FlatSlp& flat);
SyncCircuit compile(const slp::FlatSlp& flat, const slp::LivenessReport& live);

// Value of every gate: result[i][j] is level i+1, slot j.
using Trace = std::vector<std::vector<Rational>>;

std::vector<Rational> evaluate(const SyncCircuit& circ, const std::vector<Rational>& point);
Trace evaluate_trace(const SyncCircuit& circ, const std::vector<Rational>& point);

// Reusable evaluation state for hot loops over many points of one circuit.
// Copy gates (MulB by 1) are resolved to their source once, up front; the
// circuit must outlive the evaluator.
class Evaluator {
 public:
  explicit Evaluator(const SyncCircuit& circ);
  Evaluator(const Evaluator&) = delete;
  Evaluator& operator=(const Evaluator&) = delete;
  std::vector<Rational> operator()(const std::vector<Rational>& point);

 private:
  struct Step {
    OpKind op;
    const mpq_class* a;
    const mpq_class* b;
    const mpq_class* c;
    mpq_class* out;
  };
  const SyncCircuit& circ_;
  std::vector<std::vector<mpq_class>> vals_;
  std::vector<mpq_class> inputs_;
  std::vector<Step> steps_;
  std::vector<const mpq_class*> outputs_;
};

struct ValidationReport {
  bool is_synchronous = true;
  int width = 0;
  int depth = 0;
  std::vector<std::string> violations;
};

// Never throws; structural problems are listed in `violations`.
ValidationReport validate(const SyncCircuit& circ);

// Infinity-norm distance between `point` and its image.
Rational residual(const SyncCircuit& circ, const std::vector<Rational>& point);

// Gate-for-gate copy with Const c mapped to c/10 and clip bound 1/10.
SyncCircuit rescale_tenth(const SyncCircuit& circ);

// Provenance entries, if any, are written under a "provenance" key.
std::string to_json(const SyncCircuit& circ,
                    const std::map<std::string, std::string>& provenance = {});
SyncCircuit from_json(const std::string& text);

}  // namespace ppad::circuit
