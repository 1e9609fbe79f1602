#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ppadtree/rational.hpp"

namespace ppad::slp {

enum class OpKind { Const, AddB, SubB, MulB };

const char* op_symbol(OpKind k);

// ---------------------------------------------------------------------------
// Compile-time values and expressions

// Either a scalar or a flat list of scalars.
struct CValue {
  bool is_list = false;
  Rational scalar;
  std::vector<Rational> list;

  static CValue of(Rational r) { return CValue{false, std::move(r), {}}; }
  static CValue of_list(std::vector<Rational> l) { return CValue{true, Rational(0), std::move(l)}; }
  bool operator==(const CValue& o) const = default;
};

using ConstEnv = std::map<std::string, CValue>;

struct CExpr;
using CExprPtr = std::shared_ptr<const CExpr>;

struct CExpr {
  enum class Kind { Number, Name, ListLit, Range, Unary, Binary, Call, Index };
  Kind kind;
  Rational number;
  std::string name;  // Name, Call (function), Unary/Binary (operator)
  std::vector<CExprPtr> args;
  int line = 0, column = 0;
};

CValue eval_cexpr(const CExpr& e, const ConstEnv& env);
Rational eval_scalar(const CExpr& e, const ConstEnv& env);
// Collects every free name the expression mentions.
void cexpr_names(const CExpr& e, std::set<std::string>& out);

// ---------------------------------------------------------------------------
// Structured program

// Operand of a gate: a variable or an immediate constant expression.
struct Operand {
  bool is_var = true;
  std::string var;
  CExprPtr imm;
};

struct Statement;
using Block = std::vector<Statement>;

struct Statement {
  enum class Kind { Assign, For, If, Call, ConstDef };
  Kind kind;
  int line = 0, column = 0;

  // Assign
  std::string target;
  OpKind op = OpKind::Const;
  Operand a, b;
  CExprPtr c;  // Const value or MulB multiplier

  // For / ConstDef: name of the bound index or constant; For range in `expr`
  std::string name;
  CExprPtr expr;  // For list, If predicate, ConstDef value
  Block body;

  // Call
  std::vector<std::string> var_args;
  std::vector<CExprPtr> const_args;
};

struct MacroDef {
  std::string name;
  std::vector<std::string> var_params;
  std::vector<std::string> const_params;
  Block body;
};

struct SlpProgram {
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::vector<std::string> params;  // supplied at expansion time
  std::vector<std::pair<std::string, CExprPtr>> consts;
  std::map<std::string, MacroDef> macros;
  Block body;
};

using MacroLib = std::map<std::string, MacroDef>;

// `extra_inputs` are treated as declared inputs (convenient for fragments).
SlpProgram parse_slp(const std::string& text, const std::vector<std::string>& extra_inputs = {});

// ---------------------------------------------------------------------------
// Flat program

struct FlatOperand {
  bool is_var = true;
  int var = -1;
  Rational imm;
  bool operator==(const FlatOperand& o) const = default;
};

struct FlatLine {
  int target = -1;
  OpKind op = OpKind::Const;
  FlatOperand a, b;
  Rational c;
  bool operator==(const FlatLine& o) const = default;
};

struct FlatSlp {
  std::vector<std::string> var_names;
  std::vector<int> inputs;
  std::vector<FlatLine> lines;
  std::vector<int> outputs;
  bool operator==(const FlatSlp& o) const = default;
};

FlatSlp expand(const SlpProgram& program, const MacroLib& lib = {}, const ConstEnv& consts = {});

std::string to_text(const FlatSlp& flat);

// ---------------------------------------------------------------------------
// Analysis and interpretation

struct LivenessReport {
  std::vector<std::vector<int>> live_at_line;  // index 0 is line 1
  int max_live = 0;
};

LivenessReport liveness(const FlatSlp& flat);

std::vector<Rational> interpret(const FlatSlp& flat, const std::vector<Rational>& inputs);
// Value written by every line, in order.
std::vector<Rational> interpret_trace(const FlatSlp& flat, const std::vector<Rational>& inputs);

// Direct tree-walking interpreter over the structured program; independent
// of `expand` and used to cross-check it.
std::vector<Rational> evaluate_structured(const SlpProgram& program, const MacroLib& lib,
                                          const ConstEnv& consts,
                                          const std::vector<Rational>& inputs);

void check_unit_inputs(const std::vector<Rational>& inputs, std::size_t expected);

}  // namespace ppad::slp
