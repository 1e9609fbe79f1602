#include <functional>
#include <sstream>

#include "ppadtree/error.hpp"
#include "ppadtree/slp.hpp"

namespace ppad::slp {
namespace {

const MacroDef& find_macro(const SlpProgram& prog, const MacroLib& lib, const std::string& name,
                           const Statement& at) {
  if (auto it = prog.macros.find(name); it != prog.macros.end()) return it->second;
  if (auto it = lib.find(name); it != lib.end()) return it->second;
  throw ValidationError("line " + std::to_string(at.line) + ": unbound macro '" + name + "'");
}

ConstEnv global_env(const SlpProgram& prog, const ConstEnv& consts) {
  ConstEnv env;
  for (const auto& p : prog.params) {
    auto it = consts.find(p);
    if (it == consts.end()) throw ValidationError("parameter '" + p + "' has no value");
    env[p] = it->second;
  }
  for (const auto& [name, e] : prog.consts) env[name] = eval_cexpr(*e, env);
  return env;
}

std::vector<Rational> loop_values(const Statement& s, const ConstEnv& env) {
  CValue v = eval_cexpr(*s.expr, env);
  if (!v.is_list)
    throw ValidationError("line " + std::to_string(s.line) + ": loop range is not a list");
  return v.list;
}

void check_const(const Rational& c, const Statement& s, const char* what) {
  if (c.sign() < 0 || c > Rational(1))
    throw ValidationError("line " + std::to_string(s.line) + ": " + what + " " + c.str() +
                          " outside [0, 1]");
}

void check_multiplier(const Rational& c, const Statement& s) {
  if (c.sign() < 0)
    throw ValidationError("line " + std::to_string(s.line) + ": negative multiplier " + c.str());
}

std::string where(const Statement& s) { return "line " + std::to_string(s.line) + ": "; }

// Shared driver for macro binding; `Cell` is whatever a variable name maps to.
template <class Cell>
struct Frame {
  std::map<std::string, Cell> vars;
  ConstEnv consts;
};

class Expander {
 public:
  Expander(const SlpProgram& prog, const MacroLib& lib, const ConstEnv& consts)
      : prog_(prog), lib_(lib), globals_(global_env(prog, consts)) {}

  FlatSlp run() {
    Frame<int> top;
    top.consts = globals_;
    for (const auto& in : prog_.inputs) {
      if (top.vars.count(in)) throw ValidationError("input '" + in + "' declared twice");
      int id = fresh(in);
      top.vars[in] = id;
      defined_[id] = true;
      out_.inputs.push_back(id);
    }
    block(prog_.body, top);
    for (const auto& o : prog_.outputs) {
      auto it = top.vars.find(o);
      if (it == top.vars.end() || !defined_[it->second])
        throw ValidationError("output '" + o + "' is never assigned");
      out_.outputs.push_back(it->second);
    }
    return std::move(out_);
  }

 private:
  const SlpProgram& prog_;
  const MacroLib& lib_;
  ConstEnv globals_;
  FlatSlp out_;
  std::vector<bool> defined_;
  std::vector<std::string> stack_;
  int invocation_ = 0;

  int fresh(const std::string& name) {
    out_.var_names.push_back(name);
    defined_.push_back(false);
    return static_cast<int>(out_.var_names.size()) - 1;
  }

  int read(Frame<int>& f, const std::string& name, const Statement& s) {
    auto it = f.vars.find(name);
    if (it == f.vars.end() || !defined_[it->second])
      throw ValidationError(where(s) + "variable '" + name + "' used before assignment");
    return it->second;
  }

  FlatOperand operand(const Operand& o, Frame<int>& f, const Statement& s) {
    FlatOperand r;
    if (o.is_var) {
      r.var = read(f, o.var, s);
    } else {
      r.is_var = false;
      r.imm = eval_scalar(*o.imm, f.consts);
      check_const(r.imm, s, "immediate");
    }
    return r;
  }

  void block(const Block& b, Frame<int>& f) {
    for (const auto& s : b) statement(s, f);
  }

  void statement(const Statement& s, Frame<int>& f) {
    switch (s.kind) {
      case Statement::Kind::ConstDef:
        f.consts[s.name] = eval_cexpr(*s.expr, f.consts);
        return;
      case Statement::Kind::For: {
        auto saved = f.consts;
        for (const auto& v : loop_values(s, f.consts)) {
          f.consts[s.name] = CValue::of(v);
          block(s.body, f);
        }
        f.consts = std::move(saved);
        return;
      }
      case Statement::Kind::If: {
        if (!eval_scalar(*s.expr, f.consts).is_zero()) {
          auto saved = f.consts;
          block(s.body, f);
          f.consts = std::move(saved);
        }
        return;
      }
      case Statement::Kind::Assign: {
        FlatLine line;
        line.op = s.op;
        if (s.op == OpKind::Const) {
          line.c = eval_scalar(*s.c, f.consts);
          check_const(line.c, s, "constant");
        } else {
          line.a = operand(s.a, f, s);
          if (s.op == OpKind::MulB) {
            line.c = eval_scalar(*s.c, f.consts);
            check_multiplier(line.c, s);
          } else {
            line.b = operand(s.b, f, s);
          }
        }
        auto it = f.vars.find(s.target);
        int id = it != f.vars.end() ? it->second : (f.vars[s.target] = fresh(local_name(s.target)));
        line.target = id;
        defined_[id] = true;
        out_.lines.push_back(std::move(line));
        return;
      }
      case Statement::Kind::Call:
        call(s, f);
        return;
    }
  }

  std::string suffix_;
  std::string local_name(const std::string& n) const { return n + suffix_; }

  void call(const Statement& s, Frame<int>& f) {
    const MacroDef& m = find_macro(prog_, lib_, s.name, s);
    for (const auto& active : stack_)
      if (active == m.name) throw ValidationError(where(s) + "recursive macro '" + m.name + "'");
    if (s.var_args.size() != m.var_params.size() || s.const_args.size() != m.const_params.size())
      throw ValidationError(where(s) + "macro '" + m.name + "' expects " +
                            std::to_string(m.var_params.size()) + " variable and " +
                            std::to_string(m.const_params.size()) + " constant arguments");
    Frame<int> callee;
    callee.consts = globals_;
    for (std::size_t i = 0; i < m.const_params.size(); ++i)
      callee.consts[m.const_params[i]] = eval_cexpr(*s.const_args[i], f.consts);
    for (std::size_t i = 0; i < m.var_params.size(); ++i) {
      const std::string& arg = s.var_args[i];
      auto it = f.vars.find(arg);
      int id = it != f.vars.end() ? it->second : (f.vars[arg] = fresh(local_name(arg)));
      callee.vars[m.var_params[i]] = id;
    }
    std::string saved = suffix_;
    suffix_ = "@" + m.name + "#" + std::to_string(++invocation_);
    stack_.push_back(m.name);
    block(m.body, callee);
    stack_.pop_back();
    suffix_ = saved;
  }
};

// Reference semantics for the structured interpreter: each name maps to a
// storage cell, and macro parameters share the caller's cell.
using Cell = std::shared_ptr<std::optional<Rational>>;

class Interpreter {
 public:
  Interpreter(const SlpProgram& prog, const MacroLib& lib, const ConstEnv& consts)
      : prog_(prog), lib_(lib), globals_(global_env(prog, consts)) {}

  std::vector<Rational> run(const std::vector<Rational>& inputs) {
    check_unit_inputs(inputs, prog_.inputs.size());
    Frame<Cell> top;
    top.consts = globals_;
    for (std::size_t i = 0; i < inputs.size(); ++i)
      top.vars[prog_.inputs[i]] = std::make_shared<std::optional<Rational>>(inputs[i]);
    block(prog_.body, top);
    std::vector<Rational> out;
    for (const auto& o : prog_.outputs) {
      auto it = top.vars.find(o);
      if (it == top.vars.end() || !*it->second)
        throw ValidationError("output '" + o + "' is never assigned");
      out.push_back(**it->second);
    }
    return out;
  }

 private:
  const SlpProgram& prog_;
  const MacroLib& lib_;
  ConstEnv globals_;
  int depth_ = 0;

  Rational value(const Operand& o, Frame<Cell>& f, const Statement& s) {
    if (!o.is_var) return eval_scalar(*o.imm, f.consts);
    auto it = f.vars.find(o.var);
    if (it == f.vars.end() || !*it->second)
      throw ValidationError(where(s) + "variable '" + o.var + "' used before assignment");
    return **it->second;
  }

  Cell& cell(Frame<Cell>& f, const std::string& name) {
    auto& c = f.vars[name];
    if (!c) c = std::make_shared<std::optional<Rational>>();
    return c;
  }

  void block(const Block& b, Frame<Cell>& f) {
    for (const auto& s : b) statement(s, f);
  }

  void statement(const Statement& s, Frame<Cell>& f) {
    const Rational one(1);
    switch (s.kind) {
      case Statement::Kind::ConstDef:
        f.consts[s.name] = eval_cexpr(*s.expr, f.consts);
        return;
      case Statement::Kind::For: {
        ConstEnv saved = f.consts;
        CValue range = eval_cexpr(*s.expr, f.consts);
        for (const auto& v : range.list) {
          f.consts[s.name] = CValue::of(v);
          block(s.body, f);
        }
        f.consts = saved;
        return;
      }
      case Statement::Kind::If:
        if (!eval_scalar(*s.expr, f.consts).is_zero()) {
          ConstEnv saved = f.consts;
          block(s.body, f);
          f.consts = saved;
        }
        return;
      case Statement::Kind::Assign: {
        Rational r;
        switch (s.op) {
          case OpKind::Const:
            r = eval_scalar(*s.c, f.consts);
            break;
          case OpKind::AddB:
            r = min(value(s.a, f, s) + value(s.b, f, s), one);
            break;
          case OpKind::SubB:
            r = max(value(s.a, f, s) - value(s.b, f, s), Rational(0));
            break;
          case OpKind::MulB:
            r = min(value(s.a, f, s) * eval_scalar(*s.c, f.consts), one);
            break;
        }
        *cell(f, s.target) = r;
        return;
      }
      case Statement::Kind::Call: {
        const MacroDef& m = find_macro(prog_, lib_, s.name, s);
        if (++depth_ > 256) throw ValidationError(where(s) + "recursive macro '" + m.name + "'");
        Frame<Cell> callee;
        callee.consts = globals_;
        for (std::size_t i = 0; i < m.const_params.size(); ++i)
          callee.consts[m.const_params[i]] = eval_cexpr(*s.const_args.at(i), f.consts);
        for (std::size_t i = 0; i < m.var_params.size(); ++i)
          callee.vars[m.var_params[i]] = cell(f, s.var_args.at(i));
        block(m.body, callee);
        --depth_;
        return;
      }
    }
  }
};

}  // namespace

FlatSlp expand(const SlpProgram& program, const MacroLib& lib, const ConstEnv& consts) {
  return Expander(program, lib, consts).run();
}

std::vector<Rational> evaluate_structured(const SlpProgram& program, const MacroLib& lib,
                                          const ConstEnv& consts,
                                          const std::vector<Rational>& inputs) {
  return Interpreter(program, lib, consts).run(inputs);
}

std::string to_text(const FlatSlp& flat) {
  std::ostringstream os;
  auto opnd = [&](const FlatOperand& o) {
    return o.is_var ? flat.var_names[static_cast<std::size_t>(o.var)] : o.imm.str();
  };
  if (!flat.inputs.empty()) {
    os << "input ";
    for (std::size_t i = 0; i < flat.inputs.size(); ++i)
      os << (i ? ", " : "") << flat.var_names[static_cast<std::size_t>(flat.inputs[i])];
    os << "\n";
  }
  if (!flat.outputs.empty()) {
    os << "output ";
    for (std::size_t i = 0; i < flat.outputs.size(); ++i)
      os << (i ? ", " : "") << flat.var_names[static_cast<std::size_t>(flat.outputs[i])];
    os << "\n";
  }
  for (const auto& l : flat.lines) {
    os << flat.var_names[static_cast<std::size_t>(l.target)] << " <- ";
    switch (l.op) {
      case OpKind::Const: os << l.c.str(); break;
      case OpKind::AddB: os << opnd(l.a) << " +b " << opnd(l.b); break;
      case OpKind::SubB: os << opnd(l.a) << " -b " << opnd(l.b); break;
      case OpKind::MulB: os << opnd(l.a) << " *b " << l.c.str(); break;
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace ppad::slp
