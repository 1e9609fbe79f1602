// Recursive-descent parser for the .slp language.
//
//   input a, b          output a, b        param n, k
//   const N = <cexpr>
//   macro Name(v1, v2; c1, c2) { ... }
//   for i in <cexpr list> { ... }          (a..b is an inclusive range)
//   if <cexpr> { ... }
//   x <- <rhs>          Name(v1, v2; e1, e2)
//
// rhs: <cexpr> | v | u +b w | u -b w | v *b <cexpr> | <cexpr> *b v
// where u, w are variables or constant immediates.

#include <cctype>
#include <set>

#include "ppadtree/error.hpp"
#include "ppadtree/slp.hpp"

namespace ppad::slp {
namespace {

enum class Tok { Ident, Number, Sym, Newline, End };

struct Token {
  Tok kind;
  std::string text;
  int line, column;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto push = [&](Tok k, std::string t, int c) { out.push_back({k, std::move(t), line, c}); };
  while (i < src.size()) {
    char c = src[i];
    if (c == '\n') {
      push(Tok::Newline, "\n", col);
      ++i;
      ++line;
      col = 1;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      ++col;
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    int start_col = col;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      push(Tok::Ident, src.substr(i, j - i), start_col);
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j + 1 < src.size() && src[j] == '.' && std::isdigit(static_cast<unsigned char>(src[j + 1]))) {
        ++j;
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      }
      push(Tok::Number, src.substr(i, j - i), start_col);
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    auto next = [&](std::size_t k) -> char { return i + k < src.size() ? src[i + k] : '\0'; };
    std::string sym;
    if ((c == '+' || c == '-' || c == '*') && next(1) == 'b' && !ident_char(next(2)))
      sym = std::string{c, 'b'};
    else if (c == '<' && next(1) == '-')
      sym = "<-";
    else if (c == '.' && next(1) == '.')
      sym = "..";
    else if ((c == '=' || c == '!' || c == '<' || c == '>') && next(1) == '=')
      sym = std::string{c, '='};
    else if (std::string("+-*/^%()[]{},;<>=").find(c) != std::string::npos)
      sym = std::string{c};
    else
      throw ParseError(std::string("unexpected character '") + c + "'", line, start_col);
    push(Tok::Sym, sym, start_col);
    i += sym.size();
    col += static_cast<int>(sym.size());
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

const std::set<std::string> kKeywords = {"input", "output", "param", "const", "macro", "for",
                                         "in",    "if",     "and",   "or",    "not"};

// Names visible at a point of the source, split by role.
struct Scope {
  std::set<std::string> vars;
  std::set<std::string> consts;
};

class Parser {
 public:
  Parser(const std::string& text, const std::vector<std::string>& extra_inputs)
      : toks_(lex(text)) {
    for (const auto& v : extra_inputs) {
      prog_.inputs.push_back(v);
      global_.vars.insert(v);
    }
  }

  SlpProgram run() {
    skip_separators();
    while (peek().kind != Tok::End) {
      top_statement();
      end_statement();
      skip_separators();
    }
    return std::move(prog_);
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  SlpProgram prog_;
  Scope global_;

  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  const Token& take() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
  bool is_sym(const std::string& s, std::size_t k = 0) const {
    return peek(k).kind == Tok::Sym && peek(k).text == s;
  }
  bool is_word(const std::string& s) const {
    return peek().kind == Tok::Ident && peek().text == s;
  }
  [[noreturn]] void error(const std::string& msg, const Token& t) const {
    throw ParseError(msg, t.line, t.column);
  }
  [[noreturn]] void error(const std::string& msg) const { error(msg, peek()); }

  void expect_sym(const std::string& s) {
    if (!is_sym(s)) error("expected '" + s + "'" + found());
    take();
  }
  std::string found() const {
    const Token& t = peek();
    if (t.kind == Tok::End) return ", found end of input";
    if (t.kind == Tok::Newline) return ", found end of line";
    return ", found '" + t.text + "'";
  }
  std::string ident(const char* what) {
    if (peek().kind != Tok::Ident || kKeywords.count(peek().text))
      error(std::string("expected ") + what + found());
    return take().text;
  }

  void skip_separators() {
    while (peek().kind == Tok::Newline || is_sym(";")) take();
  }
  void end_statement() {
    if (peek().kind == Tok::Newline || is_sym(";")) {
      take();
      return;
    }
    if (peek().kind == Tok::End || is_sym("}")) return;
    error("expected end of statement" + found());
  }

  std::vector<std::string> name_list(const char* what) {
    std::vector<std::string> out{ident(what)};
    while (is_sym(",")) {
      take();
      out.push_back(ident(what));
    }
    return out;
  }

  void check_fresh(const std::string& name, const Token& t) {
    if (global_.vars.count(name) || global_.consts.count(name))
      error("'" + name + "' is already declared", t);
  }

  void top_statement() {
    const Token& t = peek();
    if (is_word("input") || is_word("output")) {
      bool in = take().text == "input";
      for (auto& n : name_list("variable name")) {
        if (global_.consts.count(n)) error("'" + n + "' is already a constant", t);
        (in ? prog_.inputs : prog_.outputs).push_back(n);
        global_.vars.insert(n);
      }
      return;
    }
    if (is_word("param")) {
      take();
      for (auto& n : name_list("parameter name")) {
        check_fresh(n, t);
        prog_.params.push_back(n);
        global_.consts.insert(n);
      }
      return;
    }
    if (is_word("const") && !in_block_) {
      take();
      const Token& nt = peek();
      std::string n = ident("constant name");
      check_fresh(n, nt);
      expect_sym("=");
      auto e = cexpr(global_, "constant definition");
      prog_.consts.emplace_back(n, e);
      global_.consts.insert(n);
      return;
    }
    if (is_word("macro")) {
      macro_def();
      return;
    }
    prog_.body.push_back(statement(global_));
  }

  bool in_block_ = false;

  void macro_def() {
    const Token& kw = take();
    MacroDef m;
    m.name = ident("macro name");
    if (prog_.macros.count(m.name)) error("macro '" + m.name + "' defined twice", kw);
    expect_sym("(");
    Scope scope;
    scope.consts = global_.consts;
    if (!is_sym(";") && !is_sym(")")) m.var_params = name_list("macro variable parameter");
    if (is_sym(";")) {
      take();
      if (!is_sym(")")) m.const_params = name_list("macro constant parameter");
    }
    expect_sym(")");
    for (const auto& v : m.var_params) {
      scope.consts.erase(v);
      scope.vars.insert(v);
    }
    for (const auto& c : m.const_params) {
      if (scope.vars.count(c)) error("parameter '" + c + "' listed twice", kw);
      scope.consts.insert(c);
    }
    m.body = block(scope);
    prog_.macros.emplace(m.name, std::move(m));
  }

  Block block(Scope scope) {
    expect_sym("{");
    bool saved = in_block_;
    in_block_ = true;
    Block out;
    skip_separators();
    while (!is_sym("}")) {
      if (peek().kind == Tok::End) error("unterminated block, expected '}'");
      out.push_back(statement(scope));
      end_statement();
      skip_separators();
    }
    take();
    in_block_ = saved;
    return out;
  }

  Statement statement(Scope& scope) {
    const Token& t = peek();
    Statement s;
    s.line = t.line;
    s.column = t.column;
    if (is_word("input") || is_word("output") || is_word("param") || is_word("macro"))
      error("'" + t.text + "' is only allowed at top level");
    if (is_word("const")) {
      take();
      s.kind = Statement::Kind::ConstDef;
      s.name = ident("constant name");
      if (scope.vars.count(s.name)) error("'" + s.name + "' is a variable", t);
      expect_sym("=");
      s.expr = cexpr(scope, "constant definition");
      scope.consts.insert(s.name);
      return s;
    }
    if (is_word("for")) {
      take();
      s.kind = Statement::Kind::For;
      const Token& it = peek();
      s.name = ident("loop index");
      if (scope.vars.count(s.name)) error("loop index '" + s.name + "' shadows a variable", it);
      if (!is_word("in")) error("expected 'in'" + found());
      take();
      s.expr = cexpr(scope, "non-constant loop bound");
      Scope inner = scope;
      inner.consts.insert(s.name);
      s.body = block(inner);
      absorb_vars(scope, inner);
      return s;
    }
    if (is_word("if")) {
      take();
      s.kind = Statement::Kind::If;
      s.expr = cexpr(scope, "non-constant if condition");
      Scope inner = scope;
      s.body = block(inner);
      absorb_vars(scope, inner);
      return s;
    }
    if (peek().kind == Tok::Ident && is_sym("(", 1)) {
      s.kind = Statement::Kind::Call;
      s.name = take().text;
      take();
      if (!is_sym(";") && !is_sym(")")) {
        s.var_args = name_list("variable argument");
        for (const auto& v : s.var_args) {
          if (scope.consts.count(v) && !scope.vars.count(v))
            error("constant '" + v + "' passed where a variable is expected", t);
          scope.vars.insert(v);
        }
      }
      if (is_sym(";")) {
        take();
        if (!is_sym(")")) {
          s.const_args.push_back(cexpr(scope, "macro constant argument"));
          while (is_sym(",")) {
            take();
            s.const_args.push_back(cexpr(scope, "macro constant argument"));
          }
        }
      }
      expect_sym(")");
      return s;
    }
    if (peek().kind == Tok::Ident && is_sym("<-", 1)) {
      s.kind = Statement::Kind::Assign;
      s.target = take().text;
      if (kKeywords.count(s.target)) error("keyword used as variable", t);
      if (scope.consts.count(s.target) && !scope.vars.count(s.target))
        error("cannot assign to constant '" + s.target + "'", t);
      take();
      rhs(s, scope);
      scope.vars.insert(s.target);
      return s;
    }
    if (peek().kind == Tok::Ident && !kKeywords.count(peek().text))
      error("expected '<-' or '(' after '" + t.text + "'", peek(1));
    error("expected a statement" + found());
  }

  // Variables first assigned inside a nested block stay visible afterwards.
  static void absorb_vars(Scope& outer, const Scope& inner) {
    for (const auto& v : inner.vars) outer.vars.insert(v);
  }

  Operand operand(const Scope& scope) {
    Operand o;
    if (peek().kind == Tok::Ident && scope.vars.count(peek().text) && !is_sym("(", 1) &&
        !is_sym("[", 1)) {
      o.var = take().text;
      return o;
    }
    if (peek().kind == Tok::Ident && !kKeywords.count(peek().text) &&
        !scope.consts.count(peek().text) && !is_sym("(", 1))
      error("undeclared variable '" + peek().text + "'");
    o.is_var = false;
    o.imm = cexpr(scope, "gate operand");
    return o;
  }

  void check_multiplier(const CExprPtr& c, const Token& at) {
    std::set<std::string> names;
    cexpr_names(*c, names);
    if (!names.empty()) return;
    Rational v = eval_scalar(*c, {});
    if (v.sign() < 0) error("negative multiplier " + v.str() + " in *b gate", at);
  }

  void rhs(Statement& s, const Scope& scope) {
    const Token& first = peek();
    Operand a = operand(scope);
    if (is_sym("+b") || is_sym("-b")) {
      s.op = take().text == "+b" ? OpKind::AddB : OpKind::SubB;
      s.a = std::move(a);
      s.b = operand(scope);
      return;
    }
    if (is_sym("*b")) {
      const Token& star = take();
      s.op = OpKind::MulB;
      if (a.is_var) {
        s.a = std::move(a);
        s.c = cexpr(scope, "multiplier");
      } else {
        if (!(peek().kind == Tok::Ident && scope.vars.count(peek().text)))
          error("*b needs a variable on one side" + found());
        s.a.var = take().text;
        s.c = a.imm;
      }
      check_multiplier(s.c, star);
      return;
    }
    if (a.is_var) {
      s.op = OpKind::MulB;
      s.a = std::move(a);
      auto one = std::make_shared<CExpr>();
      one->kind = CExpr::Kind::Number;
      one->number = Rational(1);
      one->line = first.line;
      one->column = first.column;
      s.c = one;
    } else {
      s.op = OpKind::Const;
      s.c = a.imm;
    }
  }

  // ---- constant expressions, lowest to highest precedence ----

  CExprPtr make(CExpr::Kind k, const Token& at, std::string name, std::vector<CExprPtr> args) {
    auto e = std::make_shared<CExpr>();
    e->kind = k;
    e->name = std::move(name);
    e->args = std::move(args);
    e->line = at.line;
    e->column = at.column;
    return e;
  }

  const Scope* cscope_ = nullptr;
  std::string ccontext_;

  CExprPtr cexpr(const Scope& scope, const std::string& context) {
    const Scope* saved = cscope_;
    std::string saved_ctx = ccontext_;
    cscope_ = &scope;
    ccontext_ = context;
    auto e = c_or();
    cscope_ = saved;
    ccontext_ = saved_ctx;
    return e;
  }

  CExprPtr c_or() {
    auto l = c_and();
    while (is_word("or")) {
      const Token& t = take();
      l = make(CExpr::Kind::Binary, t, "or", {l, c_and()});
    }
    return l;
  }
  CExprPtr c_and() {
    auto l = c_not();
    while (is_word("and")) {
      const Token& t = take();
      l = make(CExpr::Kind::Binary, t, "and", {l, c_not()});
    }
    return l;
  }
  CExprPtr c_not() {
    if (is_word("not")) {
      const Token& t = take();
      return make(CExpr::Kind::Unary, t, "not", {c_not()});
    }
    return c_cmp();
  }
  CExprPtr c_cmp() {
    auto l = c_range();
    for (const char* op : {"==", "!=", "<=", ">=", "<", ">"}) {
      if (is_sym(op)) {
        const Token& t = take();
        return make(CExpr::Kind::Binary, t, op, {l, c_range()});
      }
    }
    if (is_word("in")) {
      const Token& t = take();
      return make(CExpr::Kind::Binary, t, "in", {l, c_range()});
    }
    return l;
  }
  CExprPtr c_range() {
    auto l = c_add();
    if (is_sym("..")) {
      const Token& t = take();
      return make(CExpr::Kind::Range, t, "..", {l, c_add()});
    }
    return l;
  }
  CExprPtr c_add() {
    auto l = c_mul();
    while (is_sym("+") || is_sym("-")) {
      const Token& t = take();
      l = make(CExpr::Kind::Binary, t, t.text, {l, c_mul()});
    }
    return l;
  }
  CExprPtr c_mul() {
    auto l = c_unary();
    while (is_sym("*") || is_sym("/") || is_sym("%")) {
      const Token& t = take();
      l = make(CExpr::Kind::Binary, t, t.text, {l, c_unary()});
    }
    return l;
  }
  CExprPtr c_unary() {
    if (is_sym("-")) {
      const Token& t = take();
      return make(CExpr::Kind::Unary, t, "-", {c_unary()});
    }
    return c_pow();
  }
  CExprPtr c_pow() {
    auto base = c_postfix();
    if (is_sym("^")) {
      const Token& t = take();
      return make(CExpr::Kind::Binary, t, "^", {base, c_unary()});
    }
    return base;
  }
  CExprPtr c_postfix() {
    auto e = c_primary();
    while (is_sym("[")) {
      const Token& t = take();
      auto idx = c_or();
      expect_sym("]");
      e = make(CExpr::Kind::Index, t, "[]", {e, idx});
    }
    return e;
  }
  CExprPtr c_primary() {
    const Token& t = peek();
    if (t.kind == Tok::Number) {
      take();
      auto e = make(CExpr::Kind::Number, t, "", {});
      const_cast<CExpr&>(*e).number = Rational::parse(t.text);
      return e;
    }
    if (is_sym("(")) {
      take();
      auto e = c_or();
      expect_sym(")");
      return e;
    }
    if (is_sym("[")) {
      take();
      std::vector<CExprPtr> items;
      if (!is_sym("]")) {
        items.push_back(c_or());
        while (is_sym(",")) {
          take();
          items.push_back(c_or());
        }
      }
      expect_sym("]");
      return make(CExpr::Kind::ListLit, t, "", std::move(items));
    }
    if (t.kind == Tok::Ident && !kKeywords.count(t.text)) {
      take();
      if (is_sym("(")) {
        take();
        std::vector<CExprPtr> args;
        if (!is_sym(")")) {
          args.push_back(c_or());
          while (is_sym(",")) {
            take();
            args.push_back(c_or());
          }
        }
        expect_sym(")");
        return make(CExpr::Kind::Call, t, t.text, std::move(args));
      }
      if (cscope_->vars.count(t.text) && !cscope_->consts.count(t.text))
        error(ccontext_ + ": variable '" + t.text + "' is not a compile-time constant", t);
      if (!cscope_->consts.count(t.text)) error("undeclared name '" + t.text + "'", t);
      return make(CExpr::Kind::Name, t, t.text, {});
    }
    error("expected a constant expression" + found());
  }
};

}  // namespace

SlpProgram parse_slp(const std::string& text, const std::vector<std::string>& extra_inputs) {
  return Parser(text, extra_inputs).run();
}

}  // namespace ppad::slp
