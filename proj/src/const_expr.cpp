#include <algorithm>

#include "ppadtree/error.hpp"
#include "ppadtree/slp.hpp"

namespace ppad::slp {

const char* op_symbol(OpKind k) {
  switch (k) {
    case OpKind::Const: return "c";
    case OpKind::AddB: return "+b";
    case OpKind::SubB: return "-b";
    case OpKind::MulB: return "*b";
  }
  return "?";
}

namespace {

[[noreturn]] void fail(const CExpr& e, const std::string& msg) {
  throw ValidationError("line " + std::to_string(e.line) + ", column " + std::to_string(e.column) +
                        ": " + msg);
}

Rational need_scalar(const CExpr& e, const CValue& v) {
  if (v.is_list) fail(e, "expected a scalar, found a list");
  return v.scalar;
}

std::vector<Rational> need_list(const CExpr& e, const CValue& v) {
  if (!v.is_list) fail(e, "expected a list, found a scalar");
  return v.list;
}

long need_int(const CExpr& e, const Rational& r) {
  if (!r.is_integer()) fail(e, "expected an integer, found " + r.str());
  return static_cast<long>(r.floor_int());
}

Rational truth(bool b) { return Rational(b ? 1 : 0); }

Rational power(const CExpr& e, const Rational& base, long exp) {
  if (exp < 0 && base.is_zero()) fail(e, "zero raised to a negative power");
  mpz_class num, den;
  unsigned long m = static_cast<unsigned long>(exp < 0 ? -exp : exp);
  mpz_pow_ui(num.get_mpz_t(), base.raw().get_num_mpz_t(), m);
  mpz_pow_ui(den.get_mpz_t(), base.raw().get_den_mpz_t(), m);
  Rational r(mpq_class(num, den));
  return exp < 0 ? Rational(1) / r : r;
}

}  // namespace

CValue eval_cexpr(const CExpr& e, const ConstEnv& env) {
  using K = CExpr::Kind;
  switch (e.kind) {
    case K::Number:
      return CValue::of(e.number);
    case K::Name: {
      auto it = env.find(e.name);
      if (it == env.end()) fail(e, "unbound constant '" + e.name + "'");
      return it->second;
    }
    case K::ListLit: {
      std::vector<Rational> out;
      for (const auto& a : e.args) {
        CValue v = eval_cexpr(*a, env);
        if (v.is_list)
          out.insert(out.end(), v.list.begin(), v.list.end());
        else
          out.push_back(v.scalar);
      }
      return CValue::of_list(std::move(out));
    }
    case K::Range: {
      long lo = need_int(e, need_scalar(e, eval_cexpr(*e.args[0], env)));
      long hi = need_int(e, need_scalar(e, eval_cexpr(*e.args[1], env)));
      std::vector<Rational> out;
      for (long i = lo; i <= hi; ++i) out.emplace_back(i);
      return CValue::of_list(std::move(out));
    }
    case K::Unary: {
      const Rational& v = need_scalar(e, eval_cexpr(*e.args[0], env));
      if (e.name == "-") return CValue::of(-v);
      if (e.name == "not") return CValue::of(truth(v.is_zero()));
      fail(e, "unknown unary operator " + e.name);
    }
    case K::Binary: {
      const std::string& op = e.name;
      if (op == "and" || op == "or") {
        bool l = !need_scalar(e, eval_cexpr(*e.args[0], env)).is_zero();
        if (op == "and" && !l) return CValue::of(truth(false));
        if (op == "or" && l) return CValue::of(truth(true));
        return CValue::of(truth(!need_scalar(e, eval_cexpr(*e.args[1], env)).is_zero()));
      }
      CValue lv = eval_cexpr(*e.args[0], env);
      CValue rv = eval_cexpr(*e.args[1], env);
      if (op == "in") {
        const Rational& x = need_scalar(e, lv);
        const auto& l = need_list(e, rv);
        return CValue::of(truth(std::find(l.begin(), l.end(), x) != l.end()));
      }
      if (op == "==") return CValue::of(truth(lv == rv));
      if (op == "!=") return CValue::of(truth(!(lv == rv)));
      const Rational& a = need_scalar(e, lv);
      const Rational& b = need_scalar(e, rv);
      if (op == "+") return CValue::of(a + b);
      if (op == "-") return CValue::of(a - b);
      if (op == "*") return CValue::of(a * b);
      if (op == "/") {
        if (b.is_zero()) fail(e, "division by zero");
        return CValue::of(a / b);
      }
      if (op == "%") {
        long x = need_int(e, a), y = need_int(e, b);
        if (y == 0) fail(e, "modulo by zero");
        long r = x % y;
        if (r < 0) r += (y < 0 ? -y : y);
        return CValue::of(Rational(r));
      }
      if (op == "^") return CValue::of(power(e, a, need_int(e, b)));
      if (op == "<") return CValue::of(truth(a < b));
      if (op == "<=") return CValue::of(truth(a <= b));
      if (op == ">") return CValue::of(truth(a > b));
      if (op == ">=") return CValue::of(truth(a >= b));
      fail(e, "unknown operator " + op);
    }
    case K::Call: {
      std::vector<CValue> args;
      for (const auto& a : e.args) args.push_back(eval_cexpr(*a, env));
      const std::string& f = e.name;
      auto arity = [&](std::size_t n) {
        if (args.size() != n)
          fail(e, f + " expects " + std::to_string(n) + " argument(s)");
      };
      if (f == "len") {
        arity(1);
        return CValue::of(Rational(static_cast<long>(need_list(e, args[0]).size())));
      }
      if (f == "abs") {
        arity(1);
        return CValue::of(abs(need_scalar(e, args[0])));
      }
      if (f == "floor") {
        arity(1);
        return CValue::of(Rational(static_cast<long>(need_scalar(e, args[0]).floor_int())));
      }
      if (f == "max" || f == "min") {
        std::vector<Rational> pool;
        for (const auto& v : args) {
          if (v.is_list)
            pool.insert(pool.end(), v.list.begin(), v.list.end());
          else
            pool.push_back(v.scalar);
        }
        if (pool.empty()) fail(e, f + " of an empty collection");
        Rational best = pool[0];
        for (const auto& r : pool) best = (f == "max") ? max(best, r) : min(best, r);
        return CValue::of(best);
      }
      if (f == "indexof") {
        arity(2);
        const auto& l = need_list(e, args[0]);
        const Rational& x = need_scalar(e, args[1]);
        auto it = std::find(l.begin(), l.end(), x);
        if (it == l.end()) fail(e, "indexof: value " + x.str() + " not in list");
        return CValue::of(Rational(static_cast<long>(it - l.begin()) + 1));
      }
      fail(e, "unknown function '" + f + "'");
    }
    case K::Index: {
      const CValue lv = eval_cexpr(*e.args[0], env);
      const auto& l = need_list(e, lv);
      long i = need_int(e, need_scalar(e, eval_cexpr(*e.args[1], env)));
      if (i < 1 || i > static_cast<long>(l.size()))
        fail(e, "index " + std::to_string(i) + " out of range 1.." + std::to_string(l.size()));
      return CValue::of(l[static_cast<std::size_t>(i - 1)]);
    }
  }
  fail(e, "malformed expression");
}

Rational eval_scalar(const CExpr& e, const ConstEnv& env) {
  CValue v = eval_cexpr(e, env);
  return need_scalar(e, v);
}

void cexpr_names(const CExpr& e, std::set<std::string>& out) {
  if (e.kind == CExpr::Kind::Name) out.insert(e.name);
  for (const auto& a : e.args) cexpr_names(*a, out);
}

}  // namespace ppad::slp
