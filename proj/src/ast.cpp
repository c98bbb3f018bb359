#include "bugsmc/ast.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "bugsmc/functions.hpp"

namespace bugsmc {

ExprPtr makeLiteral(double v) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Literal;
  e->value = v;
  return e;
}

ExprPtr makeVarRef(std::string name, std::vector<IndexExpr> indices) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::VarRef;
  e->name = std::move(name);
  e->indices = std::move(indices);
  return e;
}

ExprPtr makeUnary(std::string op, ExprPtr a) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Unary;
  e->name = std::move(op);
  e->operands = {std::move(a)};
  return e;
}

ExprPtr makeBinary(std::string op, ExprPtr a, ExprPtr b) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Binary;
  e->name = std::move(op);
  e->operands = {std::move(a), std::move(b)};
  return e;
}

ExprPtr makeCall(std::string fn, std::vector<ExprPtr> args) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Call;
  e->name = std::move(fn);
  e->operands = std::move(args);
  return e;
}

std::string formatNumber(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

// Operator precedence, matching the parser: comparisons bind loosest, then
// additive, multiplicative, unary sign, and `^` (right-associative) tightest.
int precedenceOf(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Binary: {
      const std::string& op = e.name;
      if (op == "==" || op == "!=" || op == "<" || op == "<=" || op == ">" || op == ">=") return 1;
      if (op == "+" || op == "-") return 2;
      if (op == "*" || op == "/") return 3;
      return 5;  // ^
    }
    case Expr::Kind::Unary:
      return 4;
    default:
      return 6;
  }
}

void deparseExpr(const Expr& e, std::string& out);

void deparseChild(const Expr& child, int minPrec, std::string& out) {
  const bool parens = precedenceOf(child) < minPrec;
  if (parens) out += '(';
  deparseExpr(child, out);
  if (parens) out += ')';
}

void deparseIndexInto(const IndexExpr& ix, std::string& out) {
  if (ix.isRange()) {
    deparseExpr(*ix.lo, out);
    out += ':';
    deparseExpr(*ix.hi, out);
  } else {
    deparseExpr(*ix.scalar, out);
  }
}

void deparseExpr(const Expr& e, std::string& out) {
  switch (e.kind) {
    case Expr::Kind::Literal:
      out += formatNumber(e.value);
      break;
    case Expr::Kind::VarRef:
      out += e.name;
      if (!e.indices.empty()) {
        out += '[';
        for (size_t i = 0; i < e.indices.size(); ++i) {
          if (i) out += ", ";
          deparseIndexInto(e.indices[i], out);
        }
        out += ']';
      }
      break;
    case Expr::Kind::Unary:
      out += e.name;
      deparseChild(*e.operands[0], 4, out);
      break;
    case Expr::Kind::Binary: {
      const int prec = precedenceOf(e);
      if (prec == 5) {
        // right-associative: (a^b)^c needs parens on the left
        deparseChild(*e.operands[0], 6, out);
        out += '^';
        deparseChild(*e.operands[1], 4, out);
      } else {
        // comparisons are non-associative, so a nested comparison always
        // needs parens; +,-,*,/ are left-associative
        deparseChild(*e.operands[0], prec == 1 ? 2 : prec, out);
        out += ' ';
        out += e.name;
        out += ' ';
        deparseChild(*e.operands[1], prec + 1, out);
      }
      break;
    }
    case Expr::Kind::Call:
      out += e.name;
      out += '(';
      for (size_t i = 0; i < e.operands.size(); ++i) {
        if (i) out += ", ";
        deparseExpr(*e.operands[i], out);
      }
      out += ')';
      break;
  }
}

void deparseStatements(const std::vector<Statement>& stmts, int indent, std::string& out);

void deparseStatement(const Statement& s, int indent, std::string& out) {
  const std::string pad(static_cast<size_t>(indent) * 2, ' ');
  if (const auto* d = std::get_if<Declaration>(&s.node)) {
    out += pad;
    out += d->target.name;
    if (!d->target.indices.empty()) {
      out += '[';
      for (size_t i = 0; i < d->target.indices.size(); ++i) {
        if (i) out += ", ";
        deparseIndexInto(d->target.indices[i], out);
      }
      out += ']';
    }
    if (d->stochastic) {
      out += " ~ ";
      out += d->dist.name;
      out += '(';
      for (size_t i = 0; i < d->dist.args.size(); ++i) {
        if (i) out += ", ";
        if (!d->dist.args[i].name.empty()) {
          out += d->dist.args[i].name;
          out += " = ";
        }
        deparseExpr(*d->dist.args[i].value, out);
      }
      out += ')';
    } else {
      out += " <- ";
      deparseExpr(*d->expr, out);
    }
    out += '\n';
  } else if (const auto* f = std::get_if<ForLoop>(&s.node)) {
    out += pad + "for (" + f->loopVar + " in ";
    deparseExpr(*f->lo, out);
    out += ':';
    deparseExpr(*f->hi, out);
    out += ") {\n";
    deparseStatements(f->body, indent + 1, out);
    out += pad + "}\n";
  } else {
    const auto& c = std::get<IfElse>(s.node);
    out += pad + "if (";
    deparseExpr(*c.condition, out);
    out += ") {\n";
    deparseStatements(c.thenBranch, indent + 1, out);
    if (!c.elseBranch.empty()) {
      out += pad + "} else {\n";
      deparseStatements(c.elseBranch, indent + 1, out);
    }
    out += pad + "}\n";
  }
}

void deparseStatements(const std::vector<Statement>& stmts, int indent, std::string& out) {
  for (const auto& s : stmts) deparseStatement(s, indent, out);
}

bool equalIndex(const IndexExpr& a, const IndexExpr& b) {
  if (a.isRange() != b.isRange()) return false;
  if (a.isRange()) return equal(*a.lo, *b.lo) && equal(*a.hi, *b.hi);
  return equal(*a.scalar, *b.scalar);
}

bool equalTarget(const VarTarget& a, const VarTarget& b) {
  if (a.name != b.name || a.indices.size() != b.indices.size()) return false;
  for (size_t i = 0; i < a.indices.size(); ++i)
    if (!equalIndex(a.indices[i], b.indices[i])) return false;
  return true;
}

bool equalStatements(const std::vector<Statement>& a, const std::vector<Statement>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!equal(a[i], b[i])) return false;
  return true;
}

}  // namespace

std::string deparse(const Expr& expr) {
  std::string out;
  deparseExpr(expr, out);
  return out;
}

std::string deparse(const IndexExpr& index) {
  std::string out;
  deparseIndexInto(index, out);
  return out;
}

std::string deparse(const ModelAst& ast) {
  std::string out;
  deparseStatements(ast.statements, 0, out);
  return out;
}

bool equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::Literal:
      return a.value == b.value;
    case Expr::Kind::VarRef: {
      if (a.name != b.name || a.indices.size() != b.indices.size()) return false;
      for (size_t i = 0; i < a.indices.size(); ++i)
        if (!equalIndex(a.indices[i], b.indices[i])) return false;
      return true;
    }
    default: {
      if (a.name != b.name || a.operands.size() != b.operands.size()) return false;
      for (size_t i = 0; i < a.operands.size(); ++i)
        if (!equal(*a.operands[i], *b.operands[i])) return false;
      return true;
    }
  }
}

bool equal(const Statement& a, const Statement& b) {
  if (a.node.index() != b.node.index()) return false;
  if (const auto* da = std::get_if<Declaration>(&a.node)) {
    const auto& db = std::get<Declaration>(b.node);
    if (!equalTarget(da->target, db.target) || da->stochastic != db.stochastic) return false;
    if (da->stochastic) {
      if (da->dist.name != db.dist.name || da->dist.args.size() != db.dist.args.size()) return false;
      for (size_t i = 0; i < da->dist.args.size(); ++i) {
        if (da->dist.args[i].name != db.dist.args[i].name) return false;
        if (!equal(*da->dist.args[i].value, *db.dist.args[i].value)) return false;
      }
      return true;
    }
    return equal(*da->expr, *db.expr);
  }
  if (const auto* fa = std::get_if<ForLoop>(&a.node)) {
    const auto& fb = std::get<ForLoop>(b.node);
    return fa->loopVar == fb.loopVar && equal(*fa->lo, *fb.lo) && equal(*fa->hi, *fb.hi) &&
           equalStatements(fa->body, fb.body);
  }
  const auto& ca = std::get<IfElse>(a.node);
  const auto& cb = std::get<IfElse>(b.node);
  return equal(*ca.condition, *cb.condition) && equalStatements(ca.thenBranch, cb.thenBranch) &&
         equalStatements(ca.elseBranch, cb.elseBranch);
}

bool equal(const ModelAst& a, const ModelAst& b) { return equalStatements(a.statements, b.statements); }

ExprPtr substitute(const ExprPtr& expr, const std::map<std::string, double>& env) {
  const Expr& e = *expr;
  switch (e.kind) {
    case Expr::Kind::Literal:
      return expr;
    case Expr::Kind::VarRef: {
      if (e.indices.empty()) {
        auto it = env.find(e.name);
        if (it != env.end()) return makeLiteral(it->second);
        return expr;
      }
      std::vector<IndexExpr> idx;
      idx.reserve(e.indices.size());
      for (const auto& ix : e.indices) {
        if (ix.isRange())
          idx.push_back(IndexExpr{nullptr, substitute(ix.lo, env), substitute(ix.hi, env)});
        else
          idx.push_back(IndexExpr{substitute(ix.scalar, env), nullptr, nullptr});
      }
      return makeVarRef(e.name, std::move(idx));
    }
    default: {
      std::vector<ExprPtr> ops;
      ops.reserve(e.operands.size());
      for (const auto& op : e.operands) ops.push_back(substitute(op, env));
      auto out = std::make_shared<Expr>();
      out->kind = e.kind;
      out->name = e.name;
      out->operands = std::move(ops);
      return out;
    }
  }
}

std::optional<double> evalConstExpr(const Expr& e, const std::map<std::string, double>& env) {
  switch (e.kind) {
    case Expr::Kind::Literal:
      return e.value;
    case Expr::Kind::VarRef: {
      if (!e.indices.empty()) return std::nullopt;
      auto it = env.find(e.name);
      if (it == env.end()) return std::nullopt;
      return it->second;
    }
    case Expr::Kind::Unary: {
      auto a = evalConstExpr(*e.operands[0], env);
      if (!a) return std::nullopt;
      return e.name == "-" ? -*a : *a;
    }
    case Expr::Kind::Binary: {
      auto a = evalConstExpr(*e.operands[0], env);
      auto b = evalConstExpr(*e.operands[1], env);
      if (!a || !b) return std::nullopt;
      const std::string& op = e.name;
      if (op == "+") return *a + *b;
      if (op == "-") return *a - *b;
      if (op == "*") return *a * *b;
      if (op == "/") return *a / *b;
      if (op == "^") return std::pow(*a, *b);
      if (op == "==") return *a == *b ? 1.0 : 0.0;
      if (op == "!=") return *a != *b ? 1.0 : 0.0;
      if (op == "<") return *a < *b ? 1.0 : 0.0;
      if (op == "<=") return *a <= *b ? 1.0 : 0.0;
      if (op == ">") return *a > *b ? 1.0 : 0.0;
      return *a >= *b ? 1.0 : 0.0;
    }
    case Expr::Kind::Call: {
      auto fn = findScalarFunction(e.name);
      if (!fn || fn->arity != static_cast<int>(e.operands.size())) return std::nullopt;
      double args[2] = {0.0, 0.0};
      for (size_t i = 0; i < e.operands.size(); ++i) {
        auto v = evalConstExpr(*e.operands[i], env);
        if (!v) return std::nullopt;
        args[i] = *v;
      }
      return applyScalarFunction(*fn, args[0], args[1]);
    }
  }
  return std::nullopt;
}

}  // namespace bugsmc
