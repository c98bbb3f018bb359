#pragma once

//! Abstract syntax tree for the BUGS-dialect model language, plus the
//! canonical deparser and structural equality used by round-trip tests.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace bugsmc {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// One entry inside var[...]: either a scalar expression or an a:b range.
struct IndexExpr {
  ExprPtr scalar;  // null when this is a range
  ExprPtr lo, hi;  // null when this is a scalar index
  bool isRange() const { return lo != nullptr; }
};

struct Expr {
  enum class Kind { Literal, VarRef, Unary, Binary, Call };

  Kind kind = Kind::Literal;
  double value = 0.0;              // Literal
  std::string name;                // VarRef: variable; Call: function; Unary/Binary: operator
  std::vector<IndexExpr> indices;  // VarRef only
  std::vector<ExprPtr> operands;   // Unary: 1, Binary: 2, Call: any
};

ExprPtr makeLiteral(double v);
ExprPtr makeVarRef(std::string name, std::vector<IndexExpr> indices = {});
ExprPtr makeUnary(std::string op, ExprPtr a);
ExprPtr makeBinary(std::string op, ExprPtr a, ExprPtr b);
ExprPtr makeCall(std::string fn, std::vector<ExprPtr> args);

struct DistArg {
  std::string name;  // empty for positional arguments
  ExprPtr value;
};

struct DistributionCall {
  std::string name;
  std::vector<DistArg> args;
};

struct VarTarget {
  std::string name;
  std::vector<IndexExpr> indices;
};

struct Declaration {
  VarTarget target;
  bool stochastic = false;
  DistributionCall dist;  // stochastic declarations
  ExprPtr expr;           // deterministic declarations
  int line = 0, column = 0;
};

struct Statement;

struct ForLoop {
  std::string loopVar;
  ExprPtr lo, hi;
  std::vector<Statement> body;
  int line = 0, column = 0;
};

struct IfElse {
  ExprPtr condition;
  std::vector<Statement> thenBranch;
  std::vector<Statement> elseBranch;  // may be empty
  int line = 0, column = 0;
};

struct Statement {
  std::variant<Declaration, ForLoop, IfElse> node;
};

struct ModelAst {
  std::vector<Statement> statements;
};

// Canonical text; parse(deparse(ast)) is structurally identical to ast.
std::string deparse(const ModelAst& ast);
std::string deparse(const Expr& expr);
std::string deparse(const IndexExpr& index);

bool equal(const ModelAst& a, const ModelAst& b);
bool equal(const Expr& a, const Expr& b);
bool equal(const Statement& a, const Statement& b);

// Shortest decimal text that round-trips to the same double.
std::string formatNumber(double v);

// Replaces free occurrences of the named scalar variables with literal values.
// Used when loop bodies are expanded against concrete loop indices.
ExprPtr substitute(const ExprPtr& expr, const std::map<std::string, double>& env);

// Evaluates an expression containing only literals, known functions, and
// variables present in `env`. Returns nullopt if any other variable appears.
std::optional<double> evalConstExpr(const Expr& expr,
                                    const std::map<std::string, double>& env);

}  // namespace bugsmc
