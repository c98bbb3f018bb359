#include "bugsmc/parser.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <set>

#include "bugsmc/errors.hpp"

namespace bugsmc {

namespace {

enum class Tok {
  End,
  Ident,
  Number,
  Tilde,      // ~
  Assign,     // <- or =
  LParen,
  RParen,
  LBrace,
  RBrace,
  LBracket,
  RBracket,
  Comma,
  Colon,
  Plus,
  Minus,
  Star,
  Slash,
  Caret,
  Compare,  // == != < <= > >=
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  double number = 0.0;
  int line = 1, column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skipWhitespaceAndComments();
    Token t;
    t.line = line_;
    t.column = column_;
    if (pos_ >= src_.size()) return t;

    const char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '.') {
      size_t start = pos_;
      while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                    src_[pos_] == '_' || src_[pos_] == '.')) {
        if (src_[pos_] == '.' && pos_ + 1 < src_.size() &&
            std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])) && pos_ == start)
          break;  // .5 is a number, not an identifier
        advance();
      }
      if (pos_ == start) return lexNumber(t);
      t.kind = Tok::Ident;
      t.text = std::string(src_.substr(start, pos_ - start));
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return lexNumber(t);

    advance();
    switch (c) {
      case '~': t.kind = Tok::Tilde; t.text = "~"; return t;
      case '(': t.kind = Tok::LParen; t.text = "("; return t;
      case ')': t.kind = Tok::RParen; t.text = ")"; return t;
      case '{': t.kind = Tok::LBrace; t.text = "{"; return t;
      case '}': t.kind = Tok::RBrace; t.text = "}"; return t;
      case '[': t.kind = Tok::LBracket; t.text = "["; return t;
      case ']': t.kind = Tok::RBracket; t.text = "]"; return t;
      case ',': t.kind = Tok::Comma; t.text = ","; return t;
      case ':': t.kind = Tok::Colon; t.text = ":"; return t;
      case '+': t.kind = Tok::Plus; t.text = "+"; return t;
      case '-': t.kind = Tok::Minus; t.text = "-"; return t;
      case '*': t.kind = Tok::Star; t.text = "*"; return t;
      case '/': t.kind = Tok::Slash; t.text = "/"; return t;
      case '^': t.kind = Tok::Caret; t.text = "^"; return t;
      case '=':
        if (peek() == '=') { advance(); t.kind = Tok::Compare; t.text = "=="; return t; }
        t.kind = Tok::Assign;
        t.text = "=";
        return t;
      case '<':
        if (peek() == '-') { advance(); t.kind = Tok::Assign; t.text = "<-"; return t; }
        if (peek() == '=') { advance(); t.kind = Tok::Compare; t.text = "<="; return t; }
        t.kind = Tok::Compare;
        t.text = "<";
        return t;
      case '>':
        if (peek() == '=') { advance(); t.kind = Tok::Compare; t.text = ">="; return t; }
        t.kind = Tok::Compare;
        t.text = ">";
        return t;
      case '!':
        if (peek() == '=') { advance(); t.kind = Tok::Compare; t.text = "!="; return t; }
        throw ParseError("unexpected character '!'", t.line, t.column);
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", t.line, t.column);
    }
  }

 private:
  char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skipWhitespaceAndComments() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  Token lexNumber(Token t) {
    size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      advance();
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      size_t mark = pos_;
      advance();
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) advance();
      if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
      } else {
        pos_ = mark;  // "1e" followed by non-digit: the 'e' is not an exponent
      }
    }
    std::string_view slice = src_.substr(start, pos_ - start);
    if (slice.empty() || slice == ".")
      throw ParseError("malformed number", t.line, t.column);
    double value = 0.0;
    auto res = std::from_chars(slice.data(), slice.data() + slice.size(), value);
    if (res.ec != std::errc() || res.ptr != slice.data() + slice.size())
      throw ParseError("malformed number '" + std::string(slice) + "'", t.line, t.column);
    t.kind = Tok::Number;
    t.number = value;
    t.text = std::string(slice);
    return t;
  }

  std::string_view src_;
  size_t pos_ = 0;
  int line_ = 1, column_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lexer_(src) { bump(); }

  ModelAst parseModel() {
    ModelAst ast;
    // optional `model { ... }` wrapper
    if (cur_.kind == Tok::Ident && cur_.text == "model") {
      bump();
      expect(Tok::LBrace, "'{' after 'model'");
      ast.statements = parseStatementsUntil(Tok::RBrace);
      expect(Tok::RBrace, "'}'");
    } else {
      ast.statements = parseStatementsUntil(Tok::End);
    }
    if (cur_.kind != Tok::End)
      throw ParseError("unexpected token '" + cur_.text + "' after model body", cur_.line, cur_.column);
    if (ast.statements.empty())
      throw ParseError("model contains no declarations", cur_.line, cur_.column);
    return ast;
  }

  NodeSpec parseNodeSpec() {
    if (cur_.kind != Tok::Ident)
      throw ParseError("expected a variable name, got '" + cur_.text + "'", cur_.line, cur_.column);
    NodeSpec spec;
    spec.name = cur_.text;
    bump();
    if (cur_.kind == Tok::LBracket) {
      bump();
      while (true) {
        int lo = parseSpecInt();
        int hi = lo;
        if (cur_.kind == Tok::Colon) {
          bump();
          hi = parseSpecInt();
        }
        spec.ranges.emplace_back(lo, hi);
        if (cur_.kind == Tok::Comma) {
          bump();
          continue;
        }
        break;
      }
      expect(Tok::RBracket, "']'");
    }
    if (cur_.kind != Tok::End)
      throw ParseError("unexpected token '" + cur_.text + "' in node name", cur_.line, cur_.column);
    return spec;
  }

 private:
  void bump() {
    if (pending_) {
      cur_ = pendingTok_;
      pending_ = false;
    } else {
      cur_ = lexer_.next();
    }
  }

  void expect(Tok kind, const char* what) {
    if (cur_.kind != kind)
      throw ParseError(std::string("expected ") + what + ", got '" +
                           (cur_.kind == Tok::End ? "end of input" : cur_.text) + "'",
                       cur_.line, cur_.column);
    bump();
  }

  int parseSpecInt() {
    if (cur_.kind != Tok::Number)
      throw ParseError("expected an integer index, got '" + cur_.text + "'", cur_.line, cur_.column);
    double v = cur_.number;
    if (v != std::floor(v))
      throw ParseError("index must be an integer, got '" + cur_.text + "'", cur_.line, cur_.column);
    bump();
    return static_cast<int>(v);
  }

  std::vector<Statement> parseStatementsUntil(Tok stop) {
    std::vector<Statement> out;
    while (cur_.kind != stop && cur_.kind != Tok::End) out.push_back(parseStatement());
    return out;
  }

  Statement parseStatement() {
    if (cur_.kind == Tok::Ident && cur_.text == "for") return Statement{parseForLoop()};
    if (cur_.kind == Tok::Ident && cur_.text == "if") return Statement{parseIfElse()};
    return Statement{parseDeclaration()};
  }

  ForLoop parseForLoop() {
    ForLoop loop;
    loop.line = cur_.line;
    loop.column = cur_.column;
    bump();  // for
    expect(Tok::LParen, "'(' after 'for'");
    if (cur_.kind != Tok::Ident)
      throw ParseError("expected loop variable name", cur_.line, cur_.column);
    loop.loopVar = cur_.text;
    bump();
    if (cur_.kind != Tok::Ident || cur_.text != "in")
      throw ParseError("expected 'in' in for-loop header", cur_.line, cur_.column);
    bump();
    loop.lo = parseExpr();
    expect(Tok::Colon, "':' in loop range");
    loop.hi = parseExpr();
    expect(Tok::RParen, "')'");
    expect(Tok::LBrace, "'{' to open loop body");
    loop.body = parseStatementsUntil(Tok::RBrace);
    expect(Tok::RBrace, "'}'");
    return loop;
  }

  IfElse parseIfElse() {
    IfElse branch;
    branch.line = cur_.line;
    branch.column = cur_.column;
    bump();  // if
    expect(Tok::LParen, "'(' after 'if'");
    branch.condition = parseExpr();
    expect(Tok::RParen, "')'");
    expect(Tok::LBrace, "'{' to open if-branch");
    branch.thenBranch = parseStatementsUntil(Tok::RBrace);
    expect(Tok::RBrace, "'}'");
    if (cur_.kind == Tok::Ident && cur_.text == "else") {
      bump();
      expect(Tok::LBrace, "'{' to open else-branch");
      branch.elseBranch = parseStatementsUntil(Tok::RBrace);
      expect(Tok::RBrace, "'}'");
    }
    return branch;
  }

  Declaration parseDeclaration() {
    Declaration decl;
    decl.line = cur_.line;
    decl.column = cur_.column;
    if (cur_.kind != Tok::Ident)
      throw ParseError("expected a declaration, got '" + cur_.text + "'", cur_.line, cur_.column);
    decl.target.name = cur_.text;
    bump();
    if (cur_.kind == Tok::LBracket) decl.target.indices = parseIndexList();

    if (cur_.kind == Tok::Tilde) {
      bump();
      decl.stochastic = true;
      decl.dist = parseDistributionCall();
    } else if (cur_.kind == Tok::Assign) {
      bump();
      decl.stochastic = false;
      decl.expr = parseExpr();
    } else {
      throw ParseError("expected '~' or '<-' in declaration", cur_.line, cur_.column);
    }
    return decl;
  }

  DistributionCall parseDistributionCall() {
    if (cur_.kind != Tok::Ident)
      throw ParseError("expected a distribution name after '~'", cur_.line, cur_.column);
    DistributionCall call;
    call.name = cur_.text;
    bump();
    expect(Tok::LParen, "'(' after distribution name");
    std::set<std::string> seenNames;
    bool sawNamed = false;
    if (cur_.kind != Tok::RParen) {
      while (true) {
        DistArg arg;
        if (cur_.kind == Tok::Ident && peekIsAssign()) {
          arg.name = cur_.text;
          if (!seenNames.insert(arg.name).second)
            throw ParseError("duplicate named argument '" + arg.name + "'", cur_.line, cur_.column);
          sawNamed = true;
          bump();  // name
          bump();  // =
        } else if (sawNamed) {
          throw ParseError("positional argument after named argument", cur_.line, cur_.column);
        }
        arg.value = parseExpr();
        call.args.push_back(std::move(arg));
        if (cur_.kind == Tok::Comma) {
          bump();
          continue;
        }
        break;
      }
    }
    expect(Tok::RParen, "')'");
    if (cur_.kind == Tok::Ident && (cur_.text == "T" || cur_.text == "I"))
      throw ParseError("truncation/censoring syntax " + cur_.text + "(...) is not supported",
                       cur_.line, cur_.column);
    return call;
  }

  // The lexer has no lookahead, so checking for `name =` requires peeking at
  // the next token; keep a one-token buffer for that case.
  bool peekIsAssign() {
    if (pending_) return pendingTok_.kind == Tok::Assign && pendingTok_.text == "=";
    pendingTok_ = lexer_.next();
    pending_ = true;
    return pendingTok_.kind == Tok::Assign && pendingTok_.text == "=";
  }

  std::vector<IndexExpr> parseIndexList() {
    expect(Tok::LBracket, "'['");
    std::vector<IndexExpr> out;
    if (cur_.kind == Tok::RBracket)
      throw ParseError("empty index list", cur_.line, cur_.column);
    while (true) {
      IndexExpr ix;
      ix.scalar = parseExpr();
      if (cur_.kind == Tok::Colon) {
        bump();
        ix.lo = ix.scalar;
        ix.scalar = nullptr;
        ix.hi = parseExpr();
      }
      out.push_back(std::move(ix));
      if (cur_.kind == Tok::Comma) {
        bump();
        continue;
      }
      break;
    }
    expect(Tok::RBracket, "']'");
    return out;
  }

  ExprPtr parseExpr() { return parseComparison(); }

  ExprPtr parseComparison() {
    ExprPtr lhs = parseAdditive();
    if (cur_.kind == Tok::Compare) {
      std::string op = cur_.text;
      bump();
      ExprPtr rhs = parseAdditive();
      return makeBinary(std::move(op), std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  ExprPtr parseAdditive() {
    ExprPtr lhs = parseMultiplicative();
    while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
      std::string op = cur_.text;
      bump();
      lhs = makeBinary(std::move(op), std::move(lhs), parseMultiplicative());
    }
    return lhs;
  }

  ExprPtr parseMultiplicative() {
    ExprPtr lhs = parseUnary();
    while (cur_.kind == Tok::Star || cur_.kind == Tok::Slash) {
      std::string op = cur_.text;
      bump();
      lhs = makeBinary(std::move(op), std::move(lhs), parseUnary());
    }
    return lhs;
  }

  // unary minus binds looser than '^': -x^2 parses as -(x^2)
  ExprPtr parseUnary() {
    if (cur_.kind == Tok::Minus) {
      bump();
      return makeUnary("-", parseUnary());
    }
    if (cur_.kind == Tok::Plus) {
      bump();
      return parseUnary();
    }
    return parsePower();
  }

  ExprPtr parsePower() {
    ExprPtr base = parsePrimary();
    if (cur_.kind == Tok::Caret) {
      bump();
      return makeBinary("^", std::move(base), parseUnary());
    }
    return base;
  }

  ExprPtr parsePrimary() {
    if (cur_.kind == Tok::Number) {
      double v = cur_.number;
      bump();
      return makeLiteral(v);
    }
    if (cur_.kind == Tok::LParen) {
      bump();
      ExprPtr inner = parseExpr();
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (cur_.kind == Tok::Ident) {
      std::string name = cur_.text;
      bump();
      if (cur_.kind == Tok::LParen) {
        bump();
        std::vector<ExprPtr> args;
        if (cur_.kind != Tok::RParen) {
          while (true) {
            args.push_back(parseExpr());
            if (cur_.kind == Tok::Comma) {
              bump();
              continue;
            }
            break;
          }
        }
        expect(Tok::RParen, "')'");
        return makeCall(std::move(name), std::move(args));
      }
      if (cur_.kind == Tok::LBracket) return makeVarRef(std::move(name), parseIndexList());
      return makeVarRef(std::move(name));
    }
    throw ParseError("expected an expression, got '" +
                         (cur_.kind == Tok::End ? "end of input" : cur_.text) + "'",
                     cur_.line, cur_.column);
  }

  Lexer lexer_;
  Token cur_;
  Token pendingTok_;
  bool pending_ = false;
};

}  // namespace

ModelAst parseModel(std::string_view text) {
  Parser parser(text);
  return parser.parseModel();
}

NodeSpec parseNodeSpec(std::string_view text) {
  Parser parser(text);
  return parser.parseNodeSpec();
}

}  // namespace bugsmc
