#include "javai/parser.hpp"

#include <algorithm>
#include <set>

#include "lexer.hpp"
#include "overloaded.hpp"

namespace javai {

using detail::Tok;
using detail::Token;

std::string_view kind_name(ParseError::Kind kind) {
  switch (kind) {
    case ParseError::Kind::Syntax: return "ParseError";
    case ParseError::Kind::DuplicateClass: return "DuplicateClassError";
    case ParseError::Kind::MissingMain: return "MissingMainError";
    case ParseError::Kind::DuplicateParam: return "DuplicateParamError";
    case ParseError::Kind::DuplicateBinder: return "DuplicateBinderError";
    case ParseError::Kind::UnknownClass: return "UnknownClassError";
    case ParseError::Kind::Scope: return "ScopeError";
  }
  return "ParseError";
}

namespace {

std::string format_message(ParseError::Kind kind, Span span, const std::string& detail) {
  return std::string(kind_name(kind)) + " at line " + std::to_string(span.line) + ", col " +
         std::to_string(span.column) + ": " + detail;
}

}  // namespace

ParseError::ParseError(Kind kind, Span span, std::string detail, std::vector<std::string> expected,
                       std::string found)
    : std::runtime_error(format_message(kind, span, detail)),
      kind_(kind),
      span_(span),
      detail_(std::move(detail)),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

namespace {

constexpr int kMaxNesting = 256;

enum class Body { Main, Procedure };

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  SourceProgram program() {
    SourceProgram prog;
    while (at(Tok::KwClass)) {
      ClassDef c = class_def();
      if (prog.find_class(c.name)) {
        throw ParseError(ParseError::Kind::DuplicateClass, c.span,
                         "class '" + c.name + "' is already defined");
      }
      prog.classes.push_back(std::move(c));
    }
    if (at(Tok::End)) {
      throw ParseError(ParseError::Kind::MissingMain, cur().span, "program has no 'void main()'");
    }
    if (!at(Tok::KwVoid)) fail({"'class'", "'void'"});
    prog.main = main_body();
    if (!at(Tok::End)) fail({"end of input"});
    return prog;
  }

 private:
  // -- token plumbing -------------------------------------------------------

  const Token& cur() const { return toks_[pos_]; }
  const Token& look(std::size_t ahead) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool at(Tok k) const { return cur().kind == k; }

  Token take() {
    Token t = cur();
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }

  bool accept(Tok k) {
    if (!at(k)) return false;
    take();
    return true;
  }

  Token expect(Tok k) {
    if (!at(k)) fail({detail::describe(k)});
    return take();
  }

  Token expect_ident() { return expect(Tok::Ident); }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    std::string what = "expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i > 0) what += i + 1 == expected.size() ? " or " : ", ";
      what += expected[i];
    }
    std::string found = detail::describe(cur());
    what += ", found " + found;
    throw ParseError(ParseError::Kind::Syntax, cur().span, what, std::move(expected),
                     std::move(found));
  }

  struct DepthGuard {
    explicit DepthGuard(Parser& p) : p(p) {
      if (++p.depth_ > kMaxNesting) {
        throw ParseError(ParseError::Kind::Syntax, p.cur().span, "nesting too deep");
      }
    }
    ~DepthGuard() { --p.depth_; }
    Parser& p;
  };

  // -- declarations ---------------------------------------------------------

  ClassDef class_def() {
    Span span = expect(Tok::KwClass).span;
    std::string name = expect_ident().text;
    expect(Tok::LBrace);
    DeclPtr decl;
    if (at(Tok::RBrace)) {
      decl = make_decl(Decl::Empty{}, cur().span);
    } else {
      decl = dform();
    }
    if (!at(Tok::RBrace)) fail({"'&'", "'(+)'", "'}'"});
    take();
    return ClassDef{std::move(name), std::move(decl), span};
  }

  DeclPtr dform() {
    DepthGuard guard(*this);
    DeclPtr left = dconj();
    if (at(Tok::ChoiceOp)) {
      Span span = take().span;
      DeclPtr right = dform();
      return make_decl(Decl::ChoiceDisj{std::move(left), std::move(right)}, span);
    }
    return left;
  }

  DeclPtr dconj() {
    DepthGuard guard(*this);
    DeclPtr left = datom();
    if (at(Tok::Amp)) {
      Span span = take().span;
      DeclPtr right = dconj();
      return make_decl(Decl::Conj{std::move(left), std::move(right)}, span);
    }
    return left;
  }

  DeclPtr datom() {
    if (accept(Tok::LParen)) {
      DeclPtr inner = dform();
      expect(Tok::RParen);
      return inner;
    }
    if (!at(Tok::Ident)) fail({"identifier", "'('"});
    Token name = take();
    if (accept(Tok::Assign)) {
      ExprPtr init = expr();
      return make_decl(Decl::FieldInit{name.text, std::move(init)}, name.span);
    }
    if (accept(Tok::LParen)) {
      std::vector<std::string> params;
      if (!at(Tok::RParen)) {
        params.push_back(expect_ident().text);
        while (accept(Tok::Comma)) params.push_back(expect_ident().text);
      }
      if (!at(Tok::RParen)) fail({"','", "')'"});
      take();
      if (!at(Tok::Define)) fail({"':='"});
      take();
      // Parameters are checked before the body so duplicate-parameter errors
      // win over errors inside the body.
      desugar_procedure(name.text, params, skip_goal(), name.span);
      params_ = std::set<std::string>(params.begin(), params.end());
      GoalPtr body = goal(Body::Procedure);
      params_.clear();
      return desugar_procedure(name.text, std::move(params), std::move(body), name.span);
    }
    fail({"'='", "'('"});
  }

  // -- goals ----------------------------------------------------------------

  GoalPtr main_body() {
    expect(Tok::KwVoid);
    if (!(at(Tok::Ident) && cur().text == "main")) fail({"'main'"});
    take();
    expect(Tok::LParen);
    expect(Tok::RParen);
    expect(Tok::LBrace);
    in_main_ = true;
    GoalPtr g = goal(Body::Main);
    in_main_ = false;
    if (!at(Tok::RBrace)) fail({"';'", "'}'"});
    take();
    return g;
  }

  GoalPtr goal(Body body) {
    DepthGuard guard(*this);
    GoalPtr first = gatom(body);
    if (at(Tok::Semi)) {
      Span span = take().span;
      GoalPtr rest = goal(body);
      return make_goal(Goal::Seq{std::move(first), std::move(rest)}, span);
    }
    return first;
  }

  [[noreturn]] void scope_error(Span span, const std::string& what) const {
    throw ParseError(ParseError::Kind::Scope, span, what);
  }

  std::vector<ExprPtr> args() {
    expect(Tok::LParen);
    std::vector<ExprPtr> out;
    if (!at(Tok::RParen)) {
      out.push_back(expr());
      while (accept(Tok::Comma)) out.push_back(expr());
    }
    if (!at(Tok::RParen)) fail({"','", "')'"});
    take();
    return out;
  }

  // After `target .` has been consumed: member call or member assignment.
  GoalPtr member_goal(Target target, Span span) {
    Token member = expect_ident();
    if (at(Tok::LParen)) {
      return make_goal(Goal::Call{std::move(target), member.text, args()}, span);
    }
    if (accept(Tok::Assign)) {
      return make_goal(Goal::Assign{std::move(target), member.text, expr()}, span);
    }
    fail({"'('", "'='"});
  }

  GoalPtr gatom(Body body) {
    DepthGuard guard(*this);
    Span span = cur().span;
    switch (cur().kind) {
      case Tok::KwSkip:
        take();
        return make_goal(Goal::Skip{}, span);
      case Tok::KwPrint: {
        take();
        expect(Tok::LParen);
        ExprPtr e = expr();
        expect(Tok::RParen);
        return make_goal(Goal::Print{std::move(e)}, span);
      }
      case Tok::KwIf: {
        take();
        ExprPtr cond = expr();
        expect(Tok::KwThen);
        GoalPtr then_branch = gatom(body);
        expect(Tok::KwElse);
        GoalPtr else_branch = gatom(body);
        return make_goal(Goal::If{std::move(cond), std::move(then_branch), std::move(else_branch)},
                         span);
      }
      case Tok::LBrace: {
        take();
        GoalPtr inner = goal(body);
        if (!at(Tok::RBrace)) fail({"';'", "'}'"});
        take();
        return inner;
      }
      case Tok::KwThis: {
        if (body == Body::Main) scope_error(span, "'this' is not available in main");
        take();
        expect(Tok::Dot);
        return member_goal(SelfTarget{}, span);
      }
      case Tok::Ident: {
        Token name = take();
        if (accept(Tok::Dot)) return member_goal(NamedTarget{name.text}, span);
        if (at(Tok::LParen)) {
          if (body == Body::Main) {
            scope_error(span, "call to '" + name.text + "' in main must name its object (o." +
                                  name.text + "(...))");
          }
          return make_goal(Goal::Call{SelfTarget{}, name.text, args()}, span);
        }
        if (accept(Tok::Assign)) {
          if (accept(Tok::KwNew)) {
            Token cls = expect_ident();
            if (params_.count(name.text)) {
              throw ParseError(ParseError::Kind::DuplicateBinder, span,
                               "binder '" + name.text + "' shadows a procedure parameter");
            }
            return make_goal(Goal::New{name.text, cls.text}, span);
          }
          if (body == Body::Main) {
            scope_error(span, "assignment to '" + name.text + "' in main must name its object (o." +
                                  name.text + " = ...)");
          }
          return make_goal(Goal::Assign{SelfTarget{}, name.text, expr()}, span);
        }
        fail({"'.'", "'('", "'='"});
      }
      default:
        fail({"identifier", "'this'", "'print'", "'if'", "'skip'", "'{'"});
    }
  }

  // -- expressions ----------------------------------------------------------

  ExprPtr expr() {
    DepthGuard guard(*this);
    return binary_level(0);
  }

  struct Level {
    std::vector<std::pair<Tok, BinaryOp>> ops;
  };

  static const std::vector<Level>& levels() {
    static const std::vector<Level> table = {
        {{{Tok::OrOr, BinaryOp::Or}}},
        {{{Tok::AndAnd, BinaryOp::And}}},
        {{{Tok::EqEq, BinaryOp::Eq}, {Tok::NotEq, BinaryOp::Ne}}},
        {{{Tok::Less, BinaryOp::Lt},
          {Tok::LessEq, BinaryOp::Le},
          {Tok::Greater, BinaryOp::Gt},
          {Tok::GreaterEq, BinaryOp::Ge}}},
        {{{Tok::Plus, BinaryOp::Add}, {Tok::Minus, BinaryOp::Sub}}},
        {{{Tok::Star, BinaryOp::Mul}, {Tok::Slash, BinaryOp::Div}}},
    };
    return table;
  }

  ExprPtr binary_level(std::size_t level) {
    if (level == levels().size()) return unary();
    ExprPtr lhs = binary_level(level + 1);
    for (;;) {
      const auto& ops = levels()[level].ops;
      auto it = std::find_if(ops.begin(), ops.end(), [&](const auto& p) { return at(p.first); });
      if (it == ops.end()) return lhs;
      Token op = take();
      if (!starts_expr()) {
        std::string found = detail::describe(cur());
        throw ParseError(ParseError::Kind::Syntax, op.span,
                         "expected expression after '" + std::string(op_text(it->second)) +
                             "', found " + found,
                         {"expression"}, found);
      }
      Span span = op.span;
      ExprPtr rhs = binary_level(level + 1);
      lhs = make_expr(Expr::Binary{it->second, std::move(lhs), std::move(rhs)}, span);
    }
  }

  bool starts_expr() const {
    switch (cur().kind) {
      case Tok::Int:
      case Tok::KwTrue:
      case Tok::KwFalse:
      case Tok::String:
      case Tok::KwThis:
      case Tok::Ident:
      case Tok::LParen:
      case Tok::Minus:
      case Tok::Bang: return true;
      default: return false;
    }
  }

  ExprPtr unary() {
    DepthGuard guard(*this);
    Span span = cur().span;
    if (accept(Tok::Minus)) return make_expr(Expr::Unary{UnaryOp::Neg, unary()}, span);
    if (accept(Tok::Bang)) return make_expr(Expr::Unary{UnaryOp::Not, unary()}, span);
    return primary();
  }

  ExprPtr primary() {
    Span span = cur().span;
    switch (cur().kind) {
      case Tok::Int: return make_expr(Expr::IntLit{take().int_value}, span);
      case Tok::KwTrue: take(); return make_expr(Expr::BoolLit{true}, span);
      case Tok::KwFalse: take(); return make_expr(Expr::BoolLit{false}, span);
      case Tok::String: return make_expr(Expr::StrLit{take().text}, span);
      case Tok::KwThis: {
        if (in_main_) scope_error(span, "'this' is not available in main");
        take();
        expect(Tok::Dot);
        return make_expr(Expr::QualifiedFieldRef{SelfTarget{}, expect_ident().text}, span);
      }
      case Tok::Ident: {
        Token name = take();
        if (accept(Tok::Dot)) {
          return make_expr(Expr::QualifiedFieldRef{NamedTarget{name.text}, expect_ident().text},
                           span);
        }
        return make_expr(Expr::FieldRef{name.text}, span);
      }
      case Tok::LParen: {
        take();
        ExprPtr inner = expr();
        expect(Tok::RParen);
        return inner;
      }
      default:
        fail({"expression"});
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int depth_ = 0;
  bool in_main_ = false;
  std::set<std::string> params_;
};

// -- static checks ------------------------------------------------------------

void check_classes(const Goal& g, const SourceProgram& prog) {
  std::visit(overloaded{
                 [&](const Goal::New& n) {
                   if (!prog.find_class(n.class_name)) {
                     throw ParseError(ParseError::Kind::UnknownClass, g.span,
                                      "unknown class '" + n.class_name + "'");
                   }
                 },
                 [&](const Goal::Seq& s) {
                   check_classes(*s.first, prog);
                   check_classes(*s.second, prog);
                 },
                 [&](const Goal::If& i) {
                   check_classes(*i.then_branch, prog);
                   check_classes(*i.else_branch, prog);
                 },
                 [](const auto&) {},
             },
             g.node);
}

void check_classes(const Decl& d, const SourceProgram& prog) {
  std::visit(overloaded{
                 [&](const Decl::ProcDecl& p) { check_classes(*p.body, prog); },
                 [&](const Decl::Forall& f) { check_classes(*f.body, prog); },
                 [&](const Decl::Conj& c) {
                   check_classes(*c.left, prog);
                   check_classes(*c.right, prog);
                 },
                 [&](const Decl::ChoiceDisj& c) {
                   check_classes(*c.left, prog);
                   check_classes(*c.right, prog);
                 },
                 [](const auto&) {},
             },
             d.node);
}

}  // namespace

SourceProgram parse_program(std::string_view source) {
  SourceProgram prog = Parser(detail::tokenize(source)).program();
  for (const auto& c : prog.classes) check_classes(*c.decl, prog);
  check_classes(*prog.main, prog);
  return prog;
}

}  // namespace javai
