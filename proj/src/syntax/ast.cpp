#include "javai/ast.hpp"

#include <algorithm>
#include <set>

#include "javai/parser.hpp"
#include "overloaded.hpp"

namespace javai {

namespace {

std::string escape_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

}  // namespace

std::string render_value(const Value& v) {
  return std::visit(overloaded{
                        [](std::int64_t i) { return std::to_string(i); },
                        [](bool b) { return std::string(b ? "true" : "false"); },
                        [](const std::string& s) { return s; },
                        [](const ObjRef& r) { return r.object; },
                    },
                    v);
}

std::string value_literal(const Value& v) {
  if (const auto* s = std::get_if<std::string>(&v)) return escape_string(*s);
  if (const auto* r = std::get_if<ObjRef>(&v)) return "@" + r->object;
  return render_value(v);
}

std::string_view op_text(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::And: return "&&";
    case BinaryOp::Or: return "||";
  }
  return "?";
}

std::string_view op_text(UnaryOp op) { return op == UnaryOp::Neg ? "-" : "!"; }

const ClassDef* SourceProgram::find_class(std::string_view name) const {
  auto it = std::find_if(classes.begin(), classes.end(),
                         [&](const ClassDef& c) { return c.name == name; });
  return it == classes.end() ? nullptr : &*it;
}

ExprPtr make_expr(Expr::Node node, Span span) {
  return std::make_shared<const Expr>(Expr{std::move(node), span});
}
GoalPtr make_goal(Goal::Node node, Span span) {
  return std::make_shared<const Goal>(Goal{std::move(node), span});
}
DeclPtr make_decl(Decl::Node node, Span span) {
  return std::make_shared<const Decl>(Decl{std::move(node), span});
}

ExprPtr int_lit(std::int64_t v) { return make_expr(Expr::IntLit{v}); }
ExprPtr bool_lit(bool v) { return make_expr(Expr::BoolLit{v}); }
ExprPtr str_lit(std::string v) { return make_expr(Expr::StrLit{std::move(v)}); }
ExprPtr field_ref(std::string name) { return make_expr(Expr::FieldRef{std::move(name)}); }

ExprPtr literal_of(const Value& v) {
  return std::visit(overloaded{
                        [](std::int64_t i) { return int_lit(i); },
                        [](bool b) { return bool_lit(b); },
                        [](const std::string& s) { return str_lit(s); },
                        [](const ObjRef& r) { return make_expr(Expr::ObjLit{r.object}); },
                    },
                    v);
}

GoalPtr skip_goal() { return make_goal(Goal::Skip{}); }
GoalPtr seq_goal(GoalPtr first, GoalPtr second) {
  return make_goal(Goal::Seq{std::move(first), std::move(second)});
}
GoalPtr print_goal(ExprPtr arg) { return make_goal(Goal::Print{std::move(arg)}); }

DeclPtr field_init(std::string name, ExprPtr init) {
  return make_decl(Decl::FieldInit{std::move(name), std::move(init)});
}
DeclPtr conj(DeclPtr left, DeclPtr right) {
  return make_decl(Decl::Conj{std::move(left), std::move(right)});
}
DeclPtr choice(DeclPtr left, DeclPtr right) {
  return make_decl(Decl::ChoiceDisj{std::move(left), std::move(right)});
}
DeclPtr empty_decl() { return make_decl(Decl::Empty{}); }

DeclPtr desugar_procedure(std::string name, std::vector<std::string> params, GoalPtr body,
                          Span span) {
  std::set<std::string> seen;
  for (const auto& p : params) {
    if (!seen.insert(p).second) {
      throw ParseError(ParseError::Kind::DuplicateParam, span,
                       "duplicate parameter '" + p + "' in procedure '" + name + "'");
    }
  }
  DeclPtr d = make_decl(Decl::ProcDecl{std::move(name), params, std::move(body)}, span);
  for (auto it = params.rbegin(); it != params.rend(); ++it) {
    d = make_decl(Decl::Forall{*it, std::move(d)}, span);
  }
  return d;
}

// ---------------------------------------------------------------------------
// Structural equality
// ---------------------------------------------------------------------------

namespace {

bool eq(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return a == b;
  return structurally_equal(*a, *b);
}
bool eq(const GoalPtr& a, const GoalPtr& b) {
  if (!a || !b) return a == b;
  return structurally_equal(*a, *b);
}
bool eq(const DeclPtr& a, const DeclPtr& b) {
  if (!a || !b) return a == b;
  return structurally_equal(*a, *b);
}
bool eq(const std::vector<ExprPtr>& a, const std::vector<ExprPtr>& b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end(),
                    [](const ExprPtr& x, const ExprPtr& y) { return eq(x, y); });
}

}  // namespace

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      overloaded{
          [&](const Expr::IntLit& x) { return x.value == std::get<Expr::IntLit>(b.node).value; },
          [&](const Expr::BoolLit& x) { return x.value == std::get<Expr::BoolLit>(b.node).value; },
          [&](const Expr::StrLit& x) { return x.value == std::get<Expr::StrLit>(b.node).value; },
          [&](const Expr::FieldRef& x) { return x.name == std::get<Expr::FieldRef>(b.node).name; },
          [&](const Expr::QualifiedFieldRef& x) {
            const auto& y = std::get<Expr::QualifiedFieldRef>(b.node);
            return x.object == y.object && x.field == y.field;
          },
          [&](const Expr::Binary& x) {
            const auto& y = std::get<Expr::Binary>(b.node);
            return x.op == y.op && eq(x.lhs, y.lhs) && eq(x.rhs, y.rhs);
          },
          [&](const Expr::Unary& x) {
            const auto& y = std::get<Expr::Unary>(b.node);
            return x.op == y.op && eq(x.operand, y.operand);
          },
          [&](const Expr::ObjLit& x) { return x.object == std::get<Expr::ObjLit>(b.node).object; },
      },
      a.node);
}

bool structurally_equal(const Goal& a, const Goal& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(overloaded{
                        [&](const Goal::Call& x) {
                          const auto& y = std::get<Goal::Call>(b.node);
                          return x.target == y.target && x.proc == y.proc && eq(x.args, y.args);
                        },
                        [&](const Goal::Assign& x) {
                          const auto& y = std::get<Goal::Assign>(b.node);
                          return x.target == y.target && x.field == y.field && eq(x.value, y.value);
                        },
                        [&](const Goal::Seq& x) {
                          const auto& y = std::get<Goal::Seq>(b.node);
                          return eq(x.first, y.first) && eq(x.second, y.second);
                        },
                        [&](const Goal::New& x) {
                          const auto& y = std::get<Goal::New>(b.node);
                          return x.binder == y.binder && x.class_name == y.class_name;
                        },
                        [&](const Goal::Print& x) { return eq(x.arg, std::get<Goal::Print>(b.node).arg); },
                        [&](const Goal::If& x) {
                          const auto& y = std::get<Goal::If>(b.node);
                          return eq(x.cond, y.cond) && eq(x.then_branch, y.then_branch) &&
                                 eq(x.else_branch, y.else_branch);
                        },
                        [&](const Goal::Skip&) { return true; },
                    },
                    a.node);
}

bool structurally_equal(const Decl& a, const Decl& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(overloaded{
                        [&](const Decl::ProcDecl& x) {
                          const auto& y = std::get<Decl::ProcDecl>(b.node);
                          return x.name == y.name && x.params == y.params && eq(x.body, y.body);
                        },
                        [&](const Decl::FieldInit& x) {
                          const auto& y = std::get<Decl::FieldInit>(b.node);
                          return x.name == y.name && eq(x.init, y.init);
                        },
                        [&](const Decl::Forall& x) {
                          const auto& y = std::get<Decl::Forall>(b.node);
                          return x.var == y.var && eq(x.body, y.body);
                        },
                        [&](const Decl::Conj& x) {
                          const auto& y = std::get<Decl::Conj>(b.node);
                          return eq(x.left, y.left) && eq(x.right, y.right);
                        },
                        [&](const Decl::ChoiceDisj& x) {
                          const auto& y = std::get<Decl::ChoiceDisj>(b.node);
                          return eq(x.left, y.left) && eq(x.right, y.right);
                        },
                        [&](const Decl::Empty&) { return true; },
                    },
                    a.node);
}

bool structurally_equal(const SourceProgram& a, const SourceProgram& b) {
  if (a.classes.size() != b.classes.size()) return false;
  for (std::size_t i = 0; i < a.classes.size(); ++i) {
    if (a.classes[i].name != b.classes[i].name) return false;
    if (!eq(a.classes[i].decl, b.classes[i].decl)) return false;
  }
  return eq(a.main, b.main);
}

std::size_t count_choices(const Decl& d) {
  return std::visit(overloaded{
                        [](const Decl::Forall& f) { return count_choices(*f.body); },
                        [](const Decl::Conj& c) { return count_choices(*c.left) + count_choices(*c.right); },
                        [](const Decl::ChoiceDisj& c) {
                          return 1 + count_choices(*c.left) + count_choices(*c.right);
                        },
                        [](const auto&) -> std::size_t { return 0; },
                    },
                    d.node);
}

const Decl::ProcDecl* underlying_proc(const Decl& d) {
  const Decl* cur = &d;
  while (const auto* f = std::get_if<Decl::Forall>(&cur->node)) cur = f->body.get();
  return std::get_if<Decl::ProcDecl>(&cur->node);
}

}  // namespace javai
