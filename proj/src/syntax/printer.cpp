#include "javai/printer.hpp"

#include "overloaded.hpp"

namespace javai {

namespace {

// Binding strength; higher binds tighter.
constexpr int kUnaryPrec = 6;
constexpr int kAtomPrec = 7;

int precedence(BinaryOp op) {
  switch (op) {
    case BinaryOp::Or: return 0;
    case BinaryOp::And: return 1;
    case BinaryOp::Eq:
    case BinaryOp::Ne: return 2;
    case BinaryOp::Lt:
    case BinaryOp::Le:
    case BinaryOp::Gt:
    case BinaryOp::Ge: return 3;
    case BinaryOp::Add:
    case BinaryOp::Sub: return 4;
    case BinaryOp::Mul:
    case BinaryOp::Div: return 5;
  }
  return 0;
}

int precedence(const Expr& e) {
  if (const auto* b = std::get_if<Expr::Binary>(&e.node)) return precedence(b->op);
  if (std::holds_alternative<Expr::Unary>(e.node)) return kUnaryPrec;
  if (const auto* i = std::get_if<Expr::IntLit>(&e.node); i && i->value < 0) return kUnaryPrec;
  return kAtomPrec;
}

std::string expr_at(const Expr& e, int min_prec) {
  std::string s = pretty_print_expr(e);
  return precedence(e) < min_prec ? "(" + s + ")" : s;
}

std::string args_text(const std::vector<ExprPtr>& args) {
  std::string out = "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ", ";
    out += pretty_print_expr(*args[i]);
  }
  return out + ")";
}

std::string member_prefix(const Target& t) {
  if (std::holds_alternative<SelfTarget>(t)) return "";
  return pretty_print_target(t) + ".";
}

// A goal in a position that only admits a single atom.
std::string gatom_text(const Goal& g) {
  if (std::holds_alternative<Goal::Seq>(g.node)) return "{ " + pretty_print_g(g) + " }";
  return pretty_print_g(g);
}

}  // namespace

std::string pretty_print_target(const Target& t) {
  return std::visit(overloaded{
                        [](const SelfTarget&) { return std::string("this"); },
                        [](const NamedTarget& n) { return n.name; },
                        [](const BoundTarget& b) { return value_literal(b.value); },
                    },
                    t);
}

std::string pretty_print_expr(const Expr& e) {
  return std::visit(
      overloaded{
          [](const Expr::IntLit& x) { return std::to_string(x.value); },
          [](const Expr::BoolLit& x) { return std::string(x.value ? "true" : "false"); },
          [](const Expr::StrLit& x) { return value_literal(Value{x.value}); },
          [](const Expr::FieldRef& x) { return x.name; },
          [](const Expr::QualifiedFieldRef& x) {
            return pretty_print_target(x.object) + "." + x.field;
          },
          [](const Expr::Binary& x) {
            int p = precedence(x.op);
            return expr_at(*x.lhs, p) + " " + std::string(op_text(x.op)) + " " +
                   expr_at(*x.rhs, p + 1);
          },
          [](const Expr::Unary& x) {
            return std::string(op_text(x.op)) + expr_at(*x.operand, kUnaryPrec);
          },
          [](const Expr::ObjLit& x) { return "@" + x.object; },
      },
      e.node);
}

std::string pretty_print_g(const Goal& g) {
  return std::visit(
      overloaded{
          [](const Goal::Call& c) { return member_prefix(c.target) + c.proc + args_text(c.args); },
          [](const Goal::Assign& a) {
            return member_prefix(a.target) + a.field + " = " + pretty_print_expr(*a.value);
          },
          [](const Goal::Seq& s) { return gatom_text(*s.first) + "; " + pretty_print_g(*s.second); },
          [](const Goal::New& n) { return n.binder + " = new " + n.class_name; },
          [](const Goal::Print& p) { return "print(" + pretty_print_expr(*p.arg) + ")"; },
          [](const Goal::If& i) {
            return "if " + pretty_print_expr(*i.cond) + " then " + gatom_text(*i.then_branch) +
                   " else " + gatom_text(*i.else_branch);
          },
          [](const Goal::Skip&) { return std::string("skip"); },
      },
      g.node);
}

std::string pretty_print_d(const Decl& d) {
  auto wrap_if = [](const Decl& child, bool cond) {
    std::string s = pretty_print_d(child);
    return cond ? "(" + s + ")" : s;
  };
  return std::visit(
      overloaded{
          [](const Decl::ProcDecl& p) {
            std::string out = p.name + "(";
            for (std::size_t i = 0; i < p.params.size(); ++i) {
              if (i) out += ", ";
              out += p.params[i];
            }
            return out + ") := " + pretty_print_g(*p.body);
          },
          [](const Decl::FieldInit& f) { return f.name + " = " + pretty_print_expr(*f.init); },
          [](const Decl::Forall& f) { return pretty_print_d(*f.body); },
          [&](const Decl::Conj& c) {
            bool left_compound = std::holds_alternative<Decl::Conj>(c.left->node) ||
                                 std::holds_alternative<Decl::ChoiceDisj>(c.left->node);
            bool right_choice = std::holds_alternative<Decl::ChoiceDisj>(c.right->node);
            return wrap_if(*c.left, left_compound) + " & " + wrap_if(*c.right, right_choice);
          },
          [&](const Decl::ChoiceDisj& c) {
            bool left_choice = std::holds_alternative<Decl::ChoiceDisj>(c.left->node);
            return wrap_if(*c.left, left_choice) + " (+) " + pretty_print_d(*c.right);
          },
          [](const Decl::Empty&) { return std::string(); },
      },
      d.node);
}

std::string print_program(const SourceProgram& p) {
  std::string out;
  for (const auto& c : p.classes) {
    std::string body = pretty_print_d(*c.decl);
    out += "class " + c.name + " { " + body + (body.empty() ? "}" : " }") + "\n";
  }
  out += "void main() { " + pretty_print_g(*p.main) + " }\n";
  return out;
}

// ---------------------------------------------------------------------------
// Tree dump
// ---------------------------------------------------------------------------

namespace {

class Dumper {
 public:
  std::string take() { return std::move(out_); }

  void line(int depth, const std::string& text) {
    out_.append(static_cast<std::size_t>(depth) * 2, ' ');
    out_ += text;
    out_ += '\n';
  }

  void goal(const Goal& g, int depth) {
    std::visit(overloaded{
                   [&](const Goal::Call& c) {
                     line(depth, "call " + member_prefix(c.target) + c.proc + args_text(c.args));
                   },
                   [&](const Goal::Assign& a) {
                     line(depth, "assign " + member_prefix(a.target) + a.field + " = " +
                                     pretty_print_expr(*a.value));
                   },
                   [&](const Goal::Seq& s) {
                     line(depth, "seq");
                     goal(*s.first, depth + 1);
                     goal(*s.second, depth + 1);
                   },
                   [&](const Goal::New& n) { line(depth, "new " + n.binder + " = " + n.class_name); },
                   [&](const Goal::Print& p) { line(depth, "print " + pretty_print_expr(*p.arg)); },
                   [&](const Goal::If& i) {
                     line(depth, "if " + pretty_print_expr(*i.cond));
                     line(depth + 1, "then");
                     goal(*i.then_branch, depth + 2);
                     line(depth + 1, "else");
                     goal(*i.else_branch, depth + 2);
                   },
                   [&](const Goal::Skip&) { line(depth, "skip"); },
               },
               g.node);
  }

  void decl(const Decl& d, int depth) {
    std::visit(overloaded{
                   [&](const Decl::ProcDecl& p) {
                     std::string sig = "proc " + p.name + "(";
                     for (std::size_t i = 0; i < p.params.size(); ++i) {
                       if (i) sig += ", ";
                       sig += p.params[i];
                     }
                     line(depth, sig + ")");
                     goal(*p.body, depth + 1);
                   },
                   [&](const Decl::FieldInit& f) {
                     line(depth, "field " + f.name + " = " + pretty_print_expr(*f.init));
                   },
                   [&](const Decl::Forall& f) {
                     line(depth, "forall " + f.var);
                     decl(*f.body, depth + 1);
                   },
                   [&](const Decl::Conj& c) {
                     line(depth, "&");
                     decl(*c.left, depth + 1);
                     decl(*c.right, depth + 1);
                   },
                   [&](const Decl::ChoiceDisj& c) {
                     line(depth, "(+)");
                     decl(*c.left, depth + 1);
                     decl(*c.right, depth + 1);
                   },
                   [&](const Decl::Empty&) { line(depth, "empty"); },
               },
               d.node);
  }

 private:
  std::string out_;
};

}  // namespace

std::string dump_ast(const SourceProgram& p) {
  Dumper d;
  d.line(0, "program");
  for (const auto& c : p.classes) {
    d.line(1, "class " + c.name);
    d.decl(*c.decl, 2);
  }
  d.line(1, "main");
  d.goal(*p.main, 2);
  return d.take();
}

}  // namespace javai
