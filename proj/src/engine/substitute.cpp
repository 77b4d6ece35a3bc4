#include <stdexcept>

#include "javai/engine.hpp"
#include "overloaded.hpp"

namespace javai {

namespace {

Target substitute_target(const Target& t, const std::string& var, const Value& val) {
  if (const auto* n = std::get_if<NamedTarget>(&t); n && n->name == var) return BoundTarget{val};
  return t;
}

DeclPtr substitute_body(const DeclPtr& d, const std::string& var, const Value& val) {
  return std::visit(
      overloaded{
          [&](const Decl::ProcDecl& p) {
            return make_decl(Decl::ProcDecl{p.name, p.params, substitute_goal(p.body, var, val)},
                             d->span);
          },
          [&](const Decl::FieldInit& f) {
            return make_decl(Decl::FieldInit{f.name, substitute_expr(f.init, var, val)}, d->span);
          },
          [&](const Decl::Forall& f) {
            if (f.var == var) return d;  // shadowed
            return make_decl(Decl::Forall{f.var, substitute_body(f.body, var, val)}, d->span);
          },
          [&](const Decl::Conj& c) {
            return make_decl(
                Decl::Conj{substitute_body(c.left, var, val), substitute_body(c.right, var, val)},
                d->span);
          },
          [&](const Decl::ChoiceDisj& c) {
            return make_decl(Decl::ChoiceDisj{substitute_body(c.left, var, val),
                                              substitute_body(c.right, var, val)},
                             d->span);
          },
          [&](const Decl::Empty&) { return d; },
      },
      d->node);
}

}  // namespace

ExprPtr substitute_expr(const ExprPtr& e, const std::string& var, const Value& val) {
  return std::visit(
      overloaded{
          [&](const Expr::FieldRef& x) {
            if (x.name != var) return e;
            ExprPtr lit = literal_of(val);
            return make_expr(lit->node, e->span);
          },
          [&](const Expr::QualifiedFieldRef& x) {
            return make_expr(Expr::QualifiedFieldRef{substitute_target(x.object, var, val), x.field},
                             e->span);
          },
          [&](const Expr::Binary& x) {
            return make_expr(Expr::Binary{x.op, substitute_expr(x.lhs, var, val),
                                          substitute_expr(x.rhs, var, val)},
                             e->span);
          },
          [&](const Expr::Unary& x) {
            return make_expr(Expr::Unary{x.op, substitute_expr(x.operand, var, val)}, e->span);
          },
          [&](const auto&) { return e; },
      },
      e->node);
}

GoalPtr substitute_goal(const GoalPtr& g, const std::string& var, const Value& val) {
  auto sub_args = [&](const std::vector<ExprPtr>& args) {
    std::vector<ExprPtr> out;
    out.reserve(args.size());
    for (const auto& a : args) out.push_back(substitute_expr(a, var, val));
    return out;
  };
  return std::visit(
      overloaded{
          [&](const Goal::Call& c) {
            return make_goal(
                Goal::Call{substitute_target(c.target, var, val), c.proc, sub_args(c.args)},
                g->span);
          },
          [&](const Goal::Assign& a) {
            return make_goal(Goal::Assign{substitute_target(a.target, var, val), a.field,
                                          substitute_expr(a.value, var, val)},
                             g->span);
          },
          [&](const Goal::Seq& s) {
            return make_goal(
                Goal::Seq{substitute_goal(s.first, var, val), substitute_goal(s.second, var, val)},
                g->span);
          },
          [&](const Goal::Print& p) {
            return make_goal(Goal::Print{substitute_expr(p.arg, var, val)}, g->span);
          },
          [&](const Goal::If& i) {
            return make_goal(Goal::If{substitute_expr(i.cond, var, val),
                                      substitute_goal(i.then_branch, var, val),
                                      substitute_goal(i.else_branch, var, val)},
                             g->span);
          },
          [&](const auto&) { return g; },
      },
      g->node);
}

DeclPtr substitute(const DeclPtr& d, const std::string& var, const Value& val) {
  const auto* f = std::get_if<Decl::Forall>(&d->node);
  if (!f || f->var != var) {
    throw std::logic_error("substitute: declaration is not quantified over '" + var + "'");
  }
  return substitute_body(f->body, var, val);
}

std::optional<ProcMatch> find_procedure(const DeclPtr& focus, const std::string& name,
                                        std::size_t arity) {
  std::vector<SearchStep> path;
  // Recursive on conjunction depth only; declarations are parser-bounded.
  auto search = [&](auto& self, const DeclPtr& d) -> DeclPtr {
    if (const auto* c = std::get_if<Decl::Conj>(&d->node)) {
      path.push_back(SearchStep::Left);
      if (DeclPtr hit = self(self, c->left)) return hit;
      path.back() = SearchStep::Right;
      if (DeclPtr hit = self(self, c->right)) return hit;
      path.pop_back();
      return nullptr;
    }
    if (std::holds_alternative<Decl::ChoiceDisj>(d->node)) {
      throw std::logic_error("find_procedure: declaration still contains (+)");
    }
    const Decl::ProcDecl* proc = underlying_proc(*d);
    if (proc && proc->name == name && proc->params.size() == arity) return d;
    return nullptr;
  };
  DeclPtr hit = search(search, focus);
  if (!hit) return std::nullopt;
  return ProcMatch{std::move(path), std::move(hit)};
}

}  // namespace javai
