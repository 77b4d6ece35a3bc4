#include <stdexcept>

#include "javai/engine.hpp"
#include "javai/printer.hpp"
#include "overloaded.hpp"

namespace javai {

ChoiceResolver::ChoiceResolver(DeclPtr decl) { tasks_.push_back(Visit{std::move(decl)}); }

const Decl::ChoiceDisj* ChoiceResolver::next_choice() {
  while (!pending_ && !tasks_.empty()) {
    auto task = std::move(tasks_.back());
    tasks_.pop_back();
    if (auto* b = std::get_if<BuildConj>(&task)) {
      DeclPtr right = std::move(built_.back());
      built_.pop_back();
      DeclPtr left = std::move(built_.back());
      built_.pop_back();
      built_.push_back(make_decl(Decl::Conj{std::move(left), std::move(right)}, b->span));
      continue;
    }
    DeclPtr d = std::get<Visit>(std::move(task)).decl;
    if (const auto* c = std::get_if<Decl::Conj>(&d->node)) {
      tasks_.push_back(BuildConj{d->span});
      tasks_.push_back(Visit{c->right});
      tasks_.push_back(Visit{c->left});
    } else if (std::holds_alternative<Decl::ChoiceDisj>(d->node)) {
      pending_ = std::move(d);
    } else {
      // Forall may only wrap a procedure, so it needs no traversal.
      built_.push_back(std::move(d));
    }
  }
  return pending_ ? &std::get<Decl::ChoiceDisj>(pending_->node) : nullptr;
}

void ChoiceResolver::decide(Pick pick) {
  if (!pending_) throw std::logic_error("ChoiceResolver::decide without a pending choice");
  const auto& c = std::get<Decl::ChoiceDisj>(pending_->node);
  tasks_.push_back(Visit{pick == Pick::Left ? c.left : c.right});
  pending_.reset();
}

DeclPtr ChoiceResolver::result() const {
  if (pending_ || !tasks_.empty() || built_.size() != 1) {
    throw std::logic_error("ChoiceResolver::result before resolution finished");
  }
  return built_.back();
}

DeclPtr resolve_choices(const DeclPtr& d, const std::string& object_name,
                        const std::string& class_name, ChoiceStrategy& chooser,
                        std::vector<ChoicePoint>* points) {
  ChoiceResolver resolver(d);
  std::uint64_t next_id = 1;
  while (const Decl::ChoiceDisj* c = resolver.next_choice()) {
    ChoicePoint point{next_id++, object_name, class_name, pretty_print_d(*c->left),
                      pretty_print_d(*c->right)};
    if (points) points->push_back(point);
    std::optional<Pick> pick = chooser.choose(point);
    if (!pick) throw RuntimeFailure{chooser.refusal(point)};
    resolver.decide(*pick);
  }
  return resolver.result();
}

ObjectInstance initialize_fields(const DeclPtr& resolved, const std::string& object_name,
                                 const std::string& class_name, const ProgramStore& store) {
  ObjectInstance obj;
  obj.name = object_name;
  obj.class_name = class_name;
  obj.declaration = resolved;
  const Context ctx = Context::of(object_name);

  auto walk = [&](auto& self, const DeclPtr& d) -> void {
    std::visit(overloaded{
                   [&](const Decl::FieldInit& f) {
                     if (obj.field(f.name)) {
                       throw RuntimeFailure{failure::DuplicateField{object_name, f.name}};
                     }
                     Value v = eval_expr(*f.init, ctx, store, &obj);
                     obj.fields.emplace_back(f.name, std::move(v));
                   },
                   [&](const Decl::Conj& c) {
                     self(self, c.left);
                     self(self, c.right);
                   },
                   [&](const Decl::ChoiceDisj&) {
                     throw std::logic_error("initialize_fields: declaration still contains (+)");
                   },
                   [&](const Decl::Empty&) {},
                   [&](const auto&) {
                     const Decl::ProcDecl* p = underlying_proc(*d);
                     if (!p) throw std::logic_error("initialize_fields: Forall without procedure");
                     obj.procs.push_back(ProcEntry{p->name, p->params.size(), d});
                   },
               },
               d->node);
  };
  walk(walk, resolved);
  return obj;
}

}  // namespace javai
