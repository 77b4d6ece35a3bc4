#include <stdexcept>

#include "javai/engine.hpp"
#include "javai/printer.hpp"
#include "overloaded.hpp"

namespace javai {

namespace {

[[noreturn]] void fail(FailureReason r) { throw RuntimeFailure{std::move(r)}; }

std::string call_text(const std::string& object, const std::string& proc,
                      const std::vector<Value>& args) {
  std::string out = object + "." + proc + "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ", ";
    out += value_literal(args[i]);
  }
  return out + ")";
}

}  // namespace

ExecutionState::ExecutionState(std::shared_ptr<const SourceProgram> program, ProgramStore store,
                               Context ctx, RunOptions options)
    : program_(std::move(program)), options_(std::move(options)), store_(std::move(store)) {
  if (!program_) throw std::invalid_argument("ExecutionState requires a program");
  frames_.push_back(Frame{std::move(ctx)});
}

ExecutionState ExecutionState::start(std::shared_ptr<const SourceProgram> program,
                                     RunOptions options) {
  GoalPtr main = program ? program->main : nullptr;
  return start_goal(std::move(program), ProgramStore{}, Context::main(), std::move(main),
                    std::move(options));
}

ExecutionState ExecutionState::start_goal(std::shared_ptr<const SourceProgram> program,
                                          ProgramStore store, Context ctx, GoalPtr goal,
                                          RunOptions options) {
  ExecutionState s(std::move(program), std::move(store), std::move(ctx), std::move(options));
  if (!goal) throw std::invalid_argument("ExecutionState requires a goal");
  s.work_.push_back(RunGoal{std::move(goal)});
  return s;
}

ExecutionState ExecutionState::start_backchain(std::shared_ptr<const SourceProgram> program,
                                               ProgramStore store, std::string object,
                                               DeclPtr focus, std::string proc,
                                               std::vector<Value> args, RunOptions options) {
  ExecutionState s(std::move(program), std::move(store), Context::main(), std::move(options));
  s.work_.push_back(Backchain{std::move(object), std::move(focus), std::move(proc), std::move(args)});
  return s;
}

void ExecutionState::refuse(FailureReason reason) {
  if (status_ != Status::AwaitingChoice) {
    throw IllegalStateError("refuse: execution is not awaiting a choice");
  }
  pending_.reset();
  failure_ = std::move(reason);
  status_ = Status::Failed;
}

void ExecutionState::trace(int rule, const std::string& subject) const {
  if (options_.trace) options_.trace("[rule " + std::to_string(rule) + "] " + subject);
}

void ExecutionState::step() {
  WorkItem item = std::move(work_.back());
  work_.pop_back();
  std::visit(overloaded{
                 [&](const RunGoal& r) { run_goal(*r.goal); },
                 [&](const PopFrame&) { frames_.pop_back(); },
                 [&](const Backchain& b) {
                   if (!store_.find(b.object)) fail(failure::UnknownObject{b.object});
                   call(b.object, b.focus, b.proc, b.args);
                 },
             },
             item);
}

void ExecutionState::run_goal(const Goal& g) {
  std::visit(
      overloaded{
          [&](const Goal::Call& c) {
            std::string object = resolve_target(c.target, frame().ctx, store_);
            const ObjectInstance* obj = store_.find(object);
            if (!obj) fail(failure::UnknownObject{object});
            std::vector<Value> args;
            args.reserve(c.args.size());
            for (const auto& a : c.args) args.push_back(eval_expr(*a, frame().ctx, store_));
            trace(5, call_text(object, c.proc, args));
            DeclPtr focus = obj->declaration;
            call(object, focus, c.proc, args);
          },
          [&](const Goal::Assign& a) {
            std::string object = resolve_target(a.target, frame().ctx, store_);
            if (!store_.find(object)) fail(failure::UnknownObject{object});
            Value v = eval_expr(*a.value, frame().ctx, store_);
            Value* cell = store_.find(object)->field(a.field);
            if (!cell) fail(failure::UnknownField{object, a.field});
            trace(6, object + "." + a.field + " = " + value_literal(v));
            *cell = std::move(v);
          },
          [&](const Goal::Seq& s) {
            trace(7, pretty_print_g(*s.first) + " ; ...");
            work_.push_back(RunGoal{s.second});
            work_.push_back(RunGoal{s.first});
          },
          [&](const Goal::New& n) { begin_creation(n); },
          [&](const Goal::Print& p) {
            store_.append_output(render_value(eval_expr(*p.arg, frame().ctx, store_)));
          },
          [&](const Goal::If& i) {
            Value v = eval_expr(*i.cond, frame().ctx, store_);
            const auto* b = std::get_if<bool>(&v);
            if (!b) fail(failure::TypeMismatch{"if", {v}});
            work_.push_back(RunGoal{*b ? i.then_branch : i.else_branch});
          },
          [&](const Goal::Skip&) {},
      },
      g.node);
}

void ExecutionState::call(const std::string& object, const DeclPtr& focus, const std::string& proc,
                          const std::vector<Value>& args) {
  const std::size_t depth = frames_.size() - 1;
  if (depth >= options_.limits.max_call_depth) {
    fail(failure::RecursionLimitExceeded{options_.limits.max_call_depth});
  }
  std::optional<ProcMatch> match = find_procedure(focus, proc, args.size());
  if (!match) fail(failure::NoMatchingProcedure{object, proc, args.size()});

  const std::string signature = proc + "/" + std::to_string(args.size());
  for (SearchStep step : match->path) {
    if (step == SearchStep::Left) {
      trace(3, object + ": " + signature + " in left conjunct");
    } else {
      trace(4, object + ": " + signature + " in right conjunct");
    }
  }
  DeclPtr d = match->decl;
  for (const Value& arg : args) {
    const auto* binder = std::get_if<Decl::Forall>(&d->node);
    if (!binder) throw std::logic_error("call: fewer binders than arguments for " + signature);
    trace(2, object + ": " + binder->var + " := " + value_literal(arg));
    d = substitute(d, binder->var, arg);
  }
  const auto* body = std::get_if<Decl::ProcDecl>(&d->node);
  if (!body) throw std::logic_error("call: more binders than arguments for " + signature);
  trace(1, object + ": " + pretty_print_d(*d));

  frames_.push_back(Frame{Context::of(object)});
  work_.push_back(PopFrame{});
  work_.push_back(RunGoal{body->body});
}

void ExecutionState::begin_creation(const Goal::New& n) {
  const ClassDef* cls = program_->find_class(n.class_name);
  if (!cls) fail(failure::UnknownClass{n.class_name});
  std::string object = store_.fresh_name(n.binder);
  trace(8, n.binder + " = new " + n.class_name + " as " + object);
  creation_.emplace(Creation{n.binder, n.class_name, std::move(object), ChoiceResolver(cls->decl)});
  continue_creation();
}

void ExecutionState::continue_creation() {
  Creation& c = *creation_;
  if (const Decl::ChoiceDisj* choice = c.resolver.next_choice()) {
    pending_ = ChoicePoint{next_point_id_++, c.object_name, c.class_name,
                           pretty_print_d(*choice->left), pretty_print_d(*choice->right)};
    status_ = Status::AwaitingChoice;
    if (options_.trace) {
      options_.trace("[prompt " + std::to_string(pending_->id) + "] Creating " + c.class_name +
                     " as " + c.object_name + ": " + pending_->left_text + " (+) " +
                     pending_->right_text);
    }
    return;
  }
  DeclPtr resolved = c.resolver.result();
  if (contains_choice(*resolved)) throw std::logic_error("resolution left a (+) node");
  ObjectInstance obj = initialize_fields(resolved, c.object_name, c.class_name, store_);
  store_.insert(std::move(obj));
  frame().ctx.aliases[c.binder] = c.object_name;
  creation_.reset();
}

ExecutionState advance(ExecutionState state) {
  using Status = ExecutionState::Status;
  try {
    while (state.status_ == Status::Running) {
      if (state.creation_) {
        state.continue_creation();
      } else if (state.work_.empty()) {
        state.status_ = Status::Finished;
      } else {
        state.step();
      }
    }
  } catch (RuntimeFailure& f) {
    state.creation_.reset();
    state.pending_.reset();
    state.failure_ = std::move(f.reason);
    state.status_ = Status::Failed;
  }
  return state;
}

ExecutionState resume(ExecutionState state, const ChoiceDecision& decision) {
  using Status = ExecutionState::Status;
  if (state.status_ != Status::AwaitingChoice) {
    throw IllegalStateError("resume: execution is not awaiting a choice");
  }
  if (decision.point_id != state.pending_->id) {
    throw StaleDecisionError("resume: decision for point " + std::to_string(decision.point_id) +
                             " but point " + std::to_string(state.pending_->id) + " is pending");
  }
  if (state.options_.trace) {
    state.options_.trace("[pick " + std::to_string(decision.point_id) + "] " +
                         pick_word(decision.pick));
  }
  state.history_.emplace_back(*state.pending_, decision.pick);
  state.pending_.reset();
  state.creation_->resolver.decide(decision.pick);
  state.status_ = Status::Running;
  return advance(std::move(state));
}

ExecutionState drive(ExecutionState state, ChoiceStrategy& chooser) {
  state = advance(std::move(state));
  while (state.status() == ExecutionState::Status::AwaitingChoice) {
    const ChoicePoint point = *state.pending_choice();
    std::optional<Pick> pick = chooser.choose(point);
    if (!pick) {
      state.refuse(chooser.refusal(point));
      break;
    }
    state = resume(std::move(state), ChoiceDecision{point.id, *pick});
  }
  return state;
}

ExecutionState run(std::shared_ptr<const SourceProgram> program, ChoiceStrategy& chooser,
                   RunOptions options) {
  return drive(ExecutionState::start(std::move(program), std::move(options)), chooser);
}

ExecutionState run(const SourceProgram& program, ChoiceStrategy& chooser, RunOptions options) {
  return run(std::make_shared<const SourceProgram>(program), chooser, std::move(options));
}

ExecutionState execute_goal(std::shared_ptr<const SourceProgram> program, ProgramStore store,
                            Context ctx, GoalPtr goal, ChoiceStrategy& chooser,
                            RunOptions options) {
  return drive(ExecutionState::start_goal(std::move(program), std::move(store), std::move(ctx),
                                          std::move(goal), std::move(options)),
               chooser);
}

ExecutionState backchain(std::shared_ptr<const SourceProgram> program, ProgramStore store,
                         std::string object, DeclPtr focus, std::string proc,
                         std::vector<Value> args, ChoiceStrategy& chooser, RunOptions options) {
  return drive(ExecutionState::start_backchain(std::move(program), std::move(store),
                                               std::move(object), std::move(focus),
                                               std::move(proc), std::move(args),
                                               std::move(options)),
               chooser);
}

ExecutionState create_object(std::shared_ptr<const SourceProgram> program, ProgramStore store,
                             std::string binder, std::string class_name, ChoiceStrategy& chooser,
                             RunOptions options) {
  return execute_goal(std::move(program), std::move(store), Context::main(),
                      make_goal(Goal::New{std::move(binder), std::move(class_name)}), chooser,
                      std::move(options));
}

}  // namespace javai
