#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "javai/ast.hpp"
#include "javai/choice_point.hpp"
#include "javai/store.hpp"
#include "javai/strategy.hpp"

namespace javai {

// ---------------------------------------------------------------------------
// Evaluation context
// ---------------------------------------------------------------------------

/// Binder aliases introduced by `x = new C`, mapping to internal object names.
using Aliases = std::map<std::string, std::string>;

/// The object that bare names refer to (nullopt for main) plus the binders
/// currently in scope.
struct Context {
  std::optional<std::string> self;
  Aliases aliases;

  static Context main() { return {}; }
  static Context of(std::string object) { return Context{std::move(object), {}}; }
};

/// Strict left-to-right evaluation with 64-bit wrapping integer arithmetic
/// and truncating division. `&&` and `||` short-circuit. Throws
/// RuntimeFailure. `building`, when given, is an instance under
/// construction that shadows the store entry of the same name.
Value eval_expr(const Expr& e, const Context& ctx, const ProgramStore& store,
                const ObjectInstance* building = nullptr);

/// Object named by a call/assignment target. Throws RuntimeFailure.
std::string resolve_target(const Target& t, const Context& ctx, const ProgramStore& store,
                           const ObjectInstance* building = nullptr);

/// Field update. The field must already exist on the target; the output
/// log is untouched. Throws RuntimeFailure.
ProgramStore assign_field(ProgramStore store, const Context& ctx, const Target& target,
                          const std::string& field, const Expr& value);

// ---------------------------------------------------------------------------
// Argument passing and procedure search
// ---------------------------------------------------------------------------

/// Removes the outermost binder of `d` (which must be Forall(var, ...)) and
/// replaces free occurrences of `var` in its body by a literal of `val`.
/// Inner binders of the same name shadow. Throws std::logic_error when `d`
/// is not a Forall over `var`.
DeclPtr substitute(const DeclPtr& d, const std::string& var, const Value& val);

GoalPtr substitute_goal(const GoalPtr& g, const std::string& var, const Value& val);
ExprPtr substitute_expr(const ExprPtr& e, const std::string& var, const Value& val);

/// Conjunct taken while searching a declaration for a procedure.
enum class SearchStep { Left, Right };

struct ProcMatch {
  std::vector<SearchStep> path;  // one step per conjunction descended
  DeclPtr decl;                  // the Forall-wrapped procedure
};

/// Leftmost (name, arity) match in a choice-free declaration.
std::optional<ProcMatch> find_procedure(const DeclPtr& focus, const std::string& name,
                                        std::size_t arity);

// ---------------------------------------------------------------------------
// Object creation
// ---------------------------------------------------------------------------

/// Resumable pre-order removal of (+) nodes from a declaration. Nested
/// choices inside a discarded branch are never visited.
class ChoiceResolver {
 public:
  explicit ChoiceResolver(DeclPtr decl);

  /// Advances to the next (+) node needing a decision; nullptr when the
  /// declaration is fully resolved.
  const Decl::ChoiceDisj* next_choice();
  void decide(Pick pick);
  /// Valid once next_choice() returned nullptr.
  DeclPtr result() const;

 private:
  struct Visit {
    DeclPtr decl;
  };
  struct BuildConj {
    Span span;
  };
  std::vector<std::variant<Visit, BuildConj>> tasks_;
  std::vector<DeclPtr> built_;
  DeclPtr pending_;
};

/// Synchronous resolution against a strategy. `points`, when given,
/// receives every prompt issued. Throws RuntimeFailure on refusal.
DeclPtr resolve_choices(const DeclPtr& d, const std::string& object_name,
                        const std::string& class_name, ChoiceStrategy& chooser,
                        std::vector<ChoicePoint>* points = nullptr);

/// Builds an instance from a choice-free declaration, evaluating field
/// initializers left to right with the instance itself as context.
/// Throws RuntimeFailure (DuplicateField or evaluation errors).
ObjectInstance initialize_fields(const DeclPtr& resolved, const std::string& object_name,
                                 const std::string& class_name, const ProgramStore& store);

// ---------------------------------------------------------------------------
// The machine
// ---------------------------------------------------------------------------

struct RunLimits {
  std::size_t max_call_depth = 10'000;
};

using TraceSink = std::function<void(const std::string&)>;

struct RunOptions {
  RunLimits limits;
  TraceSink trace;  // receives "[rule N] ..." lines when set
};

class IllegalStateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class StaleDecisionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ExecutionState;

ExecutionState advance(ExecutionState state);
ExecutionState resume(ExecutionState state, const ChoiceDecision& decision);

/// Resumable execution of a goal against a program store. States are plain
/// values: copying one forks the computation.
class ExecutionState {
 public:
  enum class Status { Running, AwaitingChoice, Finished, Failed };

  /// Running state that will execute `program.main` from the empty store.
  static ExecutionState start(std::shared_ptr<const SourceProgram> program,
                              RunOptions options = {});

  /// Running state that will execute `goal` in `ctx` against `store`.
  static ExecutionState start_goal(std::shared_ptr<const SourceProgram> program,
                                   ProgramStore store, Context ctx, GoalPtr goal,
                                   RunOptions options = {});

  /// Running state that will backchain `proc(args)` through `focus` on
  /// behalf of `object`.
  static ExecutionState start_backchain(std::shared_ptr<const SourceProgram> program,
                                        ProgramStore store, std::string object, DeclPtr focus,
                                        std::string proc, std::vector<Value> args,
                                        RunOptions options = {});

  Status status() const { return status_; }
  bool terminal() const { return status_ == Status::Finished || status_ == Status::Failed; }

  const ProgramStore& store() const { return store_; }
  const ChoicePoint* pending_choice() const { return pending_ ? &*pending_ : nullptr; }
  const FailureReason* failure() const { return failure_ ? &*failure_ : nullptr; }
  const std::vector<std::pair<ChoicePoint, Pick>>& history() const { return history_; }
  const SourceProgram& program() const { return *program_; }

  /// Moves an AwaitingChoice state to Failed when its chooser cannot answer.
  void refuse(FailureReason reason);

 private:
  friend ExecutionState advance(ExecutionState state);
  friend ExecutionState resume(ExecutionState state, const ChoiceDecision& decision);

  struct Frame {
    Context ctx;
  };
  struct RunGoal {
    GoalPtr goal;
  };
  struct PopFrame {};
  struct Backchain {
    std::string object;
    DeclPtr focus;
    std::string proc;
    std::vector<Value> args;
  };
  using WorkItem = std::variant<RunGoal, PopFrame, Backchain>;

  struct Creation {
    std::string binder;
    std::string class_name;
    std::string object_name;
    ChoiceResolver resolver;
  };

  ExecutionState(std::shared_ptr<const SourceProgram> program, ProgramStore store, Context ctx,
                 RunOptions options);

  void step();
  void run_goal(const Goal& g);
  void call(const std::string& object, const DeclPtr& focus, const std::string& proc,
            const std::vector<Value>& args);
  void begin_creation(const Goal::New& n);
  void continue_creation();
  void trace(int rule, const std::string& subject) const;
  Frame& frame() { return frames_.back(); }

  std::shared_ptr<const SourceProgram> program_;
  RunOptions options_;
  ProgramStore store_;
  std::vector<Frame> frames_;
  std::vector<WorkItem> work_;
  std::optional<Creation> creation_;
  std::optional<ChoicePoint> pending_;
  std::optional<FailureReason> failure_;
  std::vector<std::pair<ChoicePoint, Pick>> history_;
  std::uint64_t next_point_id_ = 1;
  Status status_ = Status::Running;
};

/// Alternates advance() and the strategy's answers until a terminal state.
ExecutionState drive(ExecutionState state, ChoiceStrategy& chooser);

/// Executes `program.main` from the empty store.
ExecutionState run(std::shared_ptr<const SourceProgram> program, ChoiceStrategy& chooser,
                   RunOptions options = {});
ExecutionState run(const SourceProgram& program, ChoiceStrategy& chooser, RunOptions options = {});

ExecutionState execute_goal(std::shared_ptr<const SourceProgram> program, ProgramStore store,
                            Context ctx, GoalPtr goal, ChoiceStrategy& chooser,
                            RunOptions options = {});

ExecutionState backchain(std::shared_ptr<const SourceProgram> program, ProgramStore store,
                         std::string object, DeclPtr focus, std::string proc,
                         std::vector<Value> args, ChoiceStrategy& chooser,
                         RunOptions options = {});

/// `binder = new class_name` executed from main.
ExecutionState create_object(std::shared_ptr<const SourceProgram> program, ProgramStore store,
                             std::string binder, std::string class_name, ChoiceStrategy& chooser,
                             RunOptions options = {});

}  // namespace javai
