#include <random>

#include "doctest.h"
#include "harness.hpp"
#include "javai/choice.hpp"
#include "javai/engine.hpp"
#include "javai/printer.hpp"
#include "oracles.hpp"

using namespace javai;
using namespace javai::testing;

namespace {

using Status = ExecutionState::Status;

std::shared_ptr<const SourceProgram> templeu() {
  return parse_shared(read_text(corpus_path("templeu.javai")));
}

ExprPtr parse_expr(const std::string& text) {
  SourceProgram p = parse_program("void main() { print(" + text + ") }");
  return std::get<Goal::Print>(p.main->node).arg;
}

GoalPtr parse_goal_in_proc(const std::string& text) {
  SourceProgram p = parse_program("class K { f() := " + text + " } void main() { skip }");
  return std::get<Decl::ProcDecl>(p.classes[0].decl->node).body;
}

// Store holding one created object of `cls` from `source`, using `picks`.
ProgramStore store_with(const std::shared_ptr<const SourceProgram>& program, const std::string& cls,
                        std::vector<Pick> picks = {}) {
  ScriptedStrategy chooser(std::move(picks));
  ExecutionState s = create_object(program, ProgramStore{}, "p", cls, chooser);
  REQUIRE(s.status() == Status::Finished);
  return s.store();
}

template <class T>
const T& failure_as(const ExecutionState& s) {
  REQUIRE(s.status() == Status::Failed);
  const T* f = std::get_if<T>(s.failure());
  REQUIRE_MESSAGE(f != nullptr, describe_failure(*s.failure()));
  return *f;
}

std::string failure_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const RuntimeFailure& r) {
    return std::string(failure_kind(r.reason));
  }
  return "";
}

// Flattens a right- or left-nested sequence into its atoms.
void flatten(const GoalPtr& g, std::vector<GoalPtr>& out) {
  if (auto s = std::get_if<Goal::Seq>(&g->node)) {
    flatten(s->first, out);
    flatten(s->second, out);
  } else {
    out.push_back(g);
  }
}

GoalPtr left_nested(const std::vector<GoalPtr>& atoms) {
  GoalPtr g = atoms[0];
  for (std::size_t i = 1; i < atoms.size(); ++i) g = seq_goal(g, atoms[i]);
  return g;
}

std::vector<std::vector<Pick>> all_scripts(const std::shared_ptr<const SourceProgram>& program) {
  std::vector<std::vector<Pick>> scripts;
  for (const Outcome& o : enumerate_outcomes(program).outcomes) scripts.push_back(o.picks());
  return scripts;
}

}  // namespace

TEST_SUITE("eval_expr") {
  TEST_CASE("field of a TempleU instance after the left choice") {
    ProgramStore store = store_with(templeu(), "TempleU", {Pick::Left});
    CHECK(eval_expr(*field_ref("employee"), Context::of("p#1"), store) == Value{true});
  }

  TEST_CASE("arithmetic") {
    ProgramStore store;
    CHECK(eval_expr(*parse_expr("2 + 3"), Context::main(), store) == Value{std::int64_t{5}});
    CHECK(eval_expr(*parse_expr("-7 / 2"), Context::main(), store) == Value{std::int64_t{-3}});
    CHECK(eval_expr(*parse_expr("9223372036854775807 + 1"), Context::main(), store) ==
          Value{std::numeric_limits<std::int64_t>::min()});
    CHECK(eval_expr(*parse_expr("2 * 3 - 10"), Context::main(), store) == Value{std::int64_t{-4}});
  }

  TEST_CASE("errors") {
    ProgramStore store;
    CHECK(failure_of([&] { eval_expr(*parse_expr("1 / 0"), Context::main(), store); }) ==
          "DivisionByZero");
    CHECK(failure_of([&] { eval_expr(*parse_expr("1 + true"), Context::main(), store); }) ==
          "TypeMismatch");
    CHECK(failure_of([&] { eval_expr(*parse_expr("q.x"), Context::main(), store); }) ==
          "UnknownObject");
    CHECK(failure_of([&] { eval_expr(*parse_expr("\"a\" < \"b\""), Context::main(), store); }) ==
          "TypeMismatch");
    ProgramStore t = store_with(templeu(), "TempleU", {Pick::Left});
    CHECK(failure_of([&] { eval_expr(*field_ref("nope"), Context::of("p#1"), t); }) ==
          "UnknownField");
  }

  TEST_CASE("equality across types and short circuit") {
    ProgramStore store;
    CHECK(eval_expr(*parse_expr("1 == true"), Context::main(), store) == Value{false});
    CHECK(eval_expr(*parse_expr("\"1\" != 1"), Context::main(), store) == Value{true});
    CHECK(eval_expr(*parse_expr("false && 1 / 0 == 0"), Context::main(), store) == Value{false});
    CHECK(eval_expr(*parse_expr("true || 1 / 0 == 0"), Context::main(), store) == Value{true});
  }
}

TEST_SUITE("assign_field") {
  TEST_CASE("tuition update leaves employee unchanged") {
    ProgramStore before = store_with(templeu(), "TempleU", {Pick::Left});
    ProgramStore after =
        assign_field(before, Context::of("p#1"), SelfTarget{}, "tuition", *int_lit(3000));
    const ObjectInstance* obj = after.find("p#1");
    CHECK(*obj->field("tuition") == Value{std::int64_t{3000}});
    CHECK(*obj->field("employee") == *before.find("p#1")->field("employee"));
    CHECK(after.output() == before.output());
  }

  TEST_CASE("self assignment is the identity") {
    ProgramStore before = store_with(templeu(), "TempleU", {Pick::Right});
    ProgramStore after =
        assign_field(before, Context::of("p#1"), SelfTarget{}, "tuition", *field_ref("tuition"));
    CHECK(after == before);
  }

  TEST_CASE("undeclared field") {
    ProgramStore before = store_with(templeu(), "TempleU", {Pick::Right});
    CHECK(failure_of([&] {
            assign_field(before, Context::of("p#1"), SelfTarget{}, "z", *int_lit(1));
          }) == "UnknownField");
  }

  TEST_CASE("frame property on generated stores") {
    std::mt19937 rng(77);
    int checked = 0;
    for (int i = 0; i < 200; ++i) {
      auto program = parse_shared(random_program(rng, {}));
      ExecutionState s = run_script(program, std::vector<Pick>(16, Pick::Left));
      if (s.status() != Status::Finished) continue;
      const ProgramStore& before = s.store();
      const auto& objects = before.objects();
      const ObjectInstance& target = objects[rng() % objects.size()];
      const auto& cell = target.fields[rng() % target.fields.size()];
      const std::int64_t v = static_cast<std::int64_t>(rng() % 1000);
      ProgramStore after =
          assign_field(before, Context::of(target.name), SelfTarget{}, cell.first, *int_lit(v));
      CHECK(after.output() == before.output());
      CHECK(after.fresh_counter() == before.fresh_counter());
      REQUIRE(after.objects().size() == objects.size());
      for (std::size_t o = 0; o < objects.size(); ++o) {
        const ObjectInstance& a = after.objects()[o];
        const ObjectInstance& b = objects[o];
        REQUIRE(a.fields.size() == b.fields.size());
        for (std::size_t f = 0; f < a.fields.size(); ++f) {
          if (b.name == target.name && b.fields[f].first == cell.first) {
            CHECK(a.fields[f].second == Value{v});
          } else {
            CHECK(a.fields[f] == b.fields[f]);
          }
        }
        CHECK(a.procs == b.procs);
      }
      ++checked;
    }
    CHECK(checked > 100);
  }
}

TEST_SUITE("substitute") {
  TEST_CASE("direct substitution") {
    DeclPtr d = desugar_procedure("p", {"x"}, print_goal(field_ref("x")));
    DeclPtr out = substitute(d, "x", std::int64_t{7});
    const auto& proc = std::get<Decl::ProcDecl>(out->node);
    CHECK(proc.params == std::vector<std::string>{"x"});
    CHECK(structurally_equal(*proc.body, *print_goal(int_lit(7))));
  }

  TEST_CASE("inner binder of the same name shadows") {
    DeclPtr inner = make_decl(Decl::Forall{
        "x", make_decl(Decl::ProcDecl{"p", {"x", "x'"}, print_goal(field_ref("x"))})});
    DeclPtr d = make_decl(Decl::Forall{"x", inner});
    DeclPtr out = substitute(d, "x", std::int64_t{1});
    CHECK(structurally_equal(*out, *inner));
  }

  TEST_CASE("object values land in object positions") {
    GoalPtr body = parse_goal_in_proc("{ o.q(o.v); o.v = 1 }");
    DeclPtr d = desugar_procedure("p", {"o"}, body);
    DeclPtr out = substitute(d, "o", ObjRef{"c#1"});
    std::string printed = pretty_print_d(*out);
    CHECK(printed.find("o.") == std::string::npos);
    const auto& seq = std::get<Goal::Seq>(std::get<Decl::ProcDecl>(out->node).body->node);
    const auto& call = std::get<Goal::Call>(seq.first->node);
    CHECK(std::get<BoundTarget>(call.target).value == Value{ObjRef{"c#1"}});
    const auto& arg = std::get<Expr::QualifiedFieldRef>(call.args[0]->node);
    CHECK(std::holds_alternative<BoundTarget>(arg.object));
  }

  TEST_CASE("substituting into a non-binder is a contract violation") {
    CHECK_THROWS_AS(substitute(field_init("x", int_lit(1)), "x", std::int64_t{1}), std::logic_error);
    CHECK_THROWS_AS(substitute(desugar_procedure("p", {"y"}, skip_goal()), "x", std::int64_t{1}),
                    std::logic_error);
  }

  TEST_CASE("substitute then evaluate equals an environment evaluator") {
    std::mt19937 rng(2024);
    int agreed = 0;
    for (int i = 0; i < 50; ++i) {
      ExprPtr e = random_expr(rng, {"a", "b"}, 3);
      std::vector<std::pair<std::string, Value>> fields;
      DeclPtr decl = desugar_procedure("p", {"a", "b"}, print_goal(e));
      for (int f = 2; f >= 0; --f) {
        Value v = rng() % 4 == 0 ? Value{rng() % 2 == 0} : Value{static_cast<std::int64_t>(rng() % 7) - 2};
        fields.insert(fields.begin(), {"f" + std::to_string(f), v});
        decl = conj(field_init("f" + std::to_string(f), literal_of(v)), decl);
      }
      std::map<std::string, Value> env{
          {"a", Value{static_cast<std::int64_t>(rng() % 9) - 3}},
          {"b", rng() % 3 == 0 ? Value{true} : Value{static_cast<std::int64_t>(rng() % 5)}}};

      auto program = std::make_shared<SourceProgram>();
      program->classes.push_back({"K", decl, {}});
      program->main = make_goal(Goal::New{"k", "K"});
      ExecutionState created = run_script(program, {});
      REQUIRE(created.status() == Status::Finished);
      ScriptedStrategy none({});
      ExecutionState s = backchain(program, created.store(), "k#1", created.store().find("k#1")->declaration,
                                   "p", {env["a"], env["b"]}, none);

      EnvResult expected = env_eval(*e, env, fields);
      CAPTURE(pretty_print_expr(*e));
      if (expected.value) {
        REQUIRE(s.status() == Status::Finished);
        CHECK(s.store().output().back() == render_value(*expected.value));
        agreed += s.store().output().back() == render_value(*expected.value);
      } else {
        REQUIRE(s.status() == Status::Failed);
        CHECK(failure_kind(*s.failure()) == expected.failure_kind);
        agreed += failure_kind(*s.failure()) == expected.failure_kind;
      }
    }
    CHECK(agreed == 50);
  }
}

TEST_SUITE("backchain") {
  TEST_CASE("TempleU comp_tuition runs the if body") {
    auto program = templeu();
    ProgramStore store = store_with(program, "TempleU", {Pick::Left});
    ScriptedStrategy none({});
    ExecutionState s = backchain(program, store, "p#1", store.find("p#1")->declaration,
                                 "comp_tuition", {}, none);
    REQUIRE(s.status() == Status::Finished);
    CHECK(*s.store().find("p#1")->field("tuition") == Value{std::int64_t{3000}});
  }

  TEST_CASE("leftmost match wins") {
    auto program = parse_shared("class C { p() := skip & p() := print(1) } void main() { skip }");
    ProgramStore store = store_with(program, "C");
    ScriptedStrategy none({});
    ExecutionState s = backchain(program, store, "p#1", program->classes[0].decl, "p", {}, none);
    REQUIRE(s.status() == Status::Finished);
    CHECK(s.store().output().empty());
    // Oracle: first (p, 0) entry in declaration order has an empty body.
    const auto& procs = store.find("p#1")->procs;
    REQUIRE(procs.size() == 2);
    CHECK(std::holds_alternative<Goal::Skip>(underlying_proc(*procs[0].decl)->body->node));
  }

  TEST_CASE("arity mismatch is not a match and the scan continues") {
    auto program = parse_shared(
        "class C { p(a, b) := print(a) & p(a) := print(a + 1) } void main() { skip }");
    ProgramStore store = store_with(program, "C");
    ScriptedStrategy none({});
    ExecutionState one = backchain(program, store, "p#1", program->classes[0].decl, "p",
                                   {std::int64_t{4}}, none);
    REQUIRE(one.status() == Status::Finished);
    CHECK(one.store().output() == std::vector<std::string>{"5"});

    auto only_two = parse_shared("class C { p(a, b) := skip } void main() { skip }");
    ProgramStore s2 = store_with(only_two, "C");
    ExecutionState miss = backchain(only_two, s2, "p#1", only_two->classes[0].decl, "p",
                                    {std::int64_t{1}}, none);
    const auto& f = failure_as<failure::NoMatchingProcedure>(miss);
    CHECK(f.name == "p");
    CHECK(f.arity == 1);
  }

  TEST_CASE("missing procedure agrees with a scan of the procedure table") {
    auto program = parse_shared(read_text(corpus_path("undefined_proc.javai")));
    ExecutionState s = run_script(program, {});
    const auto& f = failure_as<failure::NoMatchingProcedure>(s);
    CHECK(f.name == "q");
    CHECK(f.arity == 0);
    const ObjectInstance* obj = s.store().find(f.object);
    REQUIRE(obj != nullptr);
    for (const ProcEntry& p : obj->procs) CHECK_FALSE((p.name == "q" && p.arity == 0));
  }

  TEST_CASE("arguments are evaluated in the caller") {
    auto program = parse_shared(
        "class A { x = 10 & go(b) := b.show(x) } class B { x = 1 & show(v) := print(v + x) } "
        "void main() { a = new A; b = new B; a.go(b) }");
    ExecutionState s = run_script(program, {});
    REQUIRE(s.status() == Status::Finished);
    CHECK(s.store().output() == std::vector<std::string>{"11"});
  }
}

TEST_SUITE("initialize_fields") {
  TEST_CASE("resolved TempleU") {
    auto program = templeu();
    const auto& top = std::get<Decl::Conj>(program->classes[0].decl->node);
    const auto& rest = std::get<Decl::Conj>(top.right->node);
    const auto& ch = std::get<Decl::ChoiceDisj>(rest.left->node);
    DeclPtr resolved = conj(top.left, conj(ch.left, rest.right));
    ObjectInstance obj = initialize_fields(resolved, "p#1", "TempleU", ProgramStore{});
    REQUIRE(obj.fields.size() == 2);
    CHECK(obj.fields[0] == std::pair<std::string, Value>{"tuition", std::int64_t{0}});
    CHECK(obj.fields[1] == std::pair<std::string, Value>{"employee", true});
    REQUIRE(obj.procs.size() == 1);
    CHECK(obj.procs[0].name == "comp_tuition");
    CHECK(obj.procs[0].arity == 0);
  }

  TEST_CASE("no fields") {
    ObjectInstance obj = initialize_fields(empty_decl(), "c#1", "C", ProgramStore{});
    CHECK(obj.fields.empty());
    ObjectInstance procs_only = initialize_fields(desugar_procedure("p", {}, skip_goal()), "c#1", "C", {});
    CHECK(procs_only.fields.empty());
    CHECK(procs_only.procs.size() == 1);
  }

  TEST_CASE("later initializers read earlier fields") {
    DeclPtr d = conj(field_init("a", int_lit(1)), field_init("b", parse_expr("a + 1")));
    ObjectInstance obj = initialize_fields(d, "c#1", "C", ProgramStore{});
    // Sequential environment by hand: a = 1, then b = a + 1 = 2.
    CHECK(*obj.field("a") == Value{std::int64_t{1}});
    CHECK(*obj.field("b") == Value{std::int64_t{2}});
  }

  TEST_CASE("duplicate field and failing initializer") {
    DeclPtr dup = conj(field_init("a", int_lit(1)), field_init("a", int_lit(2)));
    CHECK(failure_of([&] { initialize_fields(dup, "c#1", "C", {}); }) == "DuplicateField");
    DeclPtr bad = field_init("a", parse_expr("b + 1"));
    CHECK(failure_of([&] { initialize_fields(bad, "c#1", "C", {}); }) == "UnknownField");
  }
}

TEST_SUITE("create_object") {
  TEST_CASE("p = new TempleU then dispatch") {
    auto program = templeu();
    ScriptedStrategy chooser({Pick::Left});
    ExecutionState s = create_object(program, ProgramStore{}, "p", "TempleU", chooser);
    REQUIRE(s.status() == Status::Finished);
    REQUIRE(s.store().objects().size() == 1);
    CHECK(s.store().objects()[0].name == "p#1");
    CHECK(s.store().objects()[0].class_name == "TempleU");
  }

  TEST_CASE("two instances have independent fields") {
    auto program = parse_shared(
        "class C { x = 1 } void main() { a = new C; b = new C; a.x = 5; print(b.x); print(a.x) }");
    ExecutionState s = run_script(program, {});
    REQUIRE(s.status() == Status::Finished);
    CHECK(s.store().output() == std::vector<std::string>{"1", "5"});
    CHECK(s.store().objects().size() == 2);
    CHECK(s.store().objects()[0].name != s.store().objects()[1].name);
  }

  TEST_CASE("unknown class fails before any prompt") {
    auto program = templeu();
    ScriptedStrategy chooser({Pick::Left});
    ExecutionState s = create_object(program, ProgramStore{}, "q", "Undefined", chooser);
    CHECK(failure_as<failure::UnknownClass>(s).name == "Undefined");
    CHECK(chooser.consulted() == 0);
    CHECK(s.history().empty());
  }

  TEST_CASE("fresh names increase") {
    auto program = parse_shared("class C { } void main() { a = new C; a = new C; b = new C }");
    ExecutionState s = run_script(program, {});
    REQUIRE(s.status() == Status::Finished);
    std::vector<std::string> names;
    for (const auto& o : s.store().objects()) names.push_back(o.name);
    CHECK(names == std::vector<std::string>{"a#1", "a#2", "b#3"});
  }
}

TEST_SUITE("run and resume") {
  TEST_CASE("TempleU scripted") {
    CHECK(run_script(templeu(), {Pick::Left}).store().output() == std::vector<std::string>{"3000"});
    CHECK(run_script(templeu(), {Pick::Right}).store().output() == std::vector<std::string>{"5000"});
  }

  TEST_CASE("skip leaves the store unchanged") {
    ProgramStore before = store_with(templeu(), "TempleU", {Pick::Left});
    ScriptedStrategy none({});
    ExecutionState s = execute_goal(templeu(), before, Context::main(), skip_goal(), none);
    REQUIRE(s.status() == Status::Finished);
    CHECK(s.store() == before);
  }

  TEST_CASE("recursion limit") {
    auto program = parse_shared(read_text(corpus_path("recursion.javai")));
    RunOptions options;
    options.limits.max_call_depth = 1000;
    ExecutionState s = run_script(program, {}, options);
    CHECK(failure_as<failure::RecursionLimitExceeded>(s).limit == 1000);
  }

  TEST_CASE("suspend at the choice then resume") {
    ExecutionState s = advance(ExecutionState::start(templeu()));
    REQUIRE(s.status() == Status::AwaitingChoice);
    const ChoicePoint point = *s.pending_choice();
    CHECK(point.id == 1);
    CHECK(point.object_name == "p#1");
    CHECK(point.class_name == "TempleU");
    CHECK(point.left_text == "employee = true");
    CHECK(point.right_text == "employee = false");

    ExecutionState stale_copy = s;
    CHECK_THROWS_AS(resume(stale_copy, ChoiceDecision{2, Pick::Left}), StaleDecisionError);
    CHECK(s.status() == Status::AwaitingChoice);

    ExecutionState done = resume(s, ChoiceDecision{1, Pick::Left});
    REQUIRE(done.status() == Status::Finished);
    CHECK(done.store().output() == std::vector<std::string>{"3000"});
    CHECK_THROWS_AS(resume(done, ChoiceDecision{1, Pick::Left}), IllegalStateError);
  }

  TEST_CASE("run-to-suspension then resume equals a scripted run over the corpus") {
    for (const std::string& file : corpus_files()) {
      if (file == "malformed.javai") continue;
      CAPTURE(file);
      auto program = parse_shared(read_text(corpus_path(file)));
      for (const auto& script : all_scripts(program)) {
        ExecutionState manual = advance(ExecutionState::start(program));
        std::size_t next = 0;
        while (manual.status() == Status::AwaitingChoice) {
          REQUIRE(next < script.size());
          manual = resume(std::move(manual), ChoiceDecision{manual.pending_choice()->id, script[next++]});
        }
        ExecutionState scripted = run_script(program, script);
        CHECK(manual.status() == scripted.status());
        CHECK(manual.store() == scripted.store());
        CHECK(manual.history() == scripted.history());
      }
    }
  }

  TEST_CASE("trace shows rule 8 once per new") {
    std::vector<std::string> lines;
    RunOptions options;
    options.trace = [&](const std::string& l) { lines.push_back(l); };
    ExecutionState s = run_script(templeu(), {Pick::Left}, options);
    REQUIRE(s.status() == Status::Finished);
    auto count = [&](const std::string& prefix) {
      return std::count_if(lines.begin(), lines.end(),
                           [&](const std::string& l) { return l.rfind(prefix, 0) == 0; });
    };
    CHECK(count("[rule 8]") == 1);
    CHECK(count("[prompt") == 1);
    CHECK(count("[rule 5]") == 1);
    CHECK(count("[rule 1]") == 1);
    CHECK(count("[rule 7]") == 2);
    CHECK(count("[rule 6]") == 1);
  }
}

TEST_SUITE("engine properties") {
  TEST_CASE("determinism on generated programs") {
    std::mt19937 rng(99);
    for (int i = 0; i < 100; ++i) {
      auto program = parse_shared(random_program(rng, {}));
      std::vector<Pick> script;
      for (int k = 0; k < 12; ++k) script.push_back(rng() % 2 ? Pick::Left : Pick::Right);
      ExecutionState a = run_script(program, script);
      ExecutionState b = run_script(program, script);
      CHECK(a.store() == b.store());
      CHECK(a.store().output() == b.store().output());
      CHECK(a.status() == b.status());
    }
  }

  TEST_CASE("sequencing is associative over the corpus") {
    for (const std::string& file : corpus_files()) {
      if (file == "malformed.javai") continue;
      CAPTURE(file);
      auto program = parse_shared(read_text(corpus_path(file)));
      std::vector<GoalPtr> atoms;
      flatten(program->main, atoms);
      auto reassociated = std::make_shared<SourceProgram>(*program);
      reassociated->main = left_nested(atoms);
      for (const auto& script : all_scripts(program)) {
        ExecutionState right = run_script(program, script);
        ExecutionState left = run_script(reassociated, script);
        CHECK(right.status() == left.status());
        CHECK(right.store() == left.store());
      }
    }
  }

  TEST_CASE("inlining equivalence on generated choice-free classes") {
    std::mt19937 rng(5150);
    int equal = 0;
    int total = 0;
    for (int i = 0; i < 50; ++i) {
      auto program = parse_shared(random_choice_free_class(rng));
      ExecutionState created = run_script(program, {});
      REQUIRE(created.status() == Status::Finished);
      const ObjectInstance& obj = *created.store().find("k#1");
      for (const ProcEntry& proc : obj.procs) {
        const Decl::ProcDecl* p = underlying_proc(*proc.decl);
        std::vector<Value> args;
        std::vector<ExprPtr> arg_exprs;
        std::map<std::string, Value> env;
        for (const std::string& param : p->params) {
          Value v = static_cast<std::int64_t>(rng() % 21) - 10;
          args.push_back(v);
          arg_exprs.push_back(literal_of(v));
          env[param] = v;
        }
        ScriptedStrategy none({});
        ExecutionState called = execute_goal(
            program, created.store(), Context::main(),
            make_goal(Goal::Call{BoundTarget{ObjRef{"k#1"}}, p->name, arg_exprs}), none);
        ExecutionState inlined = execute_goal(program, created.store(), Context::of("k#1"),
                                              inline_params(p->body, env), none);
        CAPTURE(pretty_print_d(*proc.decl));
        CHECK(called.status() == inlined.status());
        CHECK(called.store() == inlined.store());
        equal += called.status() == inlined.status() && called.store() == inlined.store();
        ++total;
      }
    }
    CHECK(total >= 50);
    CHECK(equal == total);
  }

  TEST_CASE("choice economy: prompts equal choice nodes on the chosen path") {
    std::mt19937 rng(8080);
    for (int i = 0; i < 60; ++i) {
      DeclPtr tree = random_decl_tree(rng, static_cast<int>(rng() % 7));
      auto program = std::make_shared<SourceProgram>();
      program->classes.push_back({"T", tree, {}});
      program->main = make_goal(Goal::New{"t", "T"});
      for (const auto& path : brute_force_paths(*tree)) {
        ScriptedStrategy chooser(path);
        ExecutionState s = drive_checked(ExecutionState::start(program), chooser);
        REQUIRE(s.status() == Status::Finished);
        CHECK(s.history().size() == path.size());
        CHECK(chooser.consulted() == path.size());
      }
    }
  }

  TEST_CASE("ids and fresh counter increase") {
    auto program = parse_shared(read_text(corpus_path("two_students.javai")));
    ExecutionState s = run_script(program, {Pick::Right, Pick::Left});
    REQUIRE(s.history().size() == 2);
    CHECK(s.history()[0].first.id < s.history()[1].first.id);
    CHECK(s.store().fresh_counter() == 2);
  }

  TEST_CASE("failure totality over 1000 generated programs") {
    std::mt19937 rng(31337);
    int failed = 0;
    for (int i = 0; i < 1000; ++i) {
      ProgramShape shape;
      shape.inject_errors = true;
      std::string source = random_program(rng, shape);
      auto program = parse_shared(source);
      std::vector<Pick> script;
      const std::size_t length = rng() % 10;
      for (std::size_t k = 0; k < length; ++k) script.push_back(rng() % 2 ? Pick::Left : Pick::Right);
      RunOptions options;
      options.limits.max_call_depth = 500;
      ExecutionState s = run_script(program, script, options);
      CAPTURE(source);
      REQUIRE(s.terminal());
      if (s.status() == Status::Failed) {
        ++failed;
        REQUIRE(s.failure() != nullptr);
        CHECK(!describe_failure(*s.failure()).empty());
        CHECK(s.pending_choice() == nullptr);
      } else {
        CHECK(s.failure() == nullptr);
      }
    }
    CHECK(failed > 100);
  }

  TEST_CASE("no created object retains a choice node") {
    const ResolutionTally& t = resolution_tally();
    CHECK(t.checks > 1000);
    CHECK(t.creations > 1000);
    CHECK(t.violations == 0);
  }
}
