#pragma once

// Test-only reference implementations. None of these call into the engine's
// substitution, search, or enumeration code.

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "javai/ast.hpp"
#include "javai/choice_point.hpp"
#include "javai/store.hpp"

namespace javai::testing {

// ---------------------------------------------------------------------------
// Random generators
// ---------------------------------------------------------------------------

struct ProgramShape {
  int max_classes = 3;
  int max_choices = 4;  // per class
  int max_procs = 3;    // per class
  int max_objects = 3;
  bool inject_errors = false;  // unknown procs/fields, bad arity, type errors
};

/// Source text of a terminating random program. Procedures only call
/// lower-numbered procedures, so every run is finite.
std::string random_program(std::mt19937& rng, const ProgramShape& shape);

/// Random choice-free class named "K" with int fields and procedures of
/// 0 to 2 parameters; `main` creates one object `k`.
std::string random_choice_free_class(std::mt19937& rng);

/// Random declaration tree of conjunctions, (+) nodes and field inits with
/// exactly `choices` (+) nodes; every leaf initializes a distinct field.
DeclPtr random_decl_tree(std::mt19937& rng, int choices);

/// Random integer/boolean expression over `params` and fields f0..f2.
ExprPtr random_expr(std::mt19937& rng, const std::vector<std::string>& params, int depth);

// ---------------------------------------------------------------------------
// Oracles
// ---------------------------------------------------------------------------

/// Every decision vector reachable in `d`, in left-first order, by explicit
/// path enumeration over the decision tree.
std::vector<std::vector<Pick>> brute_force_paths(const Decl& d);

/// Result of the environment-based evaluator: a value or a failure kind.
struct EnvResult {
  std::optional<Value> value;
  std::string failure_kind;
};

/// Evaluates `e` with parameters looked up in `env` first and then fields of
/// `fields`; shares no code with the engine evaluator.
EnvResult env_eval(const Expr& e, const std::map<std::string, Value>& env,
                   const std::vector<std::pair<std::string, Value>>& fields);

/// Replaces parameters by values throughout a goal, by direct tree rewrite.
GoalPtr inline_params(const GoalPtr& g, const std::map<std::string, Value>& env);

/// Number of (+) nodes in every object of `store` (declaration and procs).
std::size_t choice_nodes_in(const ProgramStore& store);

}  // namespace javai::testing
