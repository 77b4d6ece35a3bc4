#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace javai {

struct Span {
  int line = 0;
  int column = 0;
};

// ---------------------------------------------------------------------------
// Values
// ---------------------------------------------------------------------------

struct ObjRef {
  std::string object;
  friend bool operator==(const ObjRef&, const ObjRef&) = default;
};

// Values are immutable; object state lives in the program store.
using Value = std::variant<std::int64_t, bool, std::string, ObjRef>;

/// Rendering used by `print`: integers in decimal, booleans as true/false,
/// strings raw, object references by internal object name.
std::string render_value(const Value& v);

/// Source-literal rendering (strings quoted and escaped).
std::string value_literal(const Value& v);

// ---------------------------------------------------------------------------
// Object positions (call targets, assignment targets, qualified field refs)
// ---------------------------------------------------------------------------

/// `this`, or an unqualified name inside a procedure body.
struct SelfTarget {
  friend bool operator==(const SelfTarget&, const SelfTarget&) = default;
};
/// A binder alias, a parameter, or a field holding an object reference.
struct NamedTarget {
  std::string name;
  friend bool operator==(const NamedTarget&, const NamedTarget&) = default;
};
/// A parameter after argument passing replaced it with a value.
struct BoundTarget {
  Value value;
  friend bool operator==(const BoundTarget&, const BoundTarget&) = default;
};
using Target = std::variant<SelfTarget, NamedTarget, BoundTarget>;

// ---------------------------------------------------------------------------
// Expressions
// ---------------------------------------------------------------------------

enum class BinaryOp { Add, Sub, Mul, Div, Eq, Ne, Lt, Le, Gt, Ge, And, Or };
enum class UnaryOp { Neg, Not };

std::string_view op_text(BinaryOp op);
std::string_view op_text(UnaryOp op);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  struct IntLit {
    std::int64_t value;
  };
  struct BoolLit {
    bool value;
  };
  struct StrLit {
    std::string value;
  };
  struct FieldRef {
    std::string name;
  };
  struct QualifiedFieldRef {
    Target object;
    std::string field;
  };
  struct Binary {
    BinaryOp op;
    ExprPtr lhs;
    ExprPtr rhs;
  };
  struct Unary {
    UnaryOp op;
    ExprPtr operand;
  };
  // Only produced by substitution of an object reference; has no concrete
  // syntax.
  struct ObjLit {
    std::string object;
  };

  using Node =
      std::variant<IntLit, BoolLit, StrLit, FieldRef, QualifiedFieldRef, Binary, Unary, ObjLit>;

  Node node;
  Span span;
};

// ---------------------------------------------------------------------------
// Goals (G-formulas)
// ---------------------------------------------------------------------------

struct Goal;
using GoalPtr = std::shared_ptr<const Goal>;

struct Goal {
  struct Call {
    Target target;
    std::string proc;
    std::vector<ExprPtr> args;
  };
  struct Assign {
    Target target;
    std::string field;
    ExprPtr value;
  };
  struct Seq {
    GoalPtr first;
    GoalPtr second;
  };
  struct New {
    std::string binder;
    std::string class_name;
  };
  struct Print {
    ExprPtr arg;
  };
  struct If {
    ExprPtr cond;
    GoalPtr then_branch;
    GoalPtr else_branch;
  };
  struct Skip {};

  using Node = std::variant<Call, Assign, Seq, New, Print, If, Skip>;

  Node node;
  Span span;
};

// ---------------------------------------------------------------------------
// Declarations (D-formulas)
// ---------------------------------------------------------------------------

struct Decl;
using DeclPtr = std::shared_ptr<const Decl>;

struct Decl {
  struct ProcDecl {
    std::string name;
    std::vector<std::string> params;
    GoalPtr body;
  };
  struct FieldInit {
    std::string name;
    ExprPtr init;
  };
  struct Forall {
    std::string var;
    DeclPtr body;
  };
  struct Conj {
    DeclPtr left;
    DeclPtr right;
  };
  struct ChoiceDisj {
    DeclPtr left;
    DeclPtr right;
  };
  // Unit of conjunction; the declaration of an empty class body.
  struct Empty {};

  using Node = std::variant<ProcDecl, FieldInit, Forall, Conj, ChoiceDisj, Empty>;

  Node node;
  Span span;
};

struct ClassDef {
  std::string name;
  DeclPtr decl;
  Span span;
};

struct SourceProgram {
  std::vector<ClassDef> classes;  // declaration order, unique names
  GoalPtr main;

  const ClassDef* find_class(std::string_view name) const;
};

// ---------------------------------------------------------------------------
// Construction helpers
// ---------------------------------------------------------------------------

ExprPtr make_expr(Expr::Node node, Span span = {});
GoalPtr make_goal(Goal::Node node, Span span = {});
DeclPtr make_decl(Decl::Node node, Span span = {});

ExprPtr int_lit(std::int64_t v);
ExprPtr bool_lit(bool v);
ExprPtr str_lit(std::string v);
ExprPtr field_ref(std::string name);
ExprPtr literal_of(const Value& v);

GoalPtr skip_goal();
GoalPtr seq_goal(GoalPtr first, GoalPtr second);
GoalPtr print_goal(ExprPtr arg);

DeclPtr field_init(std::string name, ExprPtr init);
DeclPtr conj(DeclPtr left, DeclPtr right);
DeclPtr choice(DeclPtr left, DeclPtr right);
DeclPtr empty_decl();

/// Wraps `ProcDecl(name, params, body)` in one Forall per parameter,
/// leftmost parameter outermost. Throws ParseError (DuplicateParam) when two
/// parameters share a name.
DeclPtr desugar_procedure(std::string name, std::vector<std::string> params, GoalPtr body,
                          Span span = {});

// ---------------------------------------------------------------------------
// Structural queries. Equality ignores source spans.
// ---------------------------------------------------------------------------

bool structurally_equal(const Expr& a, const Expr& b);
bool structurally_equal(const Goal& a, const Goal& b);
bool structurally_equal(const Decl& a, const Decl& b);
bool structurally_equal(const SourceProgram& a, const SourceProgram& b);

std::size_t count_choices(const Decl& d);
inline bool contains_choice(const Decl& d) { return count_choices(d) > 0; }

/// Strips Forall wrappers, returning the underlying procedure, or nullptr if
/// `d` is not a (possibly quantified) procedure declaration.
const Decl::ProcDecl* underlying_proc(const Decl& d);

}  // namespace javai
