#include <cstdint>

#include "javai/engine.hpp"
#include "overloaded.hpp"

namespace javai {

namespace {

[[noreturn]] void fail(FailureReason r) { throw RuntimeFailure{std::move(r)}; }

const ObjectInstance& lookup(const std::string& name, const ProgramStore& store,
                             const ObjectInstance* building) {
  if (building && building->name == name) return *building;
  const ObjectInstance* obj = store.find(name);
  if (!obj) fail(failure::UnknownObject{name});
  return *obj;
}

const ObjectInstance* self_instance(const Context& ctx, const ProgramStore& store,
                                    const ObjectInstance* building) {
  if (!ctx.self) return nullptr;
  return &lookup(*ctx.self, store, building);
}

std::int64_t wrap(std::uint64_t v) { return static_cast<std::int64_t>(v); }

Value arithmetic(BinaryOp op, const Value& lhs, const Value& rhs) {
  const auto* l = std::get_if<std::int64_t>(&lhs);
  const auto* r = std::get_if<std::int64_t>(&rhs);
  if (!l || !r) fail(failure::TypeMismatch{std::string(op_text(op)), {lhs, rhs}});
  auto ul = static_cast<std::uint64_t>(*l);
  auto ur = static_cast<std::uint64_t>(*r);
  switch (op) {
    case BinaryOp::Add: return wrap(ul + ur);
    case BinaryOp::Sub: return wrap(ul - ur);
    case BinaryOp::Mul: return wrap(ul * ur);
    case BinaryOp::Div:
      if (*r == 0) fail(failure::DivisionByZero{});
      if (*r == -1) return wrap(0 - ul);  // INT64_MIN / -1 wraps
      return *l / *r;
    case BinaryOp::Lt: return *l < *r;
    case BinaryOp::Le: return *l <= *r;
    case BinaryOp::Gt: return *l > *r;
    case BinaryOp::Ge: return *l >= *r;
    default: break;
  }
  fail(failure::TypeMismatch{std::string(op_text(op)), {lhs, rhs}});
}

// `operands` are reported on failure; `v` is the one being tested.
bool as_bool(BinaryOp op, const Value& v, std::vector<Value> operands) {
  if (const auto* b = std::get_if<bool>(&v)) return *b;
  fail(failure::TypeMismatch{std::string(op_text(op)), std::move(operands)});
}

}  // namespace

std::string resolve_target(const Target& t, const Context& ctx, const ProgramStore& store,
                           const ObjectInstance* building) {
  return std::visit(
      overloaded{
          [&](const SelfTarget&) -> std::string {
            if (!ctx.self) fail(failure::UnknownObject{"this"});
            return *ctx.self;
          },
          [&](const NamedTarget& n) -> std::string {
            if (auto it = ctx.aliases.find(n.name); it != ctx.aliases.end()) return it->second;
            if (const ObjectInstance* self = self_instance(ctx, store, building)) {
              if (const Value* v = self->field(n.name)) {
                if (const auto* ref = std::get_if<ObjRef>(v)) return ref->object;
                fail(failure::TypeMismatch{".", {*v}});
              }
            }
            fail(failure::UnknownObject{n.name});
          },
          [&](const BoundTarget& b) -> std::string {
            if (const auto* ref = std::get_if<ObjRef>(&b.value)) return ref->object;
            fail(failure::TypeMismatch{".", {b.value}});
          },
      },
      t);
}

Value eval_expr(const Expr& e, const Context& ctx, const ProgramStore& store,
                const ObjectInstance* building) {
  return std::visit(
      overloaded{
          [](const Expr::IntLit& x) -> Value { return x.value; },
          [](const Expr::BoolLit& x) -> Value { return x.value; },
          [](const Expr::StrLit& x) -> Value { return x.value; },
          [](const Expr::ObjLit& x) -> Value { return ObjRef{x.object}; },
          [&](const Expr::FieldRef& x) -> Value {
            if (auto it = ctx.aliases.find(x.name); it != ctx.aliases.end()) {
              return ObjRef{it->second};
            }
            const ObjectInstance* self = self_instance(ctx, store, building);
            if (!self) fail(failure::UnknownField{"main", x.name});
            if (const Value* v = self->field(x.name)) return *v;
            fail(failure::UnknownField{self->name, x.name});
          },
          [&](const Expr::QualifiedFieldRef& x) -> Value {
            const ObjectInstance& obj = lookup(resolve_target(x.object, ctx, store, building), store,
                                               building);
            if (const Value* v = obj.field(x.field)) return *v;
            fail(failure::UnknownField{obj.name, x.field});
          },
          [&](const Expr::Unary& x) -> Value {
            Value v = eval_expr(*x.operand, ctx, store, building);
            if (x.op == UnaryOp::Neg) {
              if (const auto* i = std::get_if<std::int64_t>(&v)) {
                return wrap(0 - static_cast<std::uint64_t>(*i));
              }
            } else if (const auto* b = std::get_if<bool>(&v)) {
              return !*b;
            }
            fail(failure::TypeMismatch{std::string(op_text(x.op)), {v}});
          },
          [&](const Expr::Binary& x) -> Value {
            Value lhs = eval_expr(*x.lhs, ctx, store, building);
            switch (x.op) {
              case BinaryOp::And:
                if (!as_bool(x.op, lhs, {lhs})) return false;
                {
                  Value rhs = eval_expr(*x.rhs, ctx, store, building);
                  return as_bool(x.op, rhs, {lhs, rhs});
                }
              case BinaryOp::Or:
                if (as_bool(x.op, lhs, {lhs})) return true;
                {
                  Value rhs = eval_expr(*x.rhs, ctx, store, building);
                  return as_bool(x.op, rhs, {lhs, rhs});
                }
              default: break;
            }
            Value rhs = eval_expr(*x.rhs, ctx, store, building);
            if (x.op == BinaryOp::Eq) return lhs == rhs;
            if (x.op == BinaryOp::Ne) return lhs != rhs;
            return arithmetic(x.op, lhs, rhs);
          },
      },
      e.node);
}

ProgramStore assign_field(ProgramStore store, const Context& ctx, const Target& target,
                          const std::string& field, const Expr& value) {
  std::string object = resolve_target(target, ctx, store);
  if (!store.find(object)) fail(failure::UnknownObject{object});
  Value v = eval_expr(value, ctx, store);
  Value* cell = store.find(object)->field(field);
  if (!cell) fail(failure::UnknownField{object, field});
  *cell = std::move(v);
  return store;
}

}  // namespace javai
