#include "javai/store.hpp"

#include <algorithm>
#include <stdexcept>

#include "overloaded.hpp"

namespace javai {

bool operator==(const ProcEntry& a, const ProcEntry& b) {
  return a.name == b.name && a.arity == b.arity &&
         ((a.decl && b.decl) ? structurally_equal(*a.decl, *b.decl) : a.decl == b.decl);
}

const Value* ObjectInstance::field(std::string_view f) const {
  auto it = std::find_if(fields.begin(), fields.end(), [&](const auto& p) { return p.first == f; });
  return it == fields.end() ? nullptr : &it->second;
}

Value* ObjectInstance::field(std::string_view f) {
  auto it = std::find_if(fields.begin(), fields.end(), [&](const auto& p) { return p.first == f; });
  return it == fields.end() ? nullptr : &it->second;
}

bool operator==(const ObjectInstance& a, const ObjectInstance& b) {
  if (a.name != b.name || a.class_name != b.class_name) return false;
  if (a.fields != b.fields || a.procs != b.procs) return false;
  if (!a.declaration || !b.declaration) return a.declaration == b.declaration;
  return structurally_equal(*a.declaration, *b.declaration);
}

const ObjectInstance* ProgramStore::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  return it == index_.end() ? nullptr : &objects_[it->second];
}

ObjectInstance* ProgramStore::find(std::string_view name) {
  auto it = index_.find(std::string(name));
  return it == index_.end() ? nullptr : &objects_[it->second];
}

void ProgramStore::insert(ObjectInstance obj) {
  if (index_.count(obj.name)) throw std::logic_error("object name reused: " + obj.name);
  index_.emplace(obj.name, objects_.size());
  objects_.push_back(std::move(obj));
}

std::string ProgramStore::fresh_name(std::string_view binder) {
  return std::string(binder) + "#" + std::to_string(++fresh_counter_);
}

bool operator==(const ProgramStore& a, const ProgramStore& b) {
  return a.objects_ == b.objects_ && a.output_ == b.output_ &&
         a.fresh_counter_ == b.fresh_counter_;
}

// ---------------------------------------------------------------------------

std::string_view failure_kind(const FailureReason& r) {
  return std::visit(overloaded{
                        [](const failure::NoMatchingProcedure&) { return "NoMatchingProcedure"; },
                        [](const failure::UnknownObject&) { return "UnknownObject"; },
                        [](const failure::UnknownField&) { return "UnknownField"; },
                        [](const failure::UnknownClass&) { return "UnknownClass"; },
                        [](const failure::DuplicateField&) { return "DuplicateField"; },
                        [](const failure::DivisionByZero&) { return "DivisionByZero"; },
                        [](const failure::TypeMismatch&) { return "TypeMismatch"; },
                        [](const failure::RecursionLimitExceeded&) { return "RecursionLimitExceeded"; },
                        [](const failure::ChoiceScriptExhausted&) { return "ChoiceScriptExhausted"; },
                        [](const failure::ChannelClosed&) { return "ChannelClosed"; },
                    },
                    r);
}

std::string failure_message(const FailureReason& r) {
  return std::visit(
      overloaded{
          [](const failure::NoMatchingProcedure& f) {
            return "object " + f.object + " has no procedure " + f.name + "/" +
                   std::to_string(f.arity);
          },
          [](const failure::UnknownObject& f) { return "no object named '" + f.name + "'"; },
          [](const failure::UnknownField& f) {
            return "object " + f.object + " has no field '" + f.field + "'";
          },
          [](const failure::UnknownClass& f) { return "unknown class '" + f.name + "'"; },
          [](const failure::DuplicateField& f) {
            return "field '" + f.field + "' initialized twice in " + f.object;
          },
          [](const failure::DivisionByZero&) { return std::string("division by zero"); },
          [](const failure::TypeMismatch& f) {
            std::string out = "operator '" + f.op + "' cannot be applied to";
            for (std::size_t i = 0; i < f.values.size(); ++i) {
              out += (i ? ", " : " ") + value_literal(f.values[i]);
            }
            return out;
          },
          [](const failure::RecursionLimitExceeded& f) {
            return "call depth exceeded " + std::to_string(f.limit);
          },
          [](const failure::ChoiceScriptExhausted& f) {
            return "choice script exhausted at prompt " + std::to_string(f.prompt);
          },
          [](const failure::ChannelClosed&) {
            return std::string("input closed while awaiting a choice");
          },
      },
      r);
}

std::string describe_failure(const FailureReason& r) {
  return std::string(failure_kind(r)) + ": " + failure_message(r);
}

}  // namespace javai
