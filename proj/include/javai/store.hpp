#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "javai/ast.hpp"

namespace javai {

/// One entry of an instance's procedure table.
struct ProcEntry {
  std::string name;
  std::size_t arity = 0;
  DeclPtr decl;  // Forall-wrapped ProcDecl

  friend bool operator==(const ProcEntry& a, const ProcEntry& b);
};

/// A created object: the resolved (choice-free) declaration it was built
/// from, its field cells in declaration order, and its procedure table.
struct ObjectInstance {
  std::string name;
  std::string class_name;
  DeclPtr declaration;
  std::vector<std::pair<std::string, Value>> fields;
  std::vector<ProcEntry> procs;

  const Value* field(std::string_view f) const;
  Value* field(std::string_view f);

  friend bool operator==(const ObjectInstance& a, const ObjectInstance& b);
};

/// The running program: every created object plus the print log.
class ProgramStore {
 public:
  const ObjectInstance* find(std::string_view name) const;
  ObjectInstance* find(std::string_view name);

  /// Appends a new object; the name must be fresh.
  void insert(ObjectInstance obj);

  /// Next internal object name for `binder` ("binder#N").
  std::string fresh_name(std::string_view binder);

  void append_output(std::string line) { output_.push_back(std::move(line)); }

  const std::vector<ObjectInstance>& objects() const { return objects_; }
  const std::vector<std::string>& output() const { return output_; }
  std::uint64_t fresh_counter() const { return fresh_counter_; }

  friend bool operator==(const ProgramStore& a, const ProgramStore& b);

 private:
  std::vector<ObjectInstance> objects_;  // creation order
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::string> output_;
  std::uint64_t fresh_counter_ = 0;
};

// ---------------------------------------------------------------------------
// Failures
// ---------------------------------------------------------------------------

namespace failure {
struct NoMatchingProcedure {
  std::string object;
  std::string name;
  std::size_t arity;
};
struct UnknownObject {
  std::string name;
};
struct UnknownField {
  std::string object;
  std::string field;
};
struct UnknownClass {
  std::string name;
};
struct DuplicateField {
  std::string object;
  std::string field;
};
struct DivisionByZero {};
struct TypeMismatch {
  std::string op;
  std::vector<Value> values;
};
struct RecursionLimitExceeded {
  std::size_t limit;
};
struct ChoiceScriptExhausted {
  std::uint64_t prompt;
};
struct ChannelClosed {};
}  // namespace failure

using FailureReason =
    std::variant<failure::NoMatchingProcedure, failure::UnknownObject, failure::UnknownField,
                 failure::UnknownClass, failure::DuplicateField, failure::DivisionByZero,
                 failure::TypeMismatch, failure::RecursionLimitExceeded,
                 failure::ChoiceScriptExhausted, failure::ChannelClosed>;

/// Variant name, e.g. "NoMatchingProcedure".
std::string_view failure_kind(const FailureReason& r);
/// One-line diagnostic without the kind prefix.
std::string failure_message(const FailureReason& r);
/// "<kind>: <message>"
std::string describe_failure(const FailureReason& r);

/// Thrown inside the engine for runtime failures; the machine converts it
/// into a Failed state.
struct RuntimeFailure {
  FailureReason reason;
};

}  // namespace javai
