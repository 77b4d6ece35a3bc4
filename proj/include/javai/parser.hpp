#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "javai/ast.hpp"

namespace javai {

/// Static error found before execution. Every kind carries the offending
/// source position.
class ParseError : public std::runtime_error {
 public:
  enum class Kind {
    Syntax,          // malformed input; `expected` lists acceptable tokens
    DuplicateClass,  // two classes with the same name
    MissingMain,     // no `void main() { ... }`
    DuplicateParam,  // p(a, a) := ...
    DuplicateBinder, // `new` binder reuses a parameter name
    UnknownClass,    // new C with C undeclared
    Scope,           // unqualified call/assignment or `this` in main
  };

  ParseError(Kind kind, Span span, std::string detail, std::vector<std::string> expected = {},
             std::string found = {});

  Kind kind() const { return kind_; }
  Span span() const { return span_; }
  const std::string& detail() const { return detail_; }
  const std::vector<std::string>& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  Kind kind_;
  Span span_;
  std::string detail_;
  std::vector<std::string> expected_;
  std::string found_;
};

std::string_view kind_name(ParseError::Kind kind);

/// Parses a complete program and runs the static checks (unique classes,
/// known classes in `new`, qualification rules in main).
SourceProgram parse_program(std::string_view source);

}  // namespace javai
