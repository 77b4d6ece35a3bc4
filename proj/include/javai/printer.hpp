#pragma once

#include <string>

#include "javai/ast.hpp"

namespace javai {

// Single-line renderings in concrete syntax. Parsing the output of
// print_program yields a structurally equal program.
std::string pretty_print_expr(const Expr& e);
std::string pretty_print_target(const Target& t);
std::string pretty_print_g(const Goal& g);
std::string pretty_print_d(const Decl& d);

/// Whole program, one class per line followed by main.
std::string print_program(const SourceProgram& p);

/// Line-oriented, indented tree dump used by `javai parse`.
std::string dump_ast(const SourceProgram& p);

}  // namespace javai
