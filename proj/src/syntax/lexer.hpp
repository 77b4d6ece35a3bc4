#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "javai/ast.hpp"

namespace javai::detail {

enum class Tok {
  Ident,
  Int,
  String,
  // keywords
  KwClass,
  KwVoid,
  KwNew,
  KwPrint,
  KwIf,
  KwThen,
  KwElse,
  KwSkip,
  KwTrue,
  KwFalse,
  KwThis,
  // punctuation
  LBrace,
  RBrace,
  LParen,
  RParen,
  Semi,
  Dot,
  Comma,
  Assign,     // =
  Define,     // :=
  Amp,        // &
  ChoiceOp,   // (+)
  Plus,
  Minus,
  Star,
  Slash,
  EqEq,
  NotEq,
  Less,
  LessEq,
  Greater,
  GreaterEq,
  AndAnd,
  OrOr,
  Bang,
  End,
};

struct Token {
  Tok kind;
  std::string text;  // identifier name, decoded string, or lexeme
  std::int64_t int_value = 0;
  Span span;
};

std::string describe(Tok kind);
std::string describe(const Token& tok);

/// Splits source into tokens, ending with a single Tok::End. Throws
/// ParseError on characters outside the lexical syntax.
std::vector<Token> tokenize(std::string_view source);

}  // namespace javai::detail
