#include "lexer.hpp"

#include <cctype>
#include <limits>
#include <unordered_map>

#include "javai/parser.hpp"

namespace javai::detail {

namespace {

const std::unordered_map<std::string_view, Tok>& keywords() {
  static const std::unordered_map<std::string_view, Tok> table = {
      {"class", Tok::KwClass}, {"void", Tok::KwVoid},   {"new", Tok::KwNew},
      {"print", Tok::KwPrint}, {"if", Tok::KwIf},       {"then", Tok::KwThen},
      {"else", Tok::KwElse},   {"skip", Tok::KwSkip},   {"true", Tok::KwTrue},
      {"false", Tok::KwFalse}, {"this", Tok::KwThis},
  };
  return table;
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space_and_comments();
      Span at{line_, col_};
      if (pos_ >= src_.size()) {
        out.push_back(Token{Tok::End, "", 0, at});
        return out;
      }
      out.push_back(next(at));
    }
  }

 private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void advance(std::size_t n = 1) {
    for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  void skip_space_and_comments() {
    for (;;) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (pos_ < src_.size() && peek() != '\n') advance();
      } else {
        return;
      }
    }
  }

  [[noreturn]] void fail(Span at, const std::string& what) {
    throw ParseError(ParseError::Kind::Syntax, at, what);
  }

  Token simple(Tok kind, std::size_t len, Span at) {
    Token t{kind, std::string(src_.substr(pos_, len)), 0, at};
    advance(len);
    return t;
  }

  Token next(Span at) {
    char c = peek();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') advance();
      std::string word(src_.substr(start, pos_ - start));
      auto it = keywords().find(word);
      return Token{it == keywords().end() ? Tok::Ident : it->second, std::move(word), 0, at};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      std::int64_t value = 0;
      constexpr auto max = std::numeric_limits<std::int64_t>::max();
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        int digit = peek() - '0';
        if (value > (max - digit) / 10) fail(at, "integer literal out of range");
        value = value * 10 + digit;
        advance();
      }
      if (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_') {
        fail(Span{line_, col_}, "malformed number");
      }
      return Token{Tok::Int, std::string(src_.substr(start, pos_ - start)), value, at};
    }
    if (c == '"') return string_literal(at);

    switch (c) {
      case '{': return simple(Tok::LBrace, 1, at);
      case '}': return simple(Tok::RBrace, 1, at);
      case '(':
        if (peek(1) == '+' && peek(2) == ')') return simple(Tok::ChoiceOp, 3, at);
        return simple(Tok::LParen, 1, at);
      case ')': return simple(Tok::RParen, 1, at);
      case ';': return simple(Tok::Semi, 1, at);
      case '.': return simple(Tok::Dot, 1, at);
      case ',': return simple(Tok::Comma, 1, at);
      case ':':
        if (peek(1) == '=') return simple(Tok::Define, 2, at);
        break;
      case '=':
        if (peek(1) == '=') return simple(Tok::EqEq, 2, at);
        return simple(Tok::Assign, 1, at);
      case '&':
        if (peek(1) == '&') return simple(Tok::AndAnd, 2, at);
        return simple(Tok::Amp, 1, at);
      case '|':
        if (peek(1) == '|') return simple(Tok::OrOr, 2, at);
        break;
      case '!':
        if (peek(1) == '=') return simple(Tok::NotEq, 2, at);
        return simple(Tok::Bang, 1, at);
      case '<':
        if (peek(1) == '=') return simple(Tok::LessEq, 2, at);
        return simple(Tok::Less, 1, at);
      case '>':
        if (peek(1) == '=') return simple(Tok::GreaterEq, 2, at);
        return simple(Tok::Greater, 1, at);
      case '+': return simple(Tok::Plus, 1, at);
      case '-': return simple(Tok::Minus, 1, at);
      case '*': return simple(Tok::Star, 1, at);
      case '/': return simple(Tok::Slash, 1, at);
      default: break;
    }
    std::string shown = std::isprint(static_cast<unsigned char>(c))
                            ? std::string("'") + c + "'"
                            : "byte " + std::to_string(static_cast<unsigned char>(c));
    fail(at, "unexpected character " + shown);
  }

  Token string_literal(Span at) {
    advance();  // opening quote
    std::string value;
    for (;;) {
      if (pos_ >= src_.size() || peek() == '\n') fail(at, "unterminated string literal");
      char c = peek();
      if (c == '"') {
        advance();
        break;
      }
      if (c == '\\') {
        char e = peek(1);
        switch (e) {
          case 'n': value += '\n'; break;
          case 't': value += '\t'; break;
          case '"': value += '"'; break;
          case '\\': value += '\\'; break;
          default: fail(Span{line_, col_}, "unknown escape sequence");
        }
        advance(2);
        continue;
      }
      value += c;
      advance();
    }
    return Token{Tok::String, std::move(value), 0, at};
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

std::string describe(Tok kind) {
  switch (kind) {
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer";
    case Tok::String: return "string";
    case Tok::KwClass: return "'class'";
    case Tok::KwVoid: return "'void'";
    case Tok::KwNew: return "'new'";
    case Tok::KwPrint: return "'print'";
    case Tok::KwIf: return "'if'";
    case Tok::KwThen: return "'then'";
    case Tok::KwElse: return "'else'";
    case Tok::KwSkip: return "'skip'";
    case Tok::KwTrue: return "'true'";
    case Tok::KwFalse: return "'false'";
    case Tok::KwThis: return "'this'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Semi: return "';'";
    case Tok::Dot: return "'.'";
    case Tok::Comma: return "','";
    case Tok::Assign: return "'='";
    case Tok::Define: return "':='";
    case Tok::Amp: return "'&'";
    case Tok::ChoiceOp: return "'(+)'";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::EqEq: return "'=='";
    case Tok::NotEq: return "'!='";
    case Tok::Less: return "'<'";
    case Tok::LessEq: return "'<='";
    case Tok::Greater: return "'>'";
    case Tok::GreaterEq: return "'>='";
    case Tok::AndAnd: return "'&&'";
    case Tok::OrOr: return "'||'";
    case Tok::Bang: return "'!'";
    case Tok::End: return "end of input";
  }
  return "?";
}

std::string describe(const Token& tok) {
  switch (tok.kind) {
    case Tok::Ident: return "identifier '" + tok.text + "'";
    case Tok::Int: return "integer " + tok.text;
    case Tok::String: return "string literal";
    default: return describe(tok.kind);
  }
}

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

}  // namespace javai::detail
