#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sysmap::java {

enum class TokenKind : unsigned char {
  identifier,
  keyword,
  literal, // numeric, string, char and text-block literals
  op,      // operators and separators
  at,      // '@' introducing an annotation
  end,
};

struct Token {
  TokenKind kind{TokenKind::end};
  std::string text;
  std::size_t line{0};

  bool is(TokenKind k, std::string_view t) const {
    return kind == k && text == t;
  }
  bool is_op(std::string_view t) const { return is(TokenKind::op, t); }
  bool is_kw(std::string_view t) const { return is(TokenKind::keyword, t); }
  bool is_ident() const { return kind == TokenKind::identifier; }
};

class LexError : public std::runtime_error {
public:
  LexError(std::size_t line, const std::string &what)
      : std::runtime_error(what), line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

bool is_keyword(std::string_view word);
bool is_primitive_type(std::string_view word);

/// Tokenize Java source, dropping whitespace and comments. The result
/// always ends with a single `end` token.
///
/// `<` and `>` are never merged into shift operators so that nested type
/// arguments close one bracket per token.
std::vector<Token> tokenize(std::string_view text);

} // namespace sysmap::java
