#include "sysmap/java_lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace sysmap::java {

namespace {

constexpr std::array<std::string_view, 51> kKeywords = {
    "abstract",   "assert",       "boolean",   "break",      "byte",
    "case",       "catch",        "char",      "class",      "const",
    "continue",   "default",      "do",        "double",     "else",
    "enum",       "extends",      "final",     "finally",    "float",
    "for",        "goto",         "if",        "implements", "import",
    "instanceof", "int",          "interface", "long",       "native",
    "new",        "package",      "private",   "protected",  "public",
    "return",     "short",        "static",    "strictfp",   "super",
    "switch",     "synchronized", "this",      "throw",      "throws",
    "transient",  "try",          "void",      "volatile",   "while",
    "_",
};

constexpr std::array<std::string_view, 3> kWordLiterals = {"true", "false",
                                                           "null"};

constexpr std::array<std::string_view, 8> kPrimitives = {
    "boolean", "byte", "char", "short", "int", "long", "float", "double"};

// Longest first. Shift operators are deliberately absent.
constexpr std::array<std::string_view, 20> kMultiCharOps = {
    "...", "<<=", "->", "::", "++", "--", "&&", "||", "==", "!=",
    "<=",  "+=",  "-=", "*=", "/=", "&=", "|=", "^=", "%=", ">="};

bool ident_start(unsigned char c) {
  return std::isalpha(c) || c == '_' || c == '$' || c >= 0x80;
}

bool ident_part(unsigned char c) { return ident_start(c) || std::isdigit(c); }

} // namespace

bool is_keyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

bool is_primitive_type(std::string_view word) {
  return std::find(kPrimitives.begin(), kPrimitives.end(), word) !=
         kPrimitives.end();
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  out.reserve(text.size() / 4);
  std::size_t line = 1;
  std::size_t i = 0;
  const std::size_t n = text.size();

  auto at = [&](std::size_t k) -> unsigned char {
    return k < n ? static_cast<unsigned char>(text[k]) : 0;
  };

  while (i < n) {
    const unsigned char c = at(i);
    if (c == '\n') {
      ++line;
      ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r' || c == '\f') {
      ++i;
      continue;
    }
    if (c == '/' && at(i + 1) == '/') {
      while (i < n && text[i] != '\n')
        ++i;
      continue;
    }
    if (c == '/' && at(i + 1) == '*') {
      const std::size_t start_line = line;
      i += 2;
      while (i < n && !(text[i] == '*' && at(i + 1) == '/')) {
        if (text[i] == '\n')
          ++line;
        ++i;
      }
      if (i >= n)
        throw LexError(start_line, "unterminated block comment");
      i += 2;
      continue;
    }

    const std::size_t tok_line = line;
    if (ident_start(c)) {
      const std::size_t s = i;
      while (i < n && ident_part(at(i)))
        ++i;
      std::string word(text.substr(s, i - s));
      TokenKind kind = TokenKind::identifier;
      if (is_keyword(word))
        kind = TokenKind::keyword;
      else if (std::find(kWordLiterals.begin(), kWordLiterals.end(), word) !=
               kWordLiterals.end())
        kind = TokenKind::literal;
      out.push_back({kind, std::move(word), tok_line});
      continue;
    }
    if (std::isdigit(c) || (c == '.' && std::isdigit(at(i + 1)))) {
      const std::size_t s = i;
      const bool hex = c == '0' && (at(i + 1) == 'x' || at(i + 1) == 'X');
      while (i < n) {
        const unsigned char d = at(i);
        if (!(std::isalnum(d) || d == '_' || d == '.'))
          break;
        const bool exponent = hex ? (d == 'p' || d == 'P') : (d == 'e' || d == 'E');
        if (exponent && (at(i + 1) == '+' || at(i + 1) == '-'))
          ++i;
        ++i;
      }
      out.push_back({TokenKind::literal, std::string(text.substr(s, i - s)),
                     tok_line});
      continue;
    }
    if (c == '"' && text.substr(i, 3) == "\"\"\"") {
      const std::size_t s = i;
      i += 3;
      while (i < n && text.substr(i, 3) != "\"\"\"") {
        if (text[i] == '\\')
          ++i;
        else if (text[i] == '\n')
          ++line;
        ++i;
      }
      if (i >= n)
        throw LexError(tok_line, "unterminated text block");
      i += 3;
      out.push_back({TokenKind::literal, std::string(text.substr(s, i - s)),
                     tok_line});
      continue;
    }
    if (c == '"' || c == '\'') {
      const std::size_t s = i;
      ++i;
      while (i < n && at(i) != c) {
        if (text[i] == '\n')
          throw LexError(tok_line, "unterminated literal");
        if (text[i] == '\\')
          ++i;
        ++i;
      }
      if (i >= n)
        throw LexError(tok_line, "unterminated literal");
      ++i;
      out.push_back({TokenKind::literal, std::string(text.substr(s, i - s)),
                     tok_line});
      continue;
    }
    bool matched = false;
    for (std::string_view op : kMultiCharOps) {
      if (text.substr(i, op.size()) == op) {
        out.push_back({TokenKind::op, std::string(op), tok_line});
        i += op.size();
        matched = true;
        break;
      }
    }
    if (matched)
      continue;
    if (c == '@') {
      out.push_back({TokenKind::at, "@", tok_line});
      ++i;
      continue;
    }
    if (std::string_view("(){}[];,.=<>!~?:+-*/&|^%").find(static_cast<char>(c)) !=
        std::string_view::npos) {
      out.push_back({TokenKind::op, std::string(1, static_cast<char>(c)),
                     tok_line});
      ++i;
      continue;
    }
    throw LexError(tok_line, std::string("unexpected character '") +
                                 static_cast<char>(c) + "'");
  }
  out.push_back({TokenKind::end, "", line});
  return out;
}

} // namespace sysmap::java
