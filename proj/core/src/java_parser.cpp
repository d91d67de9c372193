#include "sysmap/java_parser.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sysmap/java_lexer.hpp"

namespace sysmap {

std::string_view to_string(TypeKind kind) {
  switch (kind) {
  case TypeKind::class_type:
    return "class";
  case TypeKind::interface_type:
    return "interface";
  case TypeKind::enum_type:
    return "enum";
  }
  return "class";
}

namespace {

using java::Token;
using java::TokenKind;

class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string &what)
      : std::runtime_error(what), line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

bool starts_upper(std::string_view s) {
  return !s.empty() && std::isupper(static_cast<unsigned char>(s.front()));
}

std::string join(const std::vector<std::string> &segs, std::size_t count) {
  std::string out;
  for (std::size_t k = 0; k < count && k < segs.size(); ++k) {
    if (k)
      out += '.';
    out += segs[k];
  }
  return out;
}

std::string first_segment(std::string_view dotted) {
  return std::string(dotted.substr(0, dotted.find('.')));
}

// A method body, initializer block or field initializer awaiting analysis.
// Analysis is deferred until the owning class's field list is complete.
struct PendingCode {
  std::size_t begin{0}; // first token of the code
  std::size_t end{0};   // one past the last token
  std::optional<std::size_t> method;
  std::vector<std::string> params;
};

struct TypeCtx {
  ClassModel model;
  std::set<std::string> type_params;
  std::vector<PendingCode> pending;
};

struct TypeInfo {
  std::string base; // dotted name or primitive keyword
  std::string text; // base plus array dimensions
  bool primitive{false};
};

class Parser {
public:
  explicit Parser(const SourceFile &file)
      : file_(file), toks_(java::tokenize(file.text)) {}

  std::vector<ClassModel> run() {
    parse_compilation_unit();
    return std::move(out_);
  }

private:
  const SourceFile &file_;
  std::vector<Token> toks_;
  std::size_t pos_{0};
  std::string package_;
  std::vector<std::string> imports_;
  std::vector<ClassModel> out_;

  // ---- token helpers -------------------------------------------------

  const Token &tok(std::size_t i) const {
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  const Token &peek(std::size_t k = 0) const { return tok(pos_ + k); }
  bool op_at(std::size_t i, std::string_view s) const { return tok(i).is_op(s); }
  bool kw_at(std::size_t i, std::string_view s) const { return tok(i).is_kw(s); }
  bool ident_at(std::size_t i) const { return tok(i).is_ident(); }
  bool ident_text_at(std::size_t i, std::string_view s) const {
    return tok(i).is(TokenKind::identifier, s);
  }
  bool at_end() const { return peek().kind == TokenKind::end; }

  [[noreturn]] void fail(const std::string &what) const {
    const Token &t = peek();
    throw ParseError(t.line, what + (t.kind == TokenKind::end
                                         ? std::string(" at end of file")
                                         : " near '" + t.text + "'"));
  }

  void expect_op(std::string_view s) {
    if (!peek().is_op(s))
      fail("expected '" + std::string(s) + "'");
    ++pos_;
  }

  bool accept_op(std::string_view s) {
    if (peek().is_op(s)) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool accept_kw(std::string_view s) {
    if (peek().is_kw(s)) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string expect_ident() {
    if (!peek().is_ident())
      fail("expected identifier");
    return toks_[pos_++].text;
  }

  // Index of the token closing the bracket opened at `open_idx`.
  std::size_t match_close(std::size_t open_idx) const {
    const std::string &open = tok(open_idx).text;
    const std::string close = open == "(" ? ")" : open == "[" ? "]" : "}";
    int depth = 0;
    for (std::size_t i = open_idx; i < toks_.size(); ++i) {
      const Token &t = toks_[i];
      if (t.kind != TokenKind::op)
        continue;
      if (t.text == open)
        ++depth;
      else if (t.text == close && --depth == 0)
        return i;
    }
    throw ParseError(tok(open_idx).line, "unbalanced '" + open + "'");
  }

  std::string parse_qualified_name() {
    std::string name = expect_ident();
    while (op_at(pos_, ".") && ident_at(pos_ + 1)) {
      name += '.';
      name += toks_[pos_ + 1].text;
      pos_ += 2;
    }
    return name;
  }

  // ---- annotations and modifiers ------------------------------------

  // Skips `@Name` or `@Name(...)` starting at `i`; returns the next index.
  std::size_t skip_annotation_at(std::size_t i) const {
    ++i; // '@'
    if (!ident_at(i))
      throw ParseError(tok(i).line, "malformed annotation");
    ++i;
    while (op_at(i, ".") && ident_at(i + 1))
      i += 2;
    if (op_at(i, "("))
      i = match_close(i) + 1;
    return i;
  }

  bool at_annotation() const {
    return peek().kind == TokenKind::at && !kw_at(pos_ + 1, "interface");
  }

  void skip_annotations() {
    while (at_annotation())
      pos_ = skip_annotation_at(pos_);
  }

  void skip_modifiers() {
    static constexpr std::string_view kModifiers[] = {
        "public",       "protected", "private",   "static",
        "abstract",     "final",     "native",    "synchronized",
        "transient",    "volatile",  "strictfp",  "default"};
    for (;;) {
      if (at_annotation()) {
        pos_ = skip_annotation_at(pos_);
        continue;
      }
      const Token &t = peek();
      if (t.kind == TokenKind::keyword &&
          std::find(std::begin(kModifiers), std::end(kModifiers), t.text) !=
              std::end(kModifiers)) {
        ++pos_;
        continue;
      }
      if (t.is(TokenKind::identifier, "sealed") &&
          (tok(pos_ + 1).kind == TokenKind::keyword ||
           tok(pos_ + 1).kind == TokenKind::at ||
           ident_text_at(pos_ + 1, "record"))) {
        ++pos_;
        continue;
      }
      if (t.is(TokenKind::identifier, "non") && op_at(pos_ + 1, "-") &&
          ident_text_at(pos_ + 2, "sealed")) {
        pos_ += 3;
        continue;
      }
      return;
    }
  }

  bool at_type_decl() const {
    if (kw_at(pos_, "class") || kw_at(pos_, "interface") || kw_at(pos_, "enum"))
      return true;
    if (peek().kind == TokenKind::at && kw_at(pos_ + 1, "interface"))
      return true;
    return ident_text_at(pos_, "record") && ident_at(pos_ + 1) &&
           (op_at(pos_ + 2, "(") || op_at(pos_ + 2, "<"));
  }

  // ---- types ---------------------------------------------------------

  // Parses a type starting at `i`. Type-argument base names are appended
  // to `args`. Returns the index after the type, or nullopt if the tokens
  // do not form a type.
  std::optional<std::size_t> type_at(std::size_t i, TypeInfo &info,
                                     std::vector<std::string> &args) const {
    while (tok(i).kind == TokenKind::at) {
      if (kw_at(i + 1, "interface"))
        return std::nullopt;
      i = skip_annotation_at(i);
    }
    const Token &t = tok(i);
    if (t.kind == TokenKind::keyword && java::is_primitive_type(t.text)) {
      info.base = t.text;
      info.primitive = true;
      ++i;
    } else if (t.is_ident()) {
      info.base = t.text;
      ++i;
      for (;;) {
        if (op_at(i, "<")) {
          auto after = type_args_at(i, args);
          if (!after)
            return std::nullopt;
          i = *after;
        }
        if (op_at(i, ".") && (ident_at(i + 1) || tok(i + 1).kind == TokenKind::at)) {
          std::size_t j = i + 1;
          while (tok(j).kind == TokenKind::at)
            j = skip_annotation_at(j);
          if (!ident_at(j))
            return std::nullopt;
          info.base += '.';
          info.base += tok(j).text;
          i = j + 1;
          continue;
        }
        break;
      }
    } else {
      return std::nullopt;
    }
    info.text = info.base;
    for (;;) {
      std::size_t j = i;
      while (tok(j).kind == TokenKind::at)
        j = skip_annotation_at(j);
      if (op_at(j, "[") && op_at(j + 1, "]")) {
        info.text += "[]";
        i = j + 2;
        continue;
      }
      break;
    }
    return i;
  }

  std::optional<std::size_t> type_args_at(std::size_t i,
                                          std::vector<std::string> &args) const {
    ++i; // '<'
    if (op_at(i, ">"))
      return i + 1; // diamond
    for (;;) {
      while (tok(i).kind == TokenKind::at)
        i = skip_annotation_at(i);
      if (op_at(i, "?")) {
        ++i;
        if (kw_at(i, "extends") || kw_at(i, "super")) {
          TypeInfo bound;
          auto after = type_at(i + 1, bound, args);
          if (!after)
            return std::nullopt;
          if (!bound.primitive)
            args.push_back(bound.base);
          i = *after;
        }
      } else {
        TypeInfo arg;
        auto after = type_at(i, arg, args);
        if (!after)
          return std::nullopt;
        if (!arg.primitive)
          args.push_back(arg.base);
        i = *after;
      }
      if (op_at(i, ",")) {
        ++i;
        continue;
      }
      if (op_at(i, ">"))
        return i + 1;
      return std::nullopt;
    }
  }

  TypeInfo parse_type(std::vector<std::string> &args) {
    TypeInfo info;
    auto after = type_at(pos_, info, args);
    if (!after)
      fail("expected type");
    pos_ = *after;
    return info;
  }

  // Reads a type and records it and its arguments as references.
  TypeInfo parse_referenced_type(std::set<std::string> &refs) {
    std::vector<std::string> args;
    TypeInfo info = parse_type(args);
    if (!info.primitive)
      refs.insert(info.base);
    refs.insert(args.begin(), args.end());
    return info;
  }

  // `<T extends A & B, U>`: names go to `names`, bounds to `refs`.
  void parse_type_parameters(std::set<std::string> &names,
                             std::set<std::string> &refs) {
    expect_op("<");
    for (;;) {
      skip_annotations();
      names.insert(expect_ident());
      if (accept_kw("extends")) {
        parse_referenced_type(refs);
        while (accept_op("&"))
          parse_referenced_type(refs);
      }
      if (accept_op(","))
        continue;
      expect_op(">");
      return;
    }
  }

  // ---- declarations --------------------------------------------------

  void parse_compilation_unit() {
    skip_annotations();
    if (accept_kw("package")) {
      package_ = parse_qualified_name();
      expect_op(";");
    } else {
      pos_ = 0; // leading annotations belong to the first type
    }
    while (kw_at(pos_, "import") || op_at(pos_, ";")) {
      if (accept_op(";"))
        continue;
      ++pos_;
      const bool is_static = accept_kw("static");
      std::string name = parse_qualified_name();
      if (accept_op(".")) {
        expect_op("*");
        name += ".*";
      }
      expect_op(";");
      if (!is_static)
        imports_.push_back(std::move(name));
    }
    while (!at_end()) {
      if (accept_op(";"))
        continue;
      const std::size_t start = pos_;
      skip_annotations();
      if (ident_text_at(pos_, "module") ||
          (ident_text_at(pos_, "open") && ident_text_at(pos_ + 1, "module")))
        return; // module-info declares no types
      skip_modifiers();
      if (!at_type_decl())
        fail("expected type declaration");
      parse_type_declaration(nullptr, nullptr, start);
    }
  }

  // Parses a class/interface/enum/record/annotation declaration whose
  // keyword is at pos_. With `fold_into` set the declaration is local or
  // nested inside a folded body and contributes to that class instead of
  // producing its own model.
  void parse_type_declaration(TypeCtx *outer, TypeCtx *fold_into,
                              std::size_t decl_start) {
    TypeKind kind = TypeKind::class_type;
    bool is_record = false;
    if (peek().kind == TokenKind::at) {
      pos_ += 2;
      kind = TypeKind::interface_type;
    } else if (accept_kw("interface")) {
      kind = TypeKind::interface_type;
    } else if (accept_kw("enum")) {
      kind = TypeKind::enum_type;
    } else if (accept_kw("class")) {
      kind = TypeKind::class_type;
    } else {
      ++pos_; // record
      is_record = true;
    }
    const std::string name = expect_ident();

    if (fold_into) {
      auto &refs = fold_into->model.referenced_type_names;
      if (op_at(pos_, "<"))
        parse_type_parameters(fold_into->type_params, refs);
      if (is_record)
        parse_record_components(*fold_into, false);
      while (kw_at(pos_, "extends") || kw_at(pos_, "implements") ||
             ident_text_at(pos_, "permits")) {
        ++pos_;
        do
          parse_referenced_type(refs);
        while (accept_op(","));
      }
      if (!op_at(pos_, "{"))
        fail("expected '{'");
      parse_class_body(*fold_into, true, kind == TypeKind::enum_type, name);
      return;
    }

    TypeCtx ctx;
    ClassModel &m = ctx.model;
    m.simple_name = name;
    m.package_name = package_;
    m.kind = kind;
    if (outer) {
      m.qualified_name = outer->model.qualified_name + "." + name;
      ctx.type_params = outer->type_params;
    } else {
      m.qualified_name = package_.empty() ? name : package_ + "." + name;
    }
    m.source_path = file_.path;
    m.imports = imports_;
    m.start_line = tok(decl_start).line;

    const std::size_t slot = out_.size();
    out_.emplace_back();

    if (op_at(pos_, "<"))
      parse_type_parameters(ctx.type_params, m.referenced_type_names);
    if (is_record)
      parse_record_components(ctx, true);
    if (accept_kw("extends")) {
      do {
        std::vector<std::string> args;
        TypeInfo t = parse_type(args);
        m.referenced_type_names.insert(args.begin(), args.end());
        if (kind == TypeKind::class_type && !m.superclass_name)
          m.superclass_name = t.base;
        else
          m.interface_names.push_back(t.base);
      } while (accept_op(","));
    }
    if (accept_kw("implements")) {
      do {
        std::vector<std::string> args;
        TypeInfo t = parse_type(args);
        m.referenced_type_names.insert(args.begin(), args.end());
        m.interface_names.push_back(t.base);
      } while (accept_op(","));
    }
    if (ident_text_at(pos_, "permits")) {
      ++pos_;
      std::set<std::string> ignored;
      do
        parse_referenced_type(ignored);
      while (accept_op(","));
    }
    if (!op_at(pos_, "{"))
      fail("expected '{'");
    parse_class_body(ctx, false, kind == TypeKind::enum_type, name);
    m.end_line = tok(pos_ - 1).line;

    // Folding anonymous and local bodies moves pos_; resume after the type.
    const std::size_t resume = pos_;
    for (std::size_t k = 0; k < ctx.pending.size(); ++k) {
      const PendingCode code = ctx.pending[k];
      analyze_code(ctx, code);
    }
    pos_ = resume;
    finalize(ctx);
    out_[slot] = std::move(ctx.model);
  }

  void parse_record_components(TypeCtx &ctx, bool as_fields) {
    expect_op("(");
    while (!accept_op(")")) {
      skip_modifiers();
      TypeInfo t = parse_referenced_type(ctx.model.referenced_type_names);
      accept_op("...");
      const std::string name = expect_ident();
      if (as_fields && !has_field(ctx.model, name))
        ctx.model.fields.push_back({name, t.text});
      if (!op_at(pos_, ")"))
        expect_op(",");
    }
  }

  static bool has_field(const ClassModel &m, std::string_view name) {
    return std::any_of(m.fields.begin(), m.fields.end(),
                       [&](const FieldModel &f) { return f.name == name; });
  }

  // pos_ at '{'. Leaves pos_ after the matching '}'.
  void parse_class_body(TypeCtx &ctx, bool folded, bool is_enum,
                        const std::string &type_name) {
    expect_op("{");
    if (is_enum)
      parse_enum_constants(ctx);
    auto &refs = ctx.model.referenced_type_names;
    while (!accept_op("}")) {
      if (at_end())
        fail("unterminated class body");
      if (accept_op(";"))
        continue;
      if (op_at(pos_, "{") || (kw_at(pos_, "static") && op_at(pos_ + 1, "{"))) {
        if (kw_at(pos_, "static"))
          ++pos_;
        const std::size_t close = match_close(pos_);
        ctx.pending.push_back({pos_ + 1, close, std::nullopt, {}});
        pos_ = close + 1;
        continue;
      }
      const std::size_t member_start = pos_;
      skip_modifiers();
      if (at_type_decl()) {
        if (folded)
          parse_type_declaration(nullptr, &ctx, member_start);
        else
          parse_type_declaration(&ctx, nullptr, member_start);
        continue;
      }
      if (op_at(pos_, "<"))
        parse_type_parameters(ctx.type_params, refs);
      if (ident_at(pos_) && op_at(pos_ + 1, "(")) {
        const std::string name = expect_ident();
        parse_method_rest(ctx, name, member_start);
        continue;
      }
      if (ident_at(pos_) && tok(pos_).text == type_name && op_at(pos_ + 1, "{")) {
        // Compact canonical constructor of a record.
        const std::string name = expect_ident();
        parse_method_rest(ctx, name, member_start);
        continue;
      }
      TypeInfo type;
      if (accept_kw("void")) {
        type.base = type.text = "void";
        type.primitive = true;
      } else {
        type = parse_referenced_type(refs);
      }
      const std::string name = expect_ident();
      if (op_at(pos_, "(")) {
        parse_method_rest(ctx, name, member_start);
        continue;
      }
      if (folded) {
        skip_field_declarators(ctx);
        continue;
      }
      parse_field_declarators(ctx, type, name);
    }
  }

  void parse_enum_constants(TypeCtx &ctx) {
    for (;;) {
      skip_annotations();
      if (accept_op(";") || op_at(pos_, "}"))
        return;
      expect_ident();
      if (op_at(pos_, "(")) {
        const std::size_t close = match_close(pos_);
        ctx.pending.push_back({pos_ + 1, close, std::nullopt, {}});
        pos_ = close + 1;
      }
      if (op_at(pos_, "{"))
        parse_class_body(ctx, true, false, "");
      if (!accept_op(",")) {
        if (accept_op(";") || op_at(pos_, "}"))
          return;
        fail("expected ',' or ';' after enum constant");
      }
    }
  }

  // pos_ at '(' (or '{' for a compact constructor).
  void parse_method_rest(TypeCtx &ctx, const std::string &name,
                         std::size_t member_start) {
    auto &refs = ctx.model.referenced_type_names;
    std::vector<std::string> params;
    if (accept_op("(")) {
      while (!accept_op(")")) {
        skip_modifiers();
        parse_referenced_type(refs);
        while (tok(pos_).kind == TokenKind::at)
          pos_ = skip_annotation_at(pos_);
        accept_op("...");
        if (accept_kw("this")) {
          // receiver parameter
        } else if (ident_at(pos_) && op_at(pos_ + 1, ".") && kw_at(pos_ + 2, "this")) {
          pos_ += 3;
        } else {
          params.push_back(expect_ident());
          while (op_at(pos_, "[") && op_at(pos_ + 1, "]"))
            pos_ += 2;
        }
        if (!op_at(pos_, ")"))
          expect_op(",");
      }
    }
    while (op_at(pos_, "[") && op_at(pos_ + 1, "]"))
      pos_ += 2;
    if (accept_kw("throws")) {
      do
        parse_referenced_type(refs);
      while (accept_op(","));
    }

    MethodModel method;
    method.name = name;
    const std::size_t index = ctx.model.methods.size();
    if (op_at(pos_, "{")) {
      const std::size_t close = match_close(pos_);
      ctx.pending.push_back({pos_ + 1, close, index, std::move(params)});
      pos_ = close + 1;
    } else if (accept_kw("default")) {
      // Annotation element default value.
      pos_ = statement_end(pos_) + 1;
    } else {
      expect_op(";");
    }
    method.loc_span = tok(pos_ - 1).line - tok(member_start).line + 1;
    ctx.model.methods.push_back(std::move(method));
  }

  // Index of the ';' ending the statement that starts at `i`.
  std::size_t statement_end(std::size_t i) const {
    int depth = 0;
    for (; i < toks_.size(); ++i) {
      const Token &t = toks_[i];
      if (t.kind == TokenKind::end)
        break;
      if (t.kind != TokenKind::op)
        continue;
      if (t.text == "(" || t.text == "[" || t.text == "{")
        ++depth;
      else if (t.text == ")" || t.text == "]" || t.text == "}")
        --depth;
      else if (t.text == ";" && depth == 0)
        return i;
      if (depth < 0)
        break;
    }
    throw ParseError(tok(i).line, "unterminated declaration");
  }

  // True if the ',' at `i` separates field declarators rather than
  // appearing inside an initializer expression.
  bool is_declarator_comma(std::size_t i) const {
    return op_at(i, ",") && ident_at(i + 1) &&
           (op_at(i + 2, "=") || op_at(i + 2, ",") || op_at(i + 2, ";") ||
            op_at(i + 2, "["));
  }

  // Scans an initializer from pos_ to the ',' or ';' ending it.
  std::size_t initializer_end(std::size_t i) const {
    int depth = 0;
    for (; i < toks_.size(); ++i) {
      const Token &t = toks_[i];
      if (t.kind == TokenKind::end)
        break;
      if (t.kind != TokenKind::op)
        continue;
      if (t.text == "(" || t.text == "[" || t.text == "{")
        ++depth;
      else if (t.text == ")" || t.text == "]" || t.text == "}")
        --depth;
      else if (depth == 0 && (t.text == ";" || is_declarator_comma(i)))
        return i;
      if (depth < 0)
        break;
    }
    throw ParseError(tok(i).line, "unterminated field initializer");
  }

  // pos_ just after the first declarator name.
  void parse_field_declarators(TypeCtx &ctx, const TypeInfo &type,
                               std::string name) {
    for (;;) {
      std::string type_text = type.text;
      while (op_at(pos_, "[") && op_at(pos_ + 1, "]")) {
        type_text += "[]";
        pos_ += 2;
      }
      if (!has_field(ctx.model, name))
        ctx.model.fields.push_back({name, type_text});
      if (accept_op("=")) {
        const std::size_t end = initializer_end(pos_);
        ctx.pending.push_back({pos_, end, std::nullopt, {}});
        pos_ = end;
      }
      if (accept_op(";"))
        return;
      expect_op(",");
      name = expect_ident();
    }
  }

  // Field declarations inside folded bodies only contribute references.
  void skip_field_declarators(TypeCtx &ctx) {
    for (;;) {
      while (op_at(pos_, "[") && op_at(pos_ + 1, "]"))
        pos_ += 2;
      if (accept_op("=")) {
        const std::size_t end = initializer_end(pos_);
        ctx.pending.push_back({pos_, end, std::nullopt, {}});
        pos_ = end;
      }
      if (accept_op(";"))
        return;
      expect_op(",");
      expect_ident();
    }
  }

  // ---- code analysis -------------------------------------------------

  static bool cast_follower(const Token &t) {
    if (t.kind == TokenKind::identifier || t.kind == TokenKind::literal)
      return true;
    if (t.kind == TokenKind::keyword)
      return t.text == "this" || t.text == "new" || t.text == "super" ||
             t.text == "switch";
    return t.kind == TokenKind::op &&
           (t.text == "(" || t.text == "!" || t.text == "~");
  }

  static bool cast_precluded_by(const Token &prev) {
    if (prev.kind == TokenKind::identifier || prev.kind == TokenKind::literal)
      return true;
    if (prev.kind == TokenKind::op)
      return prev.text == ")" || prev.text == "]" || prev.text == ">";
    if (prev.kind == TokenKind::keyword)
      return prev.text == "if" || prev.text == "while" || prev.text == "for" ||
             prev.text == "switch" || prev.text == "catch" ||
             prev.text == "synchronized" || prev.text == "this" ||
             prev.text == "super" || prev.text == "try";
    return false;
  }

  static bool declarator_follower(const Token &t) {
    return t.kind == TokenKind::op &&
           (t.text == "=" || t.text == ";" || t.text == "," || t.text == ":" ||
            t.text == ")" || t.text == "[");
  }

  // Type part of a static member access such as `Outer.Inner.CONST` or
  // `java.util.Collections.sort`: everything up to the last segment that
  // starts upper-case, excluding the final member segment.
  static std::optional<std::string>
  static_access_type(const std::vector<std::string> &segs, bool include_last) {
    const std::size_t limit = include_last ? segs.size() : segs.size() - 1;
    std::optional<std::size_t> last_upper;
    for (std::size_t k = 0; k < limit; ++k)
      if (starts_upper(segs[k]))
        last_upper = k;
    if (!last_upper)
      return std::nullopt;
    return join(segs, *last_upper + 1);
  }

  void analyze_code(TypeCtx &ctx, const PendingCode &code) {
    auto &refs = ctx.model.referenced_type_names;
    std::set<std::string> locals(code.params.begin(), code.params.end());
    std::set<std::string> uses;
    std::set<std::string> this_uses;
    std::set<std::size_t> anon_bodies;
    std::set<std::size_t> do_while_tails;
    std::size_t decisions = 0;
    bool in_case = false;
    bool in_decl = false;
    int depth = 0;
    int decl_depth = 0;

    std::size_t i = code.begin;
    while (i < code.end) {
      if (anon_bodies.contains(i)) {
        pos_ = i;
        parse_class_body(ctx, true, false, "");
        i = pos_;
        continue;
      }
      const Token &t = toks_[i];
      const Token &prev = tok(i == 0 ? 0 : i - 1);
      const bool after_dot = i > code.begin && (prev.is_op(".") || prev.is_op("::"));

      if (t.kind == TokenKind::at) {
        i = skip_annotation_at(i);
        continue;
      }

      if (t.kind == TokenKind::keyword) {
        const std::string &w = t.text;
        if (w == "if" || w == "for" || w == "catch") {
          ++decisions;
        } else if (w == "while") {
          if (!do_while_tails.contains(i))
            ++decisions;
        } else if (w == "do") {
          ++decisions;
          std::size_t body_end = op_at(i + 1, "{") ? match_close(i + 1)
                                                   : statement_end(i + 1);
          if (kw_at(body_end + 1, "while"))
            do_while_tails.insert(body_end + 1);
        } else if (w == "case") {
          ++decisions;
          in_case = true;
        } else if (w == "new" && !after_dot) {
          i = analyze_new(i, refs, anon_bodies);
          continue;
        } else if (w == "instanceof") {
          TypeInfo type;
          std::vector<std::string> args;
          std::size_t j = i + 1;
          if (kw_at(j, "final"))
            ++j;
          if (auto after = type_at(j, type, args)) {
            if (!type.primitive)
              refs.insert(type.base);
            refs.insert(args.begin(), args.end());
            j = *after;
            if (ident_at(j)) {
              locals.insert(tok(j).text);
              ++j;
            }
            i = j;
            continue;
          }
        } else if ((w == "class" || w == "interface" || w == "enum") &&
                   !after_dot) {
          pos_ = i;
          parse_type_declaration(nullptr, &ctx, i);
          i = pos_;
          continue;
        } else if (w == "this" && op_at(i + 1, ".") && ident_at(i + 2) &&
                   !op_at(i + 3, "(")) {
          this_uses.insert(tok(i + 2).text);
          i += 3;
          continue;
        } else if (java::is_primitive_type(w)) {
          std::size_t j = i + 1;
          while (op_at(j, "[") && op_at(j + 1, "]"))
            j += 2;
          if (ident_at(j) && declarator_follower(tok(j + 1))) {
            locals.insert(tok(j).text);
            in_decl = true;
            decl_depth = depth;
            i = j + 1;
            continue;
          }
        }
        ++i;
        continue;
      }

      if (t.kind == TokenKind::op) {
        const std::string &o = t.text;
        if (o == "&&" || o == "||") {
          ++decisions;
        } else if (o == "?") {
          if (!(prev.is_op("<") || prev.is_op(",")))
            ++decisions;
        } else if (o == ":") {
          in_case = false;
        } else if (o == "->") {
          if (in_case) {
            in_case = false;
          } else if (prev.is_ident()) {
            locals.insert(prev.text);
          } else if (prev.is_op(")")) {
            collect_lambda_params(i - 1, locals);
          }
        } else if (o == "(") {
          if (auto after = analyze_cast(i, prev, refs)) {
            // Only the type is consumed; the ')' still closes the depth.
            ++depth;
            i = *after;
            continue;
          }
          ++depth;
        } else if (o == "[" || o == "{") {
          ++depth;
        } else if (o == ")" || o == "]" || o == "}") {
          --depth;
        } else if (o == ";") {
          if (in_decl && depth == decl_depth)
            in_decl = false;
        } else if (o == ",") {
          if (in_decl && depth == decl_depth && is_declarator_comma(i)) {
            locals.insert(tok(i + 1).text);
            i += 2;
            continue;
          }
        }
        ++i;
        continue;
      }

      if (t.kind != TokenKind::identifier || after_dot) {
        ++i;
        continue;
      }

      if (t.text == "record" && ident_at(i + 1) &&
          (op_at(i + 2, "(") || op_at(i + 2, "<"))) {
        pos_ = i;
        parse_type_declaration(nullptr, &ctx, i);
        i = pos_;
        continue;
      }

      // Identifier chain a.b.C
      std::vector<std::string> segs{t.text};
      std::size_t j = i;
      while (op_at(j + 1, ".") && ident_at(j + 2)) {
        segs.push_back(tok(j + 2).text);
        j += 2;
      }
      const std::size_t next = j + 1;
      const std::string chain = join(segs, segs.size());

      // Declaration: Type [<args>] [[]...] name
      {
        std::size_t m = next;
        std::vector<std::string> args;
        bool generic = false;
        if (op_at(m, "<")) {
          if (auto after = type_args_at(m, args)) {
            m = *after;
            generic = true;
          }
        }
        while (op_at(m, "[") && op_at(m + 1, "]"))
          m += 2;
        const bool contextual = segs.size() == 1 &&
                                (segs[0] == "yield" || segs[0] == "record");
        if (!contextual && ident_at(m) && declarator_follower(tok(m + 1))) {
          if (chain != "var")
            refs.insert(chain);
          refs.insert(args.begin(), args.end());
          locals.insert(tok(m).text);
          in_decl = true;
          decl_depth = depth;
          i = m + 1;
          continue;
        }
        if (generic && op_at(m, "::")) {
          refs.insert(chain);
          refs.insert(args.begin(), args.end());
          i = m;
          continue;
        }
      }

      if (op_at(next, "(") && segs.size() == 1) {
        i = next; // unqualified method call
        continue;
      }
      if (op_at(next, ".") && kw_at(next + 1, "class")) {
        if (auto type = static_access_type(segs, true))
          refs.insert(*type);
        i = next + 2;
        continue;
      }
      if (op_at(next, "::") || (op_at(next, ".") && op_at(next + 1, "<"))) {
        if (auto type = static_access_type(segs, true))
          refs.insert(*type);
      } else if (op_at(next, "|") && starts_upper(segs.back()) &&
                 (prev.is_op("(") || prev.is_op("|"))) {
        refs.insert(chain); // multi-catch alternative
      } else if (segs.size() >= 2) {
        if (auto type = static_access_type(segs, false))
          refs.insert(*type);
      }
      uses.insert(segs.front());
      i = next;
    }

    if (!code.method)
      return;
    MethodModel &method = ctx.model.methods[*code.method];
    method.decision_points += decisions;
    for (const auto &f : ctx.model.fields) {
      if (this_uses.contains(f.name) ||
          (uses.contains(f.name) && !locals.contains(f.name)))
        method.accessed_field_names.insert(f.name);
    }
  }

  // `new` at `i`. Records the instantiated type, marks an anonymous body
  // for folding, and returns the index from which scanning resumes.
  std::size_t analyze_new(std::size_t i, std::set<std::string> &refs,
                          std::set<std::size_t> &anon_bodies) {
    std::size_t j = i + 1;
    std::vector<std::string> args;
    if (op_at(j, "<")) {
      if (auto after = type_args_at(j, args))
        j = *after;
    }
    refs.insert(args.begin(), args.end());
    args.clear();
    while (tok(j).kind == TokenKind::at)
      j = skip_annotation_at(j);
    if (tok(j).kind == TokenKind::keyword && java::is_primitive_type(tok(j).text))
      return j + 1;
    if (!ident_at(j))
      return j;
    std::string base = tok(j).text;
    ++j;
    for (;;) {
      if (op_at(j, "<")) {
        if (auto after = type_args_at(j, args))
          j = *after;
        else
          break;
      }
      if (op_at(j, ".") && ident_at(j + 1)) {
        base += '.';
        base += tok(j + 1).text;
        j += 2;
        continue;
      }
      break;
    }
    refs.insert(base);
    refs.insert(args.begin(), args.end());
    if (op_at(j, "(")) {
      const std::size_t close = match_close(j);
      if (op_at(close + 1, "{"))
        anon_bodies.insert(close + 1);
    }
    return j;
  }

  // `(Type) expr` at `i`; returns the index of the closing ')' when the
  // parenthesis is a cast.
  std::optional<std::size_t> analyze_cast(std::size_t i, const Token &prev,
                                          std::set<std::string> &refs) const {
    if (cast_precluded_by(prev) || !ident_at(i + 1))
      return std::nullopt;
    TypeInfo type;
    std::vector<std::string> args;
    auto after = type_at(i + 1, type, args);
    if (!after || !op_at(*after, ")") || !cast_follower(tok(*after + 1)))
      return std::nullopt;
    bool any_upper = false;
    std::size_t from = 0;
    while (from <= type.base.size()) {
      const std::size_t dot = type.base.find('.', from);
      if (starts_upper(std::string_view(type.base).substr(from)))
        any_upper = true;
      if (dot == std::string::npos)
        break;
      from = dot + 1;
    }
    if (!any_upper)
      return std::nullopt;
    refs.insert(type.base);
    refs.insert(args.begin(), args.end());
    return *after;
  }

  // `(a, b) ->` or `(A a, B b) ->`: `close` is the ')' before the arrow.
  void collect_lambda_params(std::size_t close,
                             std::set<std::string> &locals) const {
    int depth = 0;
    for (std::size_t k = close; k > 0; --k) {
      const Token &t = toks_[k];
      if (t.is_op(")"))
        ++depth;
      else if (t.is_op("(") && --depth == 0)
        break;
      if (depth == 1 && t.is_ident() &&
          (op_at(k + 1, ",") || op_at(k + 1, ")")))
        locals.insert(t.text);
    }
  }

  void finalize(TypeCtx &ctx) {
    ClassModel &m = ctx.model;
    auto &refs = m.referenced_type_names;
    for (auto it = refs.begin(); it != refs.end();) {
      const std::string head = first_segment(*it);
      const bool drop = *it == m.simple_name || *it == m.qualified_name ||
                        ctx.type_params.contains(head) || *it == "var" ||
                        *it == "void" || java::is_primitive_type(*it);
      it = drop ? refs.erase(it) : std::next(it);
    }
    m.loc_span = m.end_line - m.start_line + 1;
    m.comment_lines_in_span = 0;
    for (std::size_t line = m.start_line; line <= m.end_line; ++line) {
      if (line - 1 < file_.line_kinds.size() &&
          file_.line_kinds[line - 1] == LineKind::comment)
        ++m.comment_lines_in_span;
    }
  }
};

} // namespace

ParseResult parse_unit(const SourceFile &file) {
  ParseResult result;
  try {
    Parser parser(file);
    result.classes = parser.run();
  } catch (const java::LexError &e) {
    result.error = Diagnostic{Severity::warn, file.path.string(),
                              "line " + std::to_string(e.line()) + ": " +
                                  e.what() + ", unit skipped"};
  } catch (const ParseError &e) {
    result.error = Diagnostic{Severity::warn, file.path.string(),
                              "line " + std::to_string(e.line()) + ": " +
                                  e.what() + ", unit skipped"};
  }
  if (result.error)
    result.classes.clear();
  return result;
}

} // namespace sysmap
